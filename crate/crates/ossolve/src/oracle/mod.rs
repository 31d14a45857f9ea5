//! Chebyshev collocation of the short-wave Orr–Sommerfeld equation on [0, Y],
//!
//!   φ'''' − [2r²k² + iRk(Ū − ω/k)]φ'' + [r⁴k⁴ + ir²Rk³(Ū − ω/k)]φ = 0,
//!
//! written as the pair Ψ = φ'' + Pφ, Ψ'' + QΨ = 0 with P = −r²k²,
//! Q = −r²k² − iRk(Ū − ω/k), and clamped ends φ = φ' = 0 at y = 0 and y = Y.
//! The unknown vector is (φ, Ψ) at the nodes, so the matrices are 2N × 2N.
//! The solver refines eigenvalues seeded by the asymptotic formulas; it does
//! not compute whole spectra.

pub mod cheb;
pub mod lu;

use crate::error::{domain, Error, Result};
use crate::meanflow::{Domain, FlowConfig, MeanProfile};
use crate::shortwave::Eigenpair;
use crate::{c, I};
use lu::Lu;
use num_complex::Complex64;
use std::ops::{Index, IndexMut};

pub const MIN_POINTS: usize = 32;
/// Chebyshev tail energy above this marks an under-resolved eigenvector.
pub const SPURIOUS_TAIL: f64 = 0.1;
/// Default truncation in units of the turning point.
pub const Y_FACTOR: f64 = 6.0;

/// Dense row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            data: vec![c(0.0, 0.0); n * n],
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        let (lo, hi) = (a.min(b), a.max(b));
        let (top, bottom) = self.data.split_at_mut(hi * n);
        top[lo * n..lo * n + n].swap_with_slice(&mut bottom[..n]);
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    fn set_row(&mut self, i: usize, v: impl Fn(usize) -> Complex64) {
        for j in 0..self.n {
            self[(i, j)] = v(j);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollocationProblem {
    pub profile: MeanProfile,
    pub cfg: FlowConfig,
    /// Number of collocation points.
    pub n: usize,
    pub y_max: f64,
    /// Map y = Y(1+x)/(2(1 + s(1−x))); s = 0 is the linear map.
    pub map_s: f64,
    /// Keep the iRkŪ_yy φ term that the short-wave reduction drops.
    pub curvature: bool,
}

/// Turning point of the seed: where Ū reaches Re λ (linear) or the extent of
/// the oscillatory region (quadratic).
pub fn turning_point(profile: &MeanProfile, pair: &Eigenpair) -> Result<f64> {
    match *profile {
        MeanProfile::Linear { b, c } => Ok(((pair.lambda - c) / b).norm()),
        MeanProfile::Quadratic { a, b, c } => {
            let shift = b / (2.0 * a);
            Ok(((pair.lambda - c + b * b / (4.0 * a)) / a).norm().sqrt() + shift.abs())
        }
        MeanProfile::Sech2 { .. } => domain("the collocation oracle covers half-line profiles only"),
    }
}

impl CollocationProblem {
    pub fn new(profile: MeanProfile, cfg: FlowConfig, n: usize, y_max: f64) -> Result<Self> {
        let p = CollocationProblem {
            profile,
            cfg,
            n,
            y_max,
            map_s: 0.0,
            curvature: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// Problem sized for a seed: Y = 6 × its turning point.
    pub fn for_seed(profile: MeanProfile, cfg: FlowConfig, n: usize, seed: &Eigenpair) -> Result<Self> {
        Self::new(profile, cfg, n, Y_FACTOR * turning_point(&profile, seed)?)
    }

    pub fn with_map(mut self, s: f64) -> Result<Self> {
        self.map_s = s;
        self.validate()?;
        Ok(self)
    }

    pub fn with_curvature(mut self, on: bool) -> Self {
        self.curvature = on;
        self
    }

    pub fn with_points(mut self, n: usize) -> Result<Self> {
        self.n = n;
        self.validate()?;
        Ok(self)
    }

    pub fn with_y_max(mut self, y_max: f64) -> Result<Self> {
        self.y_max = y_max;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.profile.domain() != Domain::HalfLine {
            return domain("the collocation oracle covers half-line profiles only");
        }
        if self.n < MIN_POINTS {
            return domain(format!("need at least {MIN_POINTS} collocation points, got {}", self.n));
        }
        if !(self.y_max > 0.0 && self.y_max.is_finite()) {
            return domain(format!("y_max must be positive, got {}", self.y_max));
        }
        if !(self.map_s.is_finite() && self.map_s > -0.5) {
            return Err(Error::SingularMap(self.map_s));
        }
        Ok(())
    }

    /// Checks Y ≥ 3 × the seed's turning point.
    pub fn covers(&self, seed: &Eigenpair) -> Result<()> {
        let tp = turning_point(&self.profile, seed)?;
        if self.y_max < 3.0 * tp {
            return domain(format!("y_max = {} is below 3x the turning point {tp}", self.y_max));
        }
        Ok(())
    }

    /// Physical nodes, from y = Y down to y = 0.
    pub fn grid(&self) -> Vec<f64> {
        let s = self.map_s;
        cheb::nodes(self.n)
            .into_iter()
            .map(|x| self.y_max * (1.0 + x) / (2.0 * (1.0 + s * (1.0 - x))))
            .collect()
    }

    /// d/dy and d²/dy² on the mapped nodes.
    pub fn derivatives(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let s = self.map_s;
        let x = cheb::nodes(self.n);
        let d = cheb::diff_matrix(self.n);
        let dy: Vec<Vec<f64>> = x
            .iter()
            .zip(&d)
            .map(|(&xi, row)| {
                let den = 2.0 * (1.0 + s * (1.0 - xi));
                let dydx = self.y_max / den + self.y_max * (1.0 + xi) * 2.0 * s / (den * den);
                row.iter().map(|v| v / dydx).collect()
            })
            .collect();
        let d2 = cheb::matmul(&dy, &dy);
        (dy, d2)
    }
}

/// Operators that do not depend on k or ω, kept so Newton steps only rebuild
/// the diagonal parts.
struct Operators {
    y: Vec<f64>,
    u: Vec<f64>,
    uyy: Vec<f64>,
    dy: Vec<Vec<f64>>,
    d2: Vec<Vec<f64>>,
}

impl Operators {
    fn new(p: &CollocationProblem) -> Result<Self> {
        p.validate()?;
        let y = p.grid();
        let mut u = Vec::with_capacity(y.len());
        let mut uyy = Vec::with_capacity(y.len());
        for &yi in &y {
            let (a, b) = p.profile.eval(yi.max(0.0))?;
            u.push(a);
            uyy.push(b);
        }
        let (dy, d2) = p.derivatives();
        Ok(Operators { y, u, uyy, dy, d2 })
    }
}

/// A(k) and B with A(k)x = ωB x; also dA/dk.
fn build(p: &CollocationProblem, ops: &Operators, k: Complex64) -> (Mat, Mat, Mat) {
    let n = p.n;
    let r = p.cfg.r;
    let re_ = p.cfg.reynolds;
    let mut a = Mat::zeros(2 * n);
    let mut b = Mat::zeros(2 * n);
    let mut da = Mat::zeros(2 * n);
    let pk = -r * r * k * k;
    let dpk = -2.0 * r * r * k;
    for i in 0..n {
        for j in 0..n {
            let d2 = c(ops.d2[i][j], 0.0);
            a[(i, j)] = d2;
            a[(n + i, n + j)] = d2;
        }
        // φ rows: φ'' + Pφ − Ψ = 0
        a[(i, i)] += pk;
        a[(i, n + i)] = c(-1.0, 0.0);
        da[(i, i)] = dpk;
        // Ψ rows: Ψ'' + (−r²k² − iRkŪ)Ψ + iRωΨ = 0
        a[(n + i, n + i)] += pk - I * re_ * k * ops.u[i];
        da[(n + i, n + i)] = dpk - I * re_ * ops.u[i];
        b[(n + i, n + i)] = -I * re_;
        if p.curvature {
            a[(n + i, i)] = I * re_ * k * ops.uyy[i];
            da[(n + i, i)] = I * re_ * ops.uyy[i];
        }
    }
    // clamped ends: node 0 is y = Y, node n−1 is y = 0
    let zero = |_: usize| c(0.0, 0.0);
    for (row, node) in [(0, 0), (n - 1, n - 1)] {
        a.set_row(row, |j| if j == node { c(1.0, 0.0) } else { c(0.0, 0.0) });
        b.set_row(row, zero);
        da.set_row(row, zero);
    }
    for (row, node) in [(n, 0), (2 * n - 1, n - 1)] {
        a.set_row(row, |j| if j < n { c(ops.dy[node][j], 0.0) } else { c(0.0, 0.0) });
        b.set_row(row, zero);
        da.set_row(row, zero);
    }
    (a, b, da)
}

/// Dense A(k), B with boundary rows replaced.
pub fn assemble(problem: &CollocationProblem, k: Complex64) -> Result<(Mat, Mat)> {
    let ops = Operators::new(problem)?;
    let (a, b, _) = build(problem, &ops, k);
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Overflow(format!("non-finite collocation matrix at k = {k}")));
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefineMode {
    SolveOmegaGivenK,
    SolveKGivenOmega,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub pair: Eigenpair,
    pub iterations: usize,
    /// Last relative update of the eigenvalue.
    pub update: f64,
    /// Chebyshev tail energy of φ.
    pub tail: f64,
    /// Nodes (y = Y down to 0) and the eigenvector (φ, Ψ) there.
    pub grid: Vec<f64>,
    pub phi: Vec<Complex64>,
    pub psi: Vec<Complex64>,
}

/// Fixed bordering vectors; b is zero on the boundary rows so that
/// u = M⁻¹b satisfies the boundary conditions exactly.
fn probe(m: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = m / 2;
    let b = (0..m)
        .map(|j| {
            if j == 0 || j == n - 1 || j == n || j == m - 1 {
                c(0.0, 0.0)
            } else {
                c((1.3 * j as f64 + 0.7).sin(), (0.9 * j as f64 + 0.2).cos())
            }
        })
        .collect();
    let e = (0..m)
        .map(|j| c((0.7 * j as f64 + 1.1).cos(), (1.7 * j as f64 + 0.4).sin()))
        .collect();
    (b, e)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [Complex64]) {
    let (i, _) = v.iter().enumerate().fold(
        (0, -1.0),
        |best, (i, x)| if x.norm() > best.1 { (i, x.norm()) } else { best },
    );
    let s = v[i];
    if s.norm() > 0.0 {
        for x in v.iter_mut() {
            *x /= s;
        }
    }
}

const MAX_ITER: usize = 100;
const TOL: f64 = 1e-10;
const STALL: f64 = 1e-6;

/// Refines `seed` on `problem`. In `SolveKGivenOmega` mode ω is held at the
/// seed's value and k solves det(A(k) − ωB) = 0 through Newton on the bordered
/// function 1/(eᵀ(A − ωB)⁻¹b); in `SolveOmegaGivenK` mode shifted inverse
/// iteration finds the ω nearest the seed's.
pub fn refine_eigen(problem: &CollocationProblem, seed: &Eigenpair, mode: RefineMode) -> Result<OracleResult> {
    problem.covers(seed)?;
    let ops = Operators::new(problem)?;
    let m = 2 * problem.n;
    let (bv, ev) = probe(m);
    let chi = problem.cfg.chi;
    let (pair, iterations, update, x) = match mode {
        RefineMode::SolveKGivenOmega => {
            let omega = seed.omega;
            let mut k = seed.k;
            let mut last = f64::INFINITY;
            let mut out = None;
            let mut prev: Option<Vec<Complex64>> = None;
            for it in 0..MAX_ITER {
                let (a, b, da) = build(problem, &ops, k);
                let mut mk = a;
                for (x, y) in mk.data.iter_mut().zip(&b.data) {
                    *x -= omega * y;
                }
                let lu = match Lu::factor(mk) {
                    Ok(lu) => lu,
                    // exactly singular to working precision: k is the eigenvalue
                    Err(Error::Singular) => match prev.take() {
                        Some(mut x) if last < 1e-4 => {
                            normalize(&mut x);
                            out = Some((it, x));
                            break;
                        }
                        // seeded on the eigenvalue itself; step off it
                        _ => {
                            k += c(1e-9, 1e-9) * k.norm();
                            continue;
                        }
                    },
                    Err(e) => return Err(e),
                };
                let u = lu.solve(&bv);
                let z = lu.solve_transpose(&ev);
                let g = dot(&ev, &u);
                // f = 1/g, f' = zᵀ M' u / g²
                let f = 1.0 / g;
                let df = dot(&z, &da.mul_vec(&u)) / (g * g);
                if df.norm() == 0.0 || !df.re.is_finite() {
                    break;
                }
                let step = f / df;
                k -= step;
                let before = last;
                last = step.norm() / k.norm();
                // rounding floor: updates stopped shrinking
                let stalled = last < STALL && last > 0.5 * before;
                if last < TOL || stalled {
                    let mut x = u;
                    normalize(&mut x);
                    out = Some((it + 1, x));
                    break;
                }
                prev = Some(u);
            }
            match out {
                Some((it, x)) => (Eigenpair::new(seed.n, k, omega, chi), it, last, x),
                None => {
                    return Err(Error::NoConvergence {
                        iterations: MAX_ITER,
                        last: k,
                        residual: last,
                    })
                }
            }
        }
        RefineMode::SolveOmegaGivenK => {
            let k = seed.k;
            let (a, b, _) = build(problem, &ops, k);
            let mut sigma = seed.omega;
            let mut x = bv.clone();
            let mut omega = sigma;
            let mut last = f64::INFINITY;
            let mut done = None;
            let mut lu = shifted(&a, &b, sigma)?;
            for it in 0..MAX_ITER {
                let bx = b.mul_vec(&x);
                let mut y = lu.solve(&bx);
                // y ≈ x/(ω − σ) near convergence
                let nu = dot_conj(&x, &y) / dot_conj(&x, &x);
                let new = sigma + 1.0 / nu;
                last = (new - omega).norm() / new.norm().max(f64::MIN_POSITIVE);
                omega = new;
                normalize(&mut y);
                x = y;
                if last < TOL {
                    done = Some(it + 1);
                    break;
                }
                // re-shift every few steps to speed up a poor seed
                if it % 8 == 7 {
                    sigma = omega;
                    lu = match shifted(&a, &b, sigma) {
                        Ok(l) => l,
                        Err(Error::Singular) => {
                            done = Some(it + 1);
                            break;
                        }
                        Err(e) => return Err(e),
                    };
                }
            }
            match done {
                Some(it) => (Eigenpair::new(seed.n, k, omega, chi), it, last, x),
                None => {
                    return Err(Error::NoConvergence {
                        iterations: MAX_ITER,
                        last: omega,
                        residual: last,
                    })
                }
            }
        }
    };
    let n = problem.n;
    let phi = x[..n].to_vec();
    let psi = x[n..].to_vec();
    let tail = cheb::tail_energy(&phi);
    if tail > SPURIOUS_TAIL {
        return Err(Error::SpuriousMode {
            value: match mode {
                RefineMode::SolveKGivenOmega => pair.k,
                RefineMode::SolveOmegaGivenK => pair.omega,
            },
            tail,
        });
    }
    Ok(OracleResult {
        pair,
        iterations,
        update,
        tail,
        grid: ops.y,
        phi,
        psi,
    })
}

fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn shifted(a: &Mat, b: &Mat, sigma: Complex64) -> Result<Lu> {
    let mut m = a.clone();
    for (x, y) in m.data.iter_mut().zip(&b.data) {
        *x -= sigma * y;
    }
    Lu::factor(m)
}

impl OracleResult {
    /// Max over interior nodes of the relative residual of the fourth-order
    /// equation, with derivatives from the collocation matrices. Rounding in
    /// the squared second-derivative matrix grows like eps·N⁴, so expect
    /// around 1e-6 at N = 96 rather than machine precision.
    pub fn ode_residual(&self, problem: &CollocationProblem) -> Result<f64> {
        let ops = Operators::new(problem)?;
        let n = problem.n;
        let (r, re_) = (problem.cfg.r, problem.cfg.reynolds);
        let (k, om) = (self.pair.k, self.pair.omega);
        let apply = |m: &Vec<Vec<f64>>, v: &[Complex64]| -> Vec<Complex64> {
            m.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| *a * b).sum())
                .collect()
        };
        let p2 = apply(&ops.d2, &self.phi);
        let p4 = apply(&ops.d2, &p2);
        let mut res = Vec::with_capacity(n);
        let mut size = [0.0f64; 3];
        for i in 2..n - 2 {
            let du = ops.u[i] - om / k;
            let c2 = 2.0 * r * r * k * k + I * re_ * k * du;
            let mut c0 = r.powi(4) * k.powi(4) + I * r * r * re_ * k.powi(3) * du;
            if problem.curvature {
                c0 += I * re_ * k * ops.uyy[i];
            }
            let terms = [p4[i], c2 * p2[i], c0 * self.phi[i]];
            for (s, t) in size.iter_mut().zip(&terms) {
                *s = s.max(t.norm());
            }
            res.push((terms[0] - terms[1] + terms[2]).norm());
        }
        let total: f64 = size.iter().sum();
        let worst = res.into_iter().fold(0.0, f64::max) / total;
        Ok(worst)
    }

    /// |φ|, |φ'| at both ends relative to max |φ|.
    pub fn boundary_values(&self, problem: &CollocationProblem) -> Result<f64> {
        let (dy, _) = problem.derivatives();
        let n = problem.n;
        let scale = self.phi.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let d = |node: usize| -> Complex64 { dy[node].iter().zip(&self.phi).map(|(a, b)| *a * b).sum() };
        let len = problem.y_max;
        let vals = [
            self.phi[0].norm(),
            self.phi[n - 1].norm(),
            d(0).norm() * len,
            d(n - 1).norm() * len,
        ];
        Ok(vals.iter().cloned().fold(0.0, f64::max) / scale)
    }
}

/// Oracle eigenvalue at (n, 2n) points and at 1.5·Y, for self-convergence.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfConvergence {
    pub base: Eigenpair,
    pub doubled: Eigenpair,
    pub extended: Eigenpair,
    /// |k(2N) − k(N)|/|k(2N)|
    pub doubling: f64,
    /// |k(2N, 1.5Y) − k(2N, Y)|/|k(2N, Y)|
    pub truncation: f64,
}

pub fn self_convergence(problem: &CollocationProblem, seed: &Eigenpair, mode: RefineMode) -> Result<SelfConvergence> {
    let value = |p: &Eigenpair| match mode {
        RefineMode::SolveKGivenOmega => p.k,
        RefineMode::SolveOmegaGivenK => p.omega,
    };
    let base = refine_eigen(problem, seed, mode)?.pair;
    let p2 = problem.with_points(2 * problem.n)?;
    let doubled = refine_eigen(&p2, &base, mode)?.pair;
    let p3 = p2.with_y_max(1.5 * problem.y_max)?;
    let extended = refine_eigen(&p3, &doubled, mode)?.pair;
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm();
    Ok(SelfConvergence {
        base,
        doubled,
        extended,
        doubling: rel(value(&base), value(&doubled)),
        truncation: rel(value(&extended), value(&doubled)),
    })
}

/// One (n, r) comparison of the asymptotic seed with the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationRow {
    pub n: usize,
    pub r: f64,
    pub seed: Eigenpair,
    pub oracle: Eigenpair,
    /// |k_seed − k_oracle|/|k_oracle|
    pub gap: f64,
    pub convergence: SelfConvergence,
}

/// A steady seed k = −i|k| sits on the symmetry axis of the real steady
/// problem, where Newton stays on the axis and finds a mode of the truncated
/// box whose φ oscillates out to Y. Rotating the seed slightly lets it reach
/// the root with Re k > 0, whose φ decays like e^{−rky}.
pub fn off_axis(seed: &Eigenpair, chi: f64) -> Eigenpair {
    Eigenpair::new(seed.n, seed.k * c(1.0, 0.04), seed.omega, chi)
}

/// Steady linear profile Ū = y: WKB seed versus collocation for each r at fixed χ.
pub fn validate_steady_linear(n: usize, rs: &[f64], chi: f64, points: usize) -> Result<Vec<ValidationRow>> {
    let run = |r: f64| -> Result<ValidationRow> {
        let cfg = FlowConfig::from_chi(r, chi)?;
        let seed = crate::shortwave::steady_eigen_linear(n, 1.0, 0.0, &cfg)?.pair;
        let profile = MeanProfile::Linear { b: 1.0, c: 0.0 };
        let problem = CollocationProblem::for_seed(profile, cfg, points, &seed)?;
        let convergence = self_convergence(&problem, &off_axis(&seed, cfg.chi), RefineMode::SolveKGivenOmega)?;
        let oracle = convergence.doubled;
        Ok(ValidationRow {
            n,
            r,
            seed,
            oracle,
            gap: (seed.k - oracle.k).norm() / oracle.k.norm(),
            convergence,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        rs.par_iter().map(|&r| run(r)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        rs.iter().map(|&r| run(r)).collect()
    }
}

/// True when the gaps strictly decrease along `rows`.
pub fn gaps_strictly_decreasing(rows: &[ValidationRow]) -> bool {
    rows.windows(2).all(|w| w[1].gap < w[0].gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortwave::steady_eigen_linear;

    fn linear() -> MeanProfile {
        MeanProfile::Linear { b: 1.0, c: 0.0 }
    }

    #[test]
    fn spectral_second_derivative() {
        let cfg = FlowConfig::from_chi(10.0, 100.0).unwrap();
        let p = CollocationProblem::new(linear(), cfg, 96, 10.0).unwrap();
        let (_, d2) = p.derivatives();
        let y = p.grid();
        for (i, row) in d2.iter().enumerate() {
            let got: f64 = row.iter().zip(&y).map(|(a, yj)| a * yj.cos()).sum();
            assert!((got + y[i].cos()).abs() < 1e-8, "i={i}");
        }
    }

    #[test]
    fn shapes_and_finiteness() {
        let cfg = FlowConfig::from_chi(10.0, 1000.0).unwrap();
        let p = CollocationProblem::new(linear(), cfg, 40, 1.0).unwrap();
        let (a, b) = assemble(&p, c(0.3, -5.0)).unwrap();
        assert_eq!((a.n, b.n), (80, 80));
        assert!(a.is_finite() && b.is_finite());
        assert!(CollocationProblem::new(linear(), cfg, 16, 1.0).is_err());
        assert!(matches!(
            CollocationProblem::new(linear(), cfg, 40, 1.0).unwrap().with_map(-0.5),
            Err(Error::SingularMap(_))
        ));
    }

    #[test]
    fn steady_linear_mode_converges() {
        let cfg = FlowConfig::from_chi(20.0, 1000.0).unwrap();
        let seed = steady_eigen_linear(5, 1.0, 0.0, &cfg).unwrap().pair;
        let p = CollocationProblem::for_seed(linear(), cfg, 96, &seed).unwrap();
        let start = off_axis(&seed, cfg.chi);
        let res = refine_eigen(&p, &start, RefineMode::SolveKGivenOmega).unwrap();
        assert!(res.pair.k.re > 0.0);
        let gap = (res.pair.k - seed.k).norm() / res.pair.k.norm();
        assert!(gap < 0.2, "{gap}");
        // half-line root frozen from mpmath (Airy-integral solvability
        // condition); truncating at Y = 6 turning points costs about 1e-6
        let scaled = res.pair.k / seed.k.norm() * 4.731157116058108;
        assert!(
            (scaled - c(0.222734078713546, -4.79474627534422)).norm() < 2e-5,
            "{scaled}"
        );
        let bv = res.boundary_values(&p).unwrap();
        assert!(bv < 1e-8, "{bv}");
        let ode = res.ode_residual(&p).unwrap();
        assert!(ode < 1e-4, "{ode}");
        let sc = self_convergence(&p, &start, RefineMode::SolveKGivenOmega).unwrap();
        assert!(sc.doubling < 1e-8 && sc.truncation < 1e-5, "{sc:?}");
    }

    #[test]
    fn inverse_iteration_recovers_steady_omega() {
        let cfg = FlowConfig::from_chi(10.0, 1000.0).unwrap();
        let seed = steady_eigen_linear(3, 1.0, 0.0, &cfg).unwrap().pair;
        let p = CollocationProblem::for_seed(linear(), cfg, 96, &seed).unwrap();
        let k_res = refine_eigen(&p, &seed, RefineMode::SolveKGivenOmega).unwrap();
        // at the oracle k, the ω nearest 0 is 0 itself
        let start = Eigenpair::new(3, k_res.pair.k, c(0.01, 0.01), cfg.chi);
        let w = refine_eigen(&p, &start, RefineMode::SolveOmegaGivenK).unwrap();
        assert!(w.pair.omega.norm() < 1e-6 * k_res.pair.k.norm(), "{:?}", w.pair.omega);
    }
}
