//! Green's functions of d²/dy² − r²k² with φ_y = 0 at the ends, and the
//! synthesis φ(y) = ∫G(y, ξ)Ψ(ξ)dξ.
//!
//! Both kernels jump by −1 in ∂_yG across y = ξ, so they solve
//! G_yy − r²k²G = −δ(y − ξ). [`synthesize_phi`] multiplies by that sign so the
//! returned φ satisfies φ_yy − r²k²φ = Ψ.

use crate::error::{domain, Error, Result};
use crate::grid::{check_grid, GridFunction, GridMeta};
use crate::quad::{integrate, QuadOptions};
use num_complex::Complex64;

/// Sign of ∂_yG(ξ⁺, ξ) − ∂_yG(ξ⁻, ξ).
pub const JUMP_SIGN: f64 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelDomain {
    /// [0, ∞)
    SemiInfinite,
    /// (−∞, ∞)
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreensKernel {
    pub domain: KernelDomain,
    pub r: f64,
    pub k: Complex64,
    rk: Complex64,
}

impl GreensKernel {
    /// Rejects Re k ≤ 0, for which the kernel does not decay.
    pub fn new(domain: KernelDomain, r: f64, k: Complex64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("r must be positive, got {r}")));
        }
        if !(k.re > 0.0) {
            return Err(Error::Domain(format!(
                "Green's kernel needs Re(k) > 0 for decay, got k = {k}"
            )));
        }
        Ok(GreensKernel {
            domain,
            r,
            k,
            rk: r * k,
        })
    }

    pub fn rk(&self) -> Complex64 {
        self.rk
    }

    fn check(&self, y: f64, xi: f64) -> Result<()> {
        if !y.is_finite() || !xi.is_finite() {
            return domain("non-finite kernel argument");
        }
        if self.domain == KernelDomain::SemiInfinite && (y < 0.0 || xi < 0.0) {
            return domain(format!("semi-infinite kernel needs y, xi >= 0, got ({y}, {xi})"));
        }
        Ok(())
    }

    /// G(y, ξ). Exponents are combined so no factor overflows on its own.
    pub fn eval(&self, y: f64, xi: f64) -> Result<Complex64> {
        self.check(y, xi)?;
        let rk = self.rk;
        Ok(match self.domain {
            KernelDomain::SemiInfinite => {
                let (lo, hi) = (y.min(xi), y.max(xi));
                // cosh(rk·lo)e^{−rk·hi} = (e^{rk(lo−hi)} + e^{−rk(lo+hi)})/2
                ((rk * (lo - hi)).exp() + (-rk * (lo + hi)).exp()) / (2.0 * rk)
            }
            KernelDomain::Infinite => (-rk * (y - xi).abs()).exp() / (2.0 * rk),
        })
    }

    /// ∂G/∂y away from y = ξ; at y = ξ the one-sided value from `side` (+1 or −1).
    pub fn eval_dy(&self, y: f64, xi: f64, side: f64) -> Result<Complex64> {
        self.check(y, xi)?;
        let rk = self.rk;
        let above = y > xi || (y == xi && side > 0.0);
        Ok(match self.domain {
            KernelDomain::SemiInfinite => {
                if above {
                    // −cosh(rkξ)e^{−rky}
                    -((rk * (xi - y)).exp() + (-rk * (xi + y)).exp()) / 2.0
                } else {
                    // sinh(rky)e^{−rkξ}
                    ((rk * (y - xi)).exp() - (-rk * (y + xi)).exp()) / 2.0
                }
            }
            KernelDomain::Infinite => {
                let e = (-rk * (y - xi).abs()).exp() / 2.0;
                if above {
                    -e
                } else {
                    e
                }
            }
        })
    }
}

/// G(y, ξ) for the given kernel.
pub fn greens_eval(kern: &GreensKernel, y: f64, xi: f64) -> Result<Complex64> {
    kern.eval(y, xi)
}

#[derive(Clone, Debug)]
pub struct SynthOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Panel width cap, e.g. a quarter of the local oscillation wavelength of Ψ.
    pub max_width: Option<f64>,
    /// Extra points where Ψ is not smooth.
    pub breaks: Vec<f64>,
    /// Tail truncation threshold relative to the accumulated integral.
    pub tail_rel: f64,
    /// Give up on the tail after this many decay lengths 1/Re(rk) past y.
    pub tail_lengths: f64,
    /// Never stop the tail before this coordinate (the region where Ψ lives).
    pub support: f64,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_width: None,
            breaks: Vec::new(),
            tail_rel: 1e-12,
            tail_lengths: 2000.0,
            support: 0.0,
        }
    }
}

/// One value of φ and its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiPoint {
    pub value: Complex64,
    pub error: f64,
}

fn piecewise<F>(f: &F, a: f64, b: f64, breaks: &[f64], opts: &QuadOptions) -> Result<(Complex64, f64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut pts = vec![a];
    pts.extend(breaks.iter().copied().filter(|&x| x > a.min(b) && x < a.max(b)));
    let n = pts.len();
    if a > b {
        pts[1..n].sort_by(|x, y| y.total_cmp(x));
    } else {
        pts[1..n].sort_by(|x, y| x.total_cmp(y));
    }
    pts.push(b);
    let (mut v, mut e, mut m) = (Complex64::new(0.0, 0.0), 0.0, 0.0f64);
    for w in pts.windows(2) {
        let q = integrate(f, w[0], w[1], opts)?;
        v += q.value;
        e += q.error;
        m = m.max(q.max_abs);
    }
    Ok((v, e, m))
}

/// ∫ from `start` towards ±∞ (direction `dir`) in chunks until the remaining
/// tail is negligible.
fn tail<F>(
    f: &F,
    start: f64,
    dir: f64,
    decay: f64,
    acc: Complex64,
    so: &SynthOptions,
    qo: &QuadOptions,
) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let chunk = (4.0 / decay).max(1e-3);
    let (mut v, mut e) = (Complex64::new(0.0, 0.0), 0.0);
    let mut x = start;
    let limit = so.tail_lengths / decay;
    loop {
        let next = x + dir * chunk;
        let (cv, ce, cm) = piecewise(f, x, next, &so.breaks, qo)?;
        // oriented so the result is always the integral from low to high
        v += cv * dir;
        e += ce;
        x = next;
        let past_support = dir * (x - so.support) >= 0.0 || so.support == 0.0;
        // integrand bound on the rest, assuming it keeps decaying at least as fast as the kernel
        let bound = f(x)?.norm().max(cm * (-decay * chunk).exp()) / decay;
        if past_support && bound <= so.tail_rel * (acc + v).norm().max(f64::MIN_POSITIVE) {
            return Ok((v, e + bound));
        }
        if past_support && bound == 0.0 {
            return Ok((v, e));
        }
        if (x - start).abs() > limit {
            return Err(Error::Tail { at: start });
        }
    }
}

fn quad_opts(so: &SynthOptions) -> QuadOptions {
    QuadOptions {
        abs_tol: so.abs_tol,
        rel_tol: so.rel_tol,
        max_intervals: 4000,
        max_width: so.max_width,
    }
}

/// ∫ K(y, ξ)Ψ(ξ)dξ over the kernel's domain, split at ξ = y.
fn apply<K, F>(kern: &GreensKernel, kfun: K, psi: &F, y: f64, so: &SynthOptions) -> Result<PhiPoint>
where
    K: Fn(f64, f64, f64) -> Result<Complex64>,
    F: Fn(f64) -> Result<Complex64>,
{
    let qo = quad_opts(so);
    let decay = kern.rk.re;
    let below = |xi: f64| Ok(kfun(y, xi, 1.0)? * psi(xi)?);
    let above = |xi: f64| Ok(kfun(y, xi, -1.0)? * psi(xi)?);
    let (mut v, mut e) = (Complex64::new(0.0, 0.0), 0.0);
    match kern.domain {
        KernelDomain::SemiInfinite => {
            let (lv, le, _) = piecewise(&below, 0.0, y, &so.breaks, &qo)?;
            v += lv;
            e += le;
        }
        KernelDomain::Infinite => {
            let (lv, le) = tail(&below, y, -1.0, decay, v, &neg_support(so, y), &qo)?;
            v += lv;
            e += le;
        }
    }
    let (tv, te) = tail(&above, y, 1.0, decay, v, so, &qo)?;
    Ok(PhiPoint {
        value: (v + tv) * JUMP_SIGN,
        error: e + te,
    })
}

fn neg_support(so: &SynthOptions, y: f64) -> SynthOptions {
    let mut s = so.clone();
    s.support = if so.support == 0.0 { 0.0 } else { (-so.support).min(y) };
    s
}

/// φ(y) = −∫G(y, ξ)Ψ(ξ)dξ, the solution of φ_yy − r²k²φ = Ψ with φ_y = 0 at the ends.
pub fn phi_at<F>(kern: &GreensKernel, psi: &F, y: f64, so: &SynthOptions) -> Result<PhiPoint>
where
    F: Fn(f64) -> Result<Complex64>,
{
    apply(kern, |y, xi, _| kern.eval(y, xi), psi, y, so).map_err(|e| locate(e, y))
}

/// φ_y(y) from the differentiated kernel.
pub fn phi_dy_at<F>(kern: &GreensKernel, psi: &F, y: f64, so: &SynthOptions) -> Result<PhiPoint>
where
    F: Fn(f64) -> Result<Complex64>,
{
    // the ξ < y part sees the kernel from above, the ξ > y part from below
    apply(kern, |y, xi, side| kern.eval_dy(y, xi, side), psi, y, so).map_err(|e| locate(e, y))
}

fn locate(e: Error, y: f64) -> Error {
    match e {
        Error::Quadrature { reason, .. } => Error::Quadrature { at: y, reason },
        Error::Tail { .. } => Error::Tail { at: y },
        other => other,
    }
}

/// φ on `ygrid` with per-point error estimates.
pub fn synthesize_phi<F>(kern: &GreensKernel, psi: F, ygrid: &[f64], so: &SynthOptions) -> Result<GridFunction>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    check_grid(ygrid)?;
    let pts = map_points(ygrid, |y| phi_at(kern, &psi, y, so))?;
    let meta = GridMeta {
        mode: None,
        label: format!("greens r={} k={}", kern.r, kern.k),
    };
    let values = pts.iter().map(|p| p.value).collect();
    let errors = pts.iter().map(|p| p.error).collect();
    Ok(GridFunction::new(ygrid.to_vec(), values, meta)?.with_errors(errors))
}

#[cfg(feature = "parallel")]
fn map_points<T: Send, G>(ys: &[f64], g: G) -> Result<Vec<T>>
where
    G: Fn(f64) -> Result<T> + Sync,
{
    use rayon::prelude::*;
    ys.par_iter().map(|&y| g(y)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_points<T, G>(ys: &[f64], g: G) -> Result<Vec<T>>
where
    G: Fn(f64) -> Result<T>,
{
    ys.iter().map(|&y| g(y)).collect()
}

/// Relative residual of φ_yy − r²k²φ = Ψ at `y` by a 7-point stencil with step h.
pub fn poisson_residual<F>(kern: &GreensKernel, psi: &F, y: f64, h: f64, so: &SynthOptions) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let phi = |x: f64| phi_at(kern, psi, x, so).map(|p| p.value);
    let d2 = crate::fd::d2(&phi, y, h)?;
    let p = phi(y)?;
    let s = psi(y)?;
    let rk2 = kern.rk * kern.rk;
    let den = d2.norm() + (rk2 * p).norm() + s.norm();
    if den == 0.0 {
        return Ok(0.0);
    }
    Ok((d2 - rk2 * p - s).norm() / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::linspace;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_examples() {
        let inf = GreensKernel::new(KernelDomain::Infinite, 2.0, c(0.5, 0.3)).unwrap();
        let v = inf.eval(1.3, 1.3).unwrap();
        assert!((v - 1.0 / (2.0 * inf.rk())).norm() < 1e-15);
        let semi = GreensKernel::new(KernelDomain::SemiInfinite, 1.0, c(1.0, 0.0)).unwrap();
        assert!((semi.eval(0.0, 1.0).unwrap().re - (-1f64).exp()).abs() < 1e-15);
        assert!((semi.eval(0.4, 2.2).unwrap() - semi.eval(2.2, 0.4).unwrap()).norm() < 1e-16);
        assert!(GreensKernel::new(KernelDomain::Infinite, 1.0, c(0.0, 1.0)).is_err());
        assert!(semi.eval(-1.0, 0.0).is_err());
    }

    #[test]
    fn jump_is_minus_one() {
        for kern in [
            GreensKernel::new(KernelDomain::SemiInfinite, 3.0, c(0.8, -0.6)).unwrap(),
            GreensKernel::new(KernelDomain::Infinite, 3.0, c(0.8, -0.6)).unwrap(),
        ] {
            let xi = 0.9;
            let j = kern.eval_dy(xi, xi, 1.0).unwrap() - kern.eval_dy(xi, xi, -1.0).unwrap();
            assert!((j - JUMP_SIGN).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_source_gives_zero() {
        let kern = GreensKernel::new(KernelDomain::SemiInfinite, 5.0, c(1.0, 0.2)).unwrap();
        let g = synthesize_phi(
            &kern,
            |_| Ok(c(0.0, 0.0)),
            &linspace(0.0, 3.0, 7),
            &SynthOptions::default(),
        )
        .unwrap();
        assert!(g.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn exponential_source_on_the_line() {
        let kern = GreensKernel::new(KernelDomain::Infinite, 2.0, c(1.0, 0.5)).unwrap();
        let a = c(3.0, -1.0);
        let rk = kern.rk();
        let so = SynthOptions {
            breaks: vec![0.0],
            ..SynthOptions::default()
        };
        for &y in &[0.0, 0.3, 1.7, 4.0] {
            let got = phi_at(&kern, &|x: f64| Ok((-a * x.abs()).exp()), y, &so).unwrap().value;
            let ay = (-a * y).exp();
            let ry = (-rk * y).exp();
            let exact = ((ry / (rk + a)) + (ay - ry) / (rk - a) + ay / (rk + a)) / (2.0 * rk);
            assert!((got - JUMP_SIGN * exact).norm() < 1e-9 * exact.norm(), "y={y}");
        }
    }

    #[test]
    fn manufactured_solution() {
        let kern = GreensKernel::new(KernelDomain::SemiInfinite, 3.0, c(1.2, 0.4)).unwrap();
        let rk2 = kern.rk() * kern.rk();
        let phi_hat = |y: f64| c((-y * y).exp(), 0.0);
        let psi = move |y: f64| Ok((4.0 * y * y - 2.0) * phi_hat(y) - rk2 * phi_hat(y));
        let ys = linspace(0.0, 10.0, 41);
        let g = synthesize_phi(&kern, psi, &ys, &SynthOptions::default()).unwrap();
        for (y, v) in ys.iter().zip(&g.values) {
            assert!((v - phi_hat(*y)).norm() < 1e-7, "y={y}");
        }
    }
}
