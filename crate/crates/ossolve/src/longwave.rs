//! Long-wave limit (r → 0⁺) on [0, ∞): φ_yyyy − [2r²k² + ir²χk(Ū − ω/k)]φ_yy = 0
//! with Ū linear or weakly quadratic.
//!
//! For these modes `Eigenpair::lambda` holds the long-wave turning-point
//! parameter, not the short-wave λ(k, ω).

use crate::eigenfunctions::HermiteNorm;
use crate::error::{domain, Error, Result};
use crate::fd;
use crate::meanflow::FlowConfig;
use crate::quad::{integrate, QuadOptions};
use crate::roots::newton;
use crate::shortwave::Eigenpair;
use crate::specfun::{hermite_function_scaled, pfq, pfq_sum, HypergeometricParams, Scaled};
use crate::{c, re, I};
use num_complex::Complex64;
use std::f64::consts::PI;

fn params(upper: &[f64], lower: &[f64]) -> HypergeometricParams {
    HypergeometricParams::real(upper, lower).expect("fixed parameters are valid")
}

// ---------------------------------------------------------------------------
// Ū = by + c

/// λ = [ω/k − c − 2k/(iχ)]/b.
pub fn lambda_linear(k: Complex64, omega: Complex64, b: f64, c0: f64, chi: f64) -> Complex64 {
    (omega / k - c0 - 2.0 * k / (I * chi)) / b
}

/// ω from λ: k(bλ + c + 2k/(iχ)).
pub fn omega_linear(k: Complex64, lambda: Complex64, b: f64, c0: f64, chi: f64) -> Complex64 {
    k * (b * lambda + c0 + 2.0 * k / (I * chi))
}

pub fn pair_linear(n: usize, k: Complex64, omega: Complex64, b: f64, c0: f64, chi: f64) -> Eigenpair {
    Eigenpair {
        n,
        k,
        omega,
        lambda: lambda_linear(k, omega, b, c0, chi),
    }
}

/// One long-wave mode for Ū = by + c.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearMode {
    pub pair: Eigenpair,
    pub b: f64,
    pub c: f64,
    pub cfg: FlowConfig,
}

impl LinearMode {
    pub fn new(pair: Eigenpair, b: f64, c0: f64, cfg: FlowConfig) -> Result<Self> {
        if b == 0.0 {
            return domain("long-wave linear mode needs b != 0");
        }
        Ok(LinearMode { pair, b, c: c0, cfg })
    }

    /// ir²χkb
    pub fn mu(&self) -> Complex64 {
        I * self.cfg.r * self.cfg.r * self.cfg.chi * self.pair.k * self.b
    }

    fn t(&self, y: f64) -> Result<Complex64> {
        if !(y >= 0.0) {
            return domain(format!("long-wave modes live on y >= 0, got {y}"));
        }
        Ok(y - self.pair.lambda)
    }

    /// Ψ = φ_yy = ₀F₁(; 2/3; μ(y − λ)³/9).
    pub fn psi(&self, y: f64) -> Result<Complex64> {
        let t = self.t(y)?;
        pfq(&params(&[], &[2.0 / 3.0]), self.mu() * t * t * t / 9.0)
    }

    /// φ_y = (y − λ)·₁F₂(1/3; 2/3, 4/3; μ(y − λ)³/9).
    pub fn phi_y(&self, y: f64) -> Result<Complex64> {
        let t = self.t(y)?;
        Ok(t * pfq(
            &params(&[1.0 / 3.0], &[2.0 / 3.0, 4.0 / 3.0]),
            self.mu() * t * t * t / 9.0,
        )?)
    }

    /// φ = ((y − λ)²/2)·₁F₂(1/3; 4/3, 5/3; μ(y − λ)³/9), the double antiderivative of Ψ.
    pub fn phi(&self, y: f64) -> Result<Complex64> {
        let t = self.t(y)?;
        Ok(0.5
            * t
            * t
            * pfq(
                &params(&[1.0 / 3.0], &[4.0 / 3.0, 5.0 / 3.0]),
                self.mu() * t * t * t / 9.0,
            )?)
    }

    /// Natural length scale |μ|^{−1/3}.
    pub fn length(&self) -> f64 {
        self.mu().norm().powf(-1.0 / 3.0)
    }

    /// Relative residual of the reduced equation at y, with the coefficient
    /// 2r²k² + ir²χk(by + c − ω/k) built from (k, ω) directly.
    pub fn residual(&self, y: f64) -> Result<f64> {
        let h = fd::step_fourth(self.length());
        let f = |x: f64| self.phi(x);
        let d4 = fd::d4(&f, y, h)?;
        let d2 = fd::d2(&f, y, fd::step_second(self.length()))?;
        let (r, chi, k, om) = (self.cfg.r, self.cfg.chi, self.pair.k, self.pair.omega);
        let coef = 2.0 * r * r * k * k + I * r * r * chi * k * (self.b * y + self.c - om / k);
        let den = d4.norm() + (coef * d2).norm();
        if den == 0.0 {
            return Ok(0.0);
        }
        Ok((d4 - coef * d2).norm() / den)
    }

    /// |φ(y2)|/|φ(y1)|: above one means the mode grows instead of decaying.
    pub fn tail_growth(&self, y1: f64, y2: f64) -> Result<f64> {
        Ok(self.phi(y2)?.norm() / self.phi(y1)?.norm())
    }
}

/// φ_n(y) for the given pair, whose `lambda` is the long-wave λ.
pub fn longwave_linear_phi(pair: &Eigenpair, b: f64, cfg: &FlowConfig, y: f64) -> Result<Complex64> {
    if cfg.r > 1.0 {
        return domain(format!("long-wave modes need r <= 1, got {}", cfg.r));
    }
    LinearMode::new(*pair, b, 0.0, *cfg)?.phi(y)
}

/// f(w) = ₁F₂(1/3; 2/3, 4/3; w) and f'(w), with the series error estimate of f.
pub fn dispersion_function(w: Complex64) -> Result<(Complex64, Complex64, f64)> {
    let s = pfq_sum(&params(&[1.0 / 3.0], &[2.0 / 3.0, 4.0 / 3.0]), w)?;
    let d = pfq(&params(&[4.0 / 3.0], &[5.0 / 3.0, 7.0 / 3.0]), w)?;
    Ok((s.value, 0.375 * d, s.error))
}

/// Largest |w| the zero scan will search.
pub const W_SCAN_MAX: f64 = 400.0;

/// Number of zeros of f inside |w| < radius by the argument principle.
pub fn zero_count(radius: f64) -> Result<usize> {
    let f = |t: f64| dispersion_function(radius * Complex64::from_polar(1.0, t)).map(|v| v.0);
    let mut total = 0.0;
    let m = 512;
    let mut prev = f(0.0)?;
    for i in 1..=m {
        let (t0, t1) = (2.0 * PI * (i - 1) as f64 / m as f64, 2.0 * PI * i as f64 / m as f64);
        total += winding(&f, t0, t1, prev, 0)?;
        prev = f(t1)?;
    }
    let n = total / (2.0 * PI);
    if (n - n.round()).abs() > 0.1 {
        return Err(Error::Convergence { terms: m });
    }
    Ok(n.round() as usize)
}

fn winding<F>(f: &F, t0: f64, t1: f64, f0: Complex64, depth: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let f1 = f(t1)?;
    let d = (f1 / f0).arg();
    if d.abs() < 0.5 || depth > 30 {
        return Ok(d);
    }
    let tm = 0.5 * (t0 + t1);
    let fm = f(tm)?;
    Ok(winding(f, t0, tm, f0, depth + 1)? + winding(f, tm, t1, fm, depth + 1)?)
}

fn polish(seed: Complex64) -> Result<(Complex64, f64)> {
    let root = newton(
        |w| dispersion_function(w).map(|(v, d, _)| (v, d)),
        seed,
        |w| dispersion_function(w).map_or(1e-13, |(_, _, e)| (4.0 * e).max(1e-13)),
        60,
    )?;
    Ok((root.root, root.residual))
}

/// Zeros of f with Im w > 0 and |w| < radius, sorted by modulus. The count is
/// confirmed against the argument principle (zeros come in conjugate pairs).
pub fn dispersion_zeros(radius: f64) -> Result<Vec<Complex64>> {
    if !(radius > 0.0 && radius <= W_SCAN_MAX) {
        return domain(format!("zero scan radius must be in (0, {W_SCAN_MAX}], got {radius}"));
    }
    let expected = zero_count(radius)?;
    let mut found: Vec<Complex64> = Vec::new();
    for refine in 0..4 {
        let (nr, nt) = (60 << refine, 48 << refine);
        let mut grid = vec![vec![0.0; nt + 1]; nr + 1];
        let at = |i: usize, j: usize| {
            let rho = (radius.sqrt() * i as f64 / nr as f64).powi(2);
            Complex64::from_polar(rho, PI * j as f64 / nt as f64)
        };
        for (i, row) in grid.iter_mut().enumerate() {
            for (j, g) in row.iter_mut().enumerate() {
                *g = dispersion_function(at(i, j))?.0.norm();
            }
        }
        for i in 1..nr {
            for j in 1..nt {
                let v = grid[i][j];
                let is_min = (-1i32..=1).all(|di| {
                    (-1i32..=1)
                        .all(|dj| (di == 0 && dj == 0) || v <= grid[(i as i32 + di) as usize][(j as i32 + dj) as usize])
                });
                if !is_min {
                    continue;
                }
                if let Ok((w, _)) = polish(at(i, j)) {
                    if w.im > 0.0 && w.norm() < radius && found.iter().all(|z| (z - w).norm() > 1e-6 * (1.0 + w.norm()))
                    {
                        found.push(w);
                    }
                }
            }
        }
        if 2 * found.len() == expected {
            found.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
            return Ok(found);
        }
        log::debug!("zero scan found {} of {} zeros; refining", 2 * found.len(), expected);
    }
    Err(Error::NoRootFound(format!(
        "found {} of {} zeros of 1F2(1/3;2/3,4/3;w) in |w| < {radius}",
        2 * found.len(),
        expected
    )))
}

/// Which member of the conjugate pair of zeros to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroHalf {
    Upper,
    Lower,
}

/// The n-th (n ≥ 1) zero w_n of the long-wave dispersion function and the
/// family of (k, ω) that satisfies −ir²χkbλ³/9 = w_n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearDispersion {
    pub n: usize,
    pub w: Complex64,
    /// |f(w)| at the returned zero.
    pub residual: f64,
    pub b: f64,
    pub cfg: FlowConfig,
}

pub fn longwave_linear_dispersion_half(n: usize, b: f64, cfg: &FlowConfig, half: ZeroHalf) -> Result<LinearDispersion> {
    if b == 0.0 {
        return domain("long-wave dispersion needs b != 0");
    }
    if n == 0 {
        return domain("long-wave modes are numbered from n = 1");
    }
    let mut radius = 50.0f64;
    loop {
        let zs = dispersion_zeros(radius)?;
        if zs.len() >= n {
            let w = match half {
                ZeroHalf::Upper => zs[n - 1],
                ZeroHalf::Lower => zs[n - 1].conj(),
            };
            return Ok(LinearDispersion {
                n,
                w,
                residual: dispersion_function(w)?.0.norm(),
                b,
                cfg: *cfg,
            });
        }
        if radius >= W_SCAN_MAX {
            return Err(Error::NoRootFound(format!(
                "only {} zeros with |w| < {W_SCAN_MAX}; mode {n} is out of range",
                zs.len()
            )));
        }
        radius = (radius * 2.0).min(W_SCAN_MAX);
    }
}

/// Upper-half-plane zero n.
pub fn longwave_linear_dispersion(n: usize, b: f64, cfg: &FlowConfig) -> Result<LinearDispersion> {
    longwave_linear_dispersion_half(n, b, cfg, ZeroHalf::Upper)
}

impl LinearDispersion {
    fn g(&self) -> f64 {
        self.cfg.r * self.cfg.r * self.cfg.chi * self.b
    }

    /// The three λ with −ir²χkbλ³/9 = w at wavenumber k.
    pub fn lambdas(&self, k: Complex64) -> [Complex64; 3] {
        let l3 = 9.0 * self.w / (-I * self.g() * k);
        let l = l3.powf(1.0 / 3.0);
        let rot = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        [l, l * rot, l * rot * rot]
    }

    /// Eigenpair at wavenumber k on cube-root branch `branch` (0..3).
    pub fn pair_for_k(&self, k: Complex64, c0: f64, branch: usize) -> Eigenpair {
        let lambda = self.lambdas(k)[branch % 3];
        Eigenpair {
            n: self.n,
            k,
            omega: omega_linear(k, lambda, self.b, c0, self.cfg.chi),
            lambda,
        }
    }

    /// f(−ir²χkbλ³/9) for a pair, i.e. the zero condition recomposed.
    pub fn condition(&self, pair: &Eigenpair) -> Result<Complex64> {
        let l = pair.lambda;
        Ok(dispersion_function(-I * self.g() * pair.k * l * l * l / 9.0)?.0)
    }

    /// The four steady (ω = 0) wavenumbers, sorted by |arg k|.
    pub fn steady_pairs(&self, c0: f64) -> Result<Vec<Eigenpair>> {
        let (g, b, chi) = (self.g(), self.b, self.cfg.chi);
        let w = self.w;
        // c = 0: k⁴ = −9wχ²b²/(8r²)
        let k4 = -9.0 * w * chi * chi * b * b / (8.0 * self.cfg.r * self.cfg.r);
        let k0 = k4.powf(0.25);
        let mut out: Vec<Eigenpair> = Vec::new();
        for j in 0..4 {
            let seed = k0 * I.powu(j);
            let root = newton(
                |k| {
                    let l = (2.0 * I * k / chi - c0) / b;
                    let f = -I * g * k * l * l * l - 9.0 * w;
                    let df = -I * g * (l * l * l + 3.0 * k * l * l * (2.0 * I / (chi * b)));
                    Ok((f, df))
                },
                seed,
                |_| 1e-12 * 9.0 * w.norm(),
                100,
            )?;
            let k = root.root;
            if out.iter().all(|p| (p.k - k).norm() > 1e-8 * k.norm()) {
                out.push(pair_linear(self.n, k, c(0.0, 0.0), b, c0, chi));
            }
        }
        out.sort_by(|a, b| a.k.arg().abs().total_cmp(&b.k.arg().abs()));
        Ok(out)
    }

    /// Steady pair with k closest to the positive real axis.
    pub fn steady_pair(&self, c0: f64) -> Result<Eigenpair> {
        self.steady_pairs(c0)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NoRootFound("no steady wavenumber".into()))
    }
}

// ---------------------------------------------------------------------------
// Ū = δy² + by + c, δ small

/// Shifts larger than this make the Gaussian argument meaningless.
pub const MAX_SHIFT: f64 = 1e6;
/// Default bound on |δ| relative to r²χ|k|.
pub const DELTA_FACTOR: f64 = 0.1;

/// Hermite mode of even order 2m for the weakly quadratic profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticMode {
    pub m: usize,
    pub pair: Eigenpair,
    pub delta: f64,
    pub b: f64,
    pub c: f64,
    pub cfg: FlowConfig,
    pub norm: HermiteNorm,
    /// (ir²χkδ)^{1/4}
    pub scale: Complex64,
}

impl QuadraticMode {
    /// Mode m at wavenumber k. The Weber equation fixes
    /// r√(iχk)·[ω/k + b²/(4δ) − c − 2k/(iχ)]/√δ = 4m + 1, which determines ω.
    pub fn new(
        m: usize,
        k: Complex64,
        delta: f64,
        b: f64,
        c0: f64,
        cfg: FlowConfig,
        norm: HermiteNorm,
    ) -> Result<Self> {
        Self::with_delta_max(
            m,
            k,
            delta,
            b,
            c0,
            cfg,
            norm,
            DELTA_FACTOR * cfg.r * cfg.r * cfg.chi * k.norm(),
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_delta_max(
        m: usize,
        k: Complex64,
        delta: f64,
        b: f64,
        c0: f64,
        cfg: FlowConfig,
        norm: HermiteNorm,
        delta_max: f64,
    ) -> Result<Self> {
        if !(delta > 0.0) {
            return domain(format!("need delta > 0, got {delta}"));
        }
        if delta > delta_max {
            return domain(format!("delta = {delta} exceeds the small-curvature bound {delta_max}"));
        }
        if (b / (2.0 * delta)).abs() > MAX_SHIFT {
            return domain(format!(
                "|b/(2 delta)| = {} exceeds {MAX_SHIFT}",
                (b / (2.0 * delta)).abs()
            ));
        }
        let chi = cfg.chi;
        let scale = (I * cfg.r * cfg.r * chi * k * delta).powf(0.25);
        // λ̃ = Λ·(μδ)^{1/2}/δ with Λ = ω/k + b²/(4δ) − c − 2k/(iχ)
        let big_lambda = (4 * m + 1) as f64 * delta / (scale * scale);
        let omega = k * (big_lambda - b * b / (4.0 * delta) + c0 + 2.0 * k / (I * chi));
        Ok(QuadraticMode {
            m,
            pair: Eigenpair {
                n: m,
                k,
                omega,
                lambda: big_lambda,
            },
            delta,
            b,
            c: c0,
            cfg,
            norm,
            scale,
        })
    }

    /// y + b/(2δ)
    pub fn xi(&self, y: f64) -> f64 {
        y + self.b / (2.0 * self.delta)
    }

    /// Ψ = N·e^{−η²/2}H_{2m}(η), η = (ir²χkδ)^{1/4}(y + b/(2δ)).
    pub fn psi_scaled(&self, y: f64) -> Result<Scaled> {
        if !(y >= 0.0) {
            return domain(format!("long-wave modes live on y >= 0, got {y}"));
        }
        let order = 2 * self.m;
        Ok(hermite_function_scaled(order, self.scale * self.xi(y)).scale(re(self.norm.factor(order))))
    }

    pub fn psi(&self, y: f64) -> Result<Complex64> {
        self.psi_scaled(y)?.value()
    }

    /// Gaussian rate a in e^{−aξ²}: (ir²χkδ)^{1/2}/2.
    pub fn gamma(&self) -> Complex64 {
        0.5 * self.scale * self.scale
    }

    /// φ(y) = ∫ from ξ = 0 of (ξ − t)Ψ dt, the double antiderivative in ξ with
    /// both integration constants zero.
    pub fn phi_quadrature(&self, y: f64, opts: &QuadOptions) -> Result<Complex64> {
        let x = self.xi(y);
        let order = 2 * self.m;
        let nf = re(self.norm.factor(order));
        let psi = |t: f64| Ok((x - t) * hermite_function_scaled(order, self.scale * t).scale(nf).value()?);
        Ok(integrate(psi, 0.0, x, opts)?.value)
    }

    /// Coefficient 2r²k² + ir²χk(Ū − ω/k) of the retained φ_yy term.
    pub fn retained_coefficient(&self, y: f64) -> Complex64 {
        let (r, chi, k) = (self.cfg.r, self.cfg.chi, self.pair.k);
        let u = self.delta * y * y + self.b * y + self.c;
        2.0 * r * r * k * k + I * r * r * chi * k * (u - self.pair.omega / k)
    }

    /// Relative residual of Ψ_yy = [2r²k² + ir²χk(Ū − ω/k)]Ψ.
    pub fn residual(&self, y: f64) -> Result<f64> {
        let h = fd::step_second(1.0 / self.scale.norm());
        let f = |x: f64| self.psi(x);
        let d2 = fd::d2(&f, y, h)?;
        let rhs = self.retained_coefficient(y) * f(y)?;
        let den = d2.norm() + rhs.norm();
        if den == 0.0 {
            return Ok(0.0);
        }
        Ok((d2 - rhs).norm() / den)
    }

    /// sup|ir²χkδ·φ| / sup|coefficient·φ_yy| over `ys`, for m = 0 where φ is
    /// known in closed form.
    pub fn dropped_term_ratio(&self, ys: &[f64]) -> Result<f64> {
        if self.m != 0 {
            return domain("the dropped-term bound uses the closed-form m = 0 mode");
        }
        let (r, chi, k) = (self.cfg.r, self.cfg.chi, self.pair.k);
        let drop = (I * r * r * chi * k * self.delta).norm();
        let (mut num, mut den) = (0.0f64, 0.0f64);
        for &y in ys {
            num = num.max(drop * self.phi0(y)?.norm());
            den = den.max((self.retained_coefficient(y) * self.psi0(y)?).norm());
        }
        Ok(num / den)
    }

    /// Ψ₀ = e^{−aξ²}/(2π^{1/4}), the m = 0 mode with the normalization used
    /// by its closed-form antiderivatives.
    pub fn psi0(&self, y: f64) -> Result<Complex64> {
        let x = self.xi(y);
        Ok((-self.gamma() * x * x).exp() / (2.0 * PI.powf(0.25)))
    }

    /// ∫Ψ₀ = ξ/(2π^{1/4})·₁F₁(1/2; 3/2; −aξ²).
    pub fn phi0_y(&self, y: f64) -> Result<Complex64> {
        let x = self.xi(y);
        Ok(x / (2.0 * PI.powf(0.25)) * pfq(&params(&[0.5], &[1.5]), -self.gamma() * x * x)?)
    }

    /// ∫∫Ψ₀ = ξ²/(4π^{1/4})·₂F₂(1/2, 1; 3/2, 2; −aξ²).
    pub fn phi0(&self, y: f64) -> Result<Complex64> {
        let x = self.xi(y);
        Ok(x * x / (4.0 * PI.powf(0.25)) * pfq(&params(&[0.5, 1.0], &[1.5, 2.0]), -self.gamma() * x * x)?)
    }
}

/// Steady (ω = 0, b = c = 0) wavenumber of mode m: k³ = iχδ(4m + 1)²/(4r²),
/// on the root k = −i|k| where the principal quarter root gives λ̃ = 4m + 1.
pub fn steady_quadratic_k(m: usize, delta: f64, cfg: &FlowConfig) -> Complex64 {
    let q = (4 * m + 1) as f64;
    c(0.0, -(cfg.chi * delta * q * q / (4.0 * cfg.r * cfg.r)).cbrt())
}

/// The printed closed form (√3 + i)/2·(R/4)^{1/3}(2m + 1/4)^{2/3}.
pub fn steady_quadratic_k_printed(m: usize, cfg: &FlowConfig) -> Complex64 {
    c(3f64.sqrt(), 1.0) / 2.0 * (cfg.reynolds / 4.0).cbrt() * (2.0 * m as f64 + 0.25).powf(2.0 / 3.0)
}

/// Ψ_m(y) for the weakly quadratic profile at wavenumber k.
pub fn longwave_quadratic_psi(
    m: usize,
    k: Complex64,
    delta: f64,
    b: f64,
    cfg: &FlowConfig,
    y: f64,
) -> Result<Complex64> {
    QuadraticMode::new(m, k, delta, b, 0.0, *cfg, HermiteNorm::Standard)?.psi(y)
}

// ---------------------------------------------------------------------------
// Antiderivative identities

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// ∫∫ ₀F₁(; 2/3; sy³/9) = (y²/2)·₁F₂(1/3; 4/3, 5/3; sy³/9)
    Double0F1,
    /// ∫∫ y·₀F₁(; 4/3; sy³/9) = (y³/6)·₂F₃(2/3, 1; 4/3, 5/3, 2; sy³/9)
    DoubleWeighted0F1,
    /// ∫ y·₁F₁(1/2; 3/2; sy²) = (y²/2)·₂F₂(1/2, 1; 3/2, 2; sy²)
    Weighted1F1,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

fn nested_opts() -> QuadOptions {
    QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_intervals: 2000,
        max_width: None,
    }
}

/// Both sides of an identity at (y, s); the left side by nested adaptive
/// quadrature from 0 with zero integration constants.
pub fn check_identity(id: Identity, y: f64, s: Complex64) -> Result<IdentityCheck> {
    if !(y >= 0.0 && y.is_finite()) {
        return domain(format!("identity checks need y >= 0, got {y}"));
    }
    let opts = nested_opts();
    let (lhs, rhs) = match id {
        Identity::Double0F1 | Identity::DoubleWeighted0F1 => {
            let (b, pw) = if id == Identity::Double0F1 {
                (2.0 / 3.0, 0)
            } else {
                (4.0 / 3.0, 1)
            };
            let p = params(&[], &[b]);
            let f = |u: f64| Ok(u.powi(pw) * pfq(&p, s * u * u * u / 9.0)?);
            let inner = |t: f64| Ok(integrate(f, 0.0, t, &opts)?.value);
            let lhs = integrate(inner, 0.0, y, &opts)?.value;
            let z = s * y * y * y / 9.0;
            let rhs = if id == Identity::Double0F1 {
                0.5 * y * y * pfq(&params(&[1.0 / 3.0], &[4.0 / 3.0, 5.0 / 3.0]), z)?
            } else {
                y * y * y / 6.0 * pfq(&params(&[2.0 / 3.0, 1.0], &[4.0 / 3.0, 5.0 / 3.0, 2.0]), z)?
            };
            (lhs, rhs)
        }
        Identity::Weighted1F1 => {
            let p = params(&[0.5], &[1.5]);
            let f = |u: f64| Ok(u * pfq(&p, s * u * u)?);
            let lhs = integrate(f, 0.0, y, &opts)?.value;
            let rhs = 0.5 * y * y * pfq(&params(&[0.5, 1.0], &[1.5, 2.0]), s * y * y)?;
            (lhs, rhs)
        }
    };
    let den = lhs.norm().max(rhs.norm());
    let residual = if den == 0.0 { 0.0 } else { (lhs - rhs).norm() / den };
    Ok(IdentityCheck { lhs, rhs, residual })
}

/// Relative residual of an identity at (y, s).
pub fn verify_identity(id: Identity, y: f64, s: Complex64) -> Result<f64> {
    check_identity(id, y, s).map(|c| c.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::linspace;

    fn cfg() -> FlowConfig {
        FlowConfig::from_chi(0.1, 50.0).unwrap()
    }

    #[test]
    fn identities_at_examples() {
        assert!(verify_identity(Identity::Double0F1, 1.0, re(1.0)).unwrap() <= 1e-8);
        let c3 = check_identity(Identity::Weighted1F1, 0.0, re(1.0)).unwrap();
        assert_eq!((c3.lhs.norm(), c3.rhs.norm()), (0.0, 0.0));
        assert!(verify_identity(Identity::DoubleWeighted0F1, 2.0, I).unwrap() <= 1e-8);
    }

    #[test]
    fn unhalved_double_antiderivative_is_off_by_two() {
        let ch = check_identity(Identity::Double0F1, 1.3, c(0.4, -0.7)).unwrap();
        assert!((2.0 * ch.rhs / ch.lhs - 2.0).norm() < 1e-8);
    }

    #[test]
    fn linear_phi_structure() {
        let cf = cfg();
        let pair = pair_linear(1, c(0.8, -0.3), c(0.2, 0.1), 1.0, 0.0, cf.chi);
        let mode = LinearMode::new(pair, 1.0, 0.0, cf).unwrap();
        // a real turning point: φ(λ) = 0 and φ ≈ (y − λ)²/2 next to it
        let k = c(0.8, -0.3);
        let at = Eigenpair {
            n: 1,
            k,
            omega: omega_linear(k, re(0.5), 1.0, 0.0, cf.chi),
            lambda: re(0.5),
        };
        let near = LinearMode::new(at, 1.0, 0.0, cf).unwrap();
        assert_eq!(near.phi(0.5).unwrap().norm(), 0.0);
        let t = 1e-3;
        assert!((near.phi(0.5 + t).unwrap() / (0.5 * t * t) - 1.0).norm() < 1e-6);
        let h = 1e-3;
        for &y in &[0.2, 1.0, 2.5] {
            let f = |x: f64| mode.phi(x);
            let d2 = fd::d2(&f, y, h).unwrap();
            let psi = mode.psi(y).unwrap();
            assert!((d2 - psi).norm() <= 1e-7 * psi.norm(), "y={y}");
            assert!(mode.residual(y).unwrap() < 1e-5, "y={y}");
        }
    }

    #[test]
    fn dispersion_zeros_match_reference() {
        let zs = dispersion_zeros(100.0).unwrap();
        assert_eq!(zs.len(), 3);
        let reference = [
            c(-5.293317933668984, 4.178050623678848),
            c(-30.301155873041356, 11.875909266814134),
        ];
        for (z, r) in zs.iter().zip(&reference) {
            assert!((z - r).norm() < 1e-9 * r.norm(), "{z} vs {r}");
        }
        assert!(zero_count(10.0).unwrap() < zero_count(100.0).unwrap());
    }

    #[test]
    fn steady_pair_roundtrip() {
        let cf = cfg();
        let d = longwave_linear_dispersion(2, 1.5, &cf).unwrap();
        assert!(d.residual <= 1e-10);
        for c0 in [0.0, 0.3] {
            for p in d.steady_pairs(c0).unwrap() {
                assert!(p.omega.norm() == 0.0);
                assert!(d.condition(&p).unwrap().norm() <= 1e-10, "{p:?}");
            }
        }
        let p = d.pair_for_k(c(0.7, 0.2), 0.1, 1);
        assert!(d.condition(&p).unwrap().norm() <= 1e-10);
        let back = lambda_linear(p.k, p.omega, 1.5, 0.1, cf.chi);
        assert!((back - p.lambda).norm() < 1e-12 * p.lambda.norm());
    }

    #[test]
    fn quadratic_mode_examples() {
        let cf = FlowConfig::from_chi(0.2, 20.0).unwrap();
        let delta = 0.02;
        for m in 0..3 {
            let k = steady_quadratic_k(m, delta, &cf);
            let mode = QuadraticMode::new(m, k, delta, 0.0, 0.0, cf, HermiteNorm::Standard).unwrap();
            assert!(mode.pair.omega.norm() < 1e-12 * k.norm(), "steady root must give ω = 0");
            for &y in &[0.3, 1.0, 2.0] {
                assert!(mode.residual(y).unwrap() < 1e-6, "m={m} y={y}");
            }
        }
        let k = steady_quadratic_k(0, delta, &cf);
        let m0 = QuadraticMode::new(0, k, delta, 0.01, 0.0, cf, HermiteNorm::Standard).unwrap();
        let opts = QuadOptions {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            ..QuadOptions::default()
        };
        for &y in &[0.2, 0.9, 2.0] {
            // antiderivatives in ξ = y + b/(2δ) taken from ξ = 0
            let x = m0.xi(y);
            let shift = m0.b / (2.0 * m0.delta);
            let psi0 = |t: f64| m0.psi0(t - shift);
            let num = integrate(psi0, 0.0, x, &opts).unwrap().value;
            assert!((num - m0.phi0_y(y).unwrap()).norm() <= 1e-8 * num.norm());
            let inner = |s: f64| Ok(integrate(psi0, 0.0, s, &opts)?.value);
            let dbl = integrate(inner, 0.0, x, &opts).unwrap().value;
            assert!((dbl - m0.phi0(y).unwrap()).norm() <= 1e-7 * dbl.norm());
            let q = m0.phi_quadrature(y, &opts).unwrap();
            let closed = m0.phi0(y).unwrap() * 2.0 * PI.powf(0.25) * m0.norm.factor(0);
            assert!((q - closed).norm() <= 1e-8 * closed.norm());
        }
        assert!(QuadraticMode::new(0, k, 1e-9, 1.0, 0.0, cf, HermiteNorm::Standard).is_err());
    }

    #[test]
    fn dropped_term_ratio_depends_on_eta_reach() {
        let ys = linspace(0.0, 10.0, 101);
        let ratio = |r: f64, chi: f64, delta: f64| {
            let cf = FlowConfig::from_chi(r, chi).unwrap();
            let k = steady_quadratic_k(0, delta, &cf);
            let mode = QuadraticMode::new(0, k, delta, 0.0, 0.0, cf, HermiteNorm::Standard).unwrap();
            (mode.dropped_term_ratio(&ys).unwrap(), mode.scale.norm() * 10.0)
        };
        // grid reaching η ≈ 0.04: the dropped term is negligible
        let (small, reach) = ratio(0.01, 100.0, 1e-7);
        assert!(reach < 0.05 && small <= 0.01, "{small} {reach}");
        // grid reaching η ≈ 3: it is not, however small δ is
        let (large, reach) = ratio(0.05, 400.0, 0.0025);
        assert!(reach > 1.0 && large > 0.1, "{large} {reach}");
    }
}
