//! Short-wave limit: the (P, Q) splitting of the Orr–Sommerfeld operator, WKB
//! quantization, dispersion relations and steady eigenvalues.
//!
//! Fractional powers of complex numbers use the principal branch. The closed
//! forms for steady roots are only used as seeds and diagnostics; the Newton
//! root of the dispersion function is authoritative.

use crate::error::{domain, Error, Result};
use crate::meanflow::{FlowConfig, MeanProfile};
use crate::quad::{integrate, QuadOptions};
use crate::roots::newton;
use crate::{c, re, I};
use num_complex::Complex64;
use std::f64::consts::PI;

/// λ(k, ω) = (iχω − k²)/(iχk).
pub fn lambda_of(k: Complex64, omega: Complex64, chi: f64) -> Complex64 {
    (I * chi * omega - k * k) / (I * chi * k)
}

/// Inverse of [`lambda_of`]: ω = kλ − ik²/χ.
pub fn omega_of(k: Complex64, lambda: Complex64, chi: f64) -> Complex64 {
    k * lambda - I * k * k / chi
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenpair {
    pub n: usize,
    pub k: Complex64,
    pub omega: Complex64,
    pub lambda: Complex64,
}

impl Eigenpair {
    pub fn new(n: usize, k: Complex64, omega: Complex64, chi: f64) -> Self {
        Eigenpair {
            n,
            k,
            omega,
            lambda: lambda_of(k, omega, chi),
        }
    }

    pub fn from_lambda(n: usize, k: Complex64, lambda: Complex64, chi: f64) -> Self {
        Eigenpair {
            n,
            k,
            omega: omega_of(k, lambda, chi),
            lambda,
        }
    }
}

/// P = −r²k² and Q(y) = ir²χk(λ − Ū(y)) for a given (k, ω).
#[derive(Clone, Copy, Debug)]
pub struct FactorizedSystem {
    pub p: Complex64,
    pub k: Complex64,
    pub omega: Complex64,
    pub lambda: Complex64,
    pub cfg: FlowConfig,
    pub profile: MeanProfile,
}

impl FactorizedSystem {
    pub fn new(k: Complex64, omega: Complex64, cfg: FlowConfig, profile: MeanProfile) -> Result<Self> {
        if k.norm() == 0.0 {
            return domain("k = 0 has no factorization");
        }
        Ok(FactorizedSystem {
            p: -cfg.r * cfg.r * k * k,
            k,
            omega,
            lambda: lambda_of(k, omega, cfg.chi),
            cfg,
            profile,
        })
    }

    pub fn q(&self, y: f64) -> Result<Complex64> {
        let (u, _) = self.profile.eval(y)?;
        Ok(I * self.cfg.r * self.cfg.r * self.cfg.chi * self.k * (self.lambda - u))
    }

    /// −[2r²k² + iRk(Ū − ω/k)], the sum P + Q should equal.
    pub fn p_plus_q_direct(&self, y: f64) -> Result<Complex64> {
        let (u, _) = self.profile.eval(y)?;
        let (r, k) = (self.cfg.r, self.k);
        Ok(-(2.0 * r * r * k * k + I * self.cfg.reynolds * k * (u - self.omega / k)))
    }
}

/// Principal-branch complex power of a real base that may be negative.
fn rpow(x: f64, p: f64) -> Complex64 {
    re(x).powf(p)
}

fn check_mode(n: usize) {
    if n == 0 {
        log::warn!("mode n = 0 makes n - 1/4 negative; the principal branch is used");
    }
}

fn nq(n: usize) -> f64 {
    n as f64 - 0.25
}

// ---------------------------------------------------------------- WKB

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantization {
    pub integral: Complex64,
    /// Nearest n with (n − 1/4)π/r closest to the integral.
    pub n: i64,
    pub residual: Complex64,
    pub error: f64,
}

/// ∫√(E − V(y)) dy along the straight path from `a` to `b` in the complex
/// plane. The substitution y = a + (b − a) sin²θ absorbs square-root zeros at
/// both ends.
pub fn phase_integral<V>(e: Complex64, v: V, a: Complex64, b: Complex64) -> Result<(Complex64, f64)>
where
    V: Fn(Complex64) -> Result<Complex64>,
{
    let d = b - a;
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        ..QuadOptions::default()
    };
    let q = integrate(
        |t| {
            let (s, cth) = t.sin_cos();
            let y = a + d * (s * s);
            Ok((e - v(y)?).sqrt() * d * (2.0 * s * cth))
        },
        0.0,
        PI / 2.0,
        &opts,
    )?;
    Ok((q.value, q.error))
}

/// ∫√(E − V) between real turning points, and its distance from the nearest
/// quantized value (n − 1/4)π/r.
pub fn wkb_quantization<V>(e: Complex64, v: V, turning_points: (f64, f64), r: f64) -> Result<Quantization>
where
    V: Fn(f64) -> Result<Complex64>,
{
    if !(r > 0.0) {
        return domain(format!("aspect ratio must be positive, got {r}"));
    }
    let (a, b) = turning_points;
    let (integral, error) = phase_integral(e, |y| v(y.re), re(a), re(b))?;
    let unit = PI / r;
    let n = (integral.re / unit + 0.25).round() as i64;
    Ok(Quantization {
        integral,
        n,
        residual: integral - (n as f64 - 0.25) * unit,
        error,
    })
}

/// Exact and WKB eigenvalues of ε²u'' = (y − E)u on [0, ∞) with u(0) = 0:
/// returns (E_WKB, E_exact) with E_exact = ε^{2/3}|a_n|.
pub fn airy_surrogate_eigenvalues(n: usize, eps: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return domain("surrogate modes are numbered from 1");
    }
    let wkb = (1.5 * PI * nq(n) * eps).powf(2.0 / 3.0);
    let exact = eps.powf(2.0 / 3.0) * crate::specfun::airy_zero(n)?.abs();
    Ok((wkb, exact))
}

// ---------------------------------------------------------------- linear Ū

/// (3b/(2√(iχ))) and ((n − 1/4)π/r)^{2/3}, the constants of the linear relation.
fn linear_consts(n: usize, b: f64, cfg: &FlowConfig) -> (Complex64, Complex64) {
    let g = 3.0 * b / (2.0 * (I * cfg.chi).sqrt());
    let cn = rpow(nq(n) * PI / cfg.r, 2.0 / 3.0);
    (g, cn)
}

/// ω_n(k) for Ū = by + c.
pub fn dispersion_linear(n: usize, k: Complex64, b: f64, c0: f64, cfg: &FlowConfig) -> Result<Complex64> {
    if k.norm() == 0.0 || b == 0.0 {
        return domain("dispersion_linear needs k != 0 and b != 0");
    }
    check_mode(n);
    let (g, cn) = linear_consts(n, b, cfg);
    Ok(-I * k * k / cfg.chi + c0 * k + (g * k).powf(2.0 / 3.0) * cn)
}

/// F(k) = ik²/χ − ck − (3bk/(2√(iχ)))^{2/3}((n − 1/4)π/r)^{2/3} and F'(k).
pub fn steady_linear_function(n: usize, k: Complex64, b: f64, c0: f64, cfg: &FlowConfig) -> (Complex64, Complex64) {
    let (g, cn) = linear_consts(n, b, cfg);
    let x = g * k;
    let f = I * k * k / cfg.chi - c0 * k - x.powf(2.0 / 3.0) * cn;
    let df = 2.0 * I * k / cfg.chi - c0 - (2.0 / 3.0) * g * x.powf(-1.0 / 3.0) * cn;
    (f, df)
}

/// |k| of the steady root for c = 0: (3|b|χ(n − 1/4)π/(2r))^{1/2}.
pub fn steady_linear_modulus(n: usize, b: f64, cfg: &FlowConfig) -> f64 {
    (3.0 * b.abs() * cfg.chi * nq(n).abs() * PI / (2.0 * cfg.r)).sqrt()
}

/// The printed closed form ∓(1+i)(√2/2)(3χ/(2r))^{1/2}(n − 1/4)^{1/2}π^{1/2},
/// upper sign first.
pub fn steady_linear_printed(n: usize, cfg: &FlowConfig) -> [Complex64; 2] {
    let m = (1.5 * cfg.chi / cfg.r).sqrt() * rpow(nq(n), 0.5) * PI.sqrt();
    let f = c(1.0, 1.0) * (2f64.sqrt() / 2.0) * m;
    [-f, f]
}

/// λ(k, ω) of a steady pair: ω = 0 gives λ = ik/χ.
fn steady_pair(n: usize, k: Complex64, cfg: &FlowConfig) -> Eigenpair {
    Eigenpair::new(n, k, c(0.0, 0.0), cfg.chi)
}

/// Relative mismatch of the linear quantization integral, evaluated along the
/// straight path 0 → (λ − c)/b, against (n − 1/4)π/(r√(iχk)).
pub fn quantization_check_linear(pair: &Eigenpair, b: f64, c0: f64, cfg: &FlowConfig) -> Result<f64> {
    let lam = pair.lambda;
    let top = (lam - c0) / b;
    let (val, _) = phase_integral(lam, |y| Ok(b * y + c0), c(0.0, 0.0), top)?;
    let rhs = nq(pair.n) * PI / (cfg.r * (I * cfg.chi * pair.k).sqrt());
    Ok((val - rhs).norm() / rhs.norm())
}

/// Relative mismatch of the quadratic quantization integral along the straight
/// path from the vertex −b/(2a) to the turning point −b/(2a) + √Λ.
pub fn quantization_check_quadratic(pair: &Eigenpair, a: f64, b: f64, c0: f64, cfg: &FlowConfig) -> Result<f64> {
    let lam = pair.lambda;
    let big = (lam + b * b / (4.0 * a) - c0) / a;
    let v0 = re(-b / (2.0 * a));
    let (val, _) = phase_integral(lam, |y| Ok(a * y * y + b * y + c0), v0, v0 + big.sqrt())?;
    let rhs = nq(pair.n) * PI / (cfg.r * (I * cfg.chi * pair.k).sqrt());
    Ok((val - rhs).norm() / rhs.norm())
}

/// A converged steady root with its diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyRoot {
    pub pair: Eigenpair,
    /// |F(k)| at the root.
    pub residual: f64,
    /// Convergence threshold 1e-12·(1 + |k|²/χ).
    pub tolerance: f64,
    /// Relative quantization mismatch (see the `quantization_check_*` functions).
    pub quantization: f64,
    /// k divided by the printed closed form (upper sign), a unit-modulus factor
    /// when the moduli agree.
    pub branch_factor: Complex64,
    pub iterations: usize,
}

const SEED_RAYS: [f64; 8] = [-0.5, 0.25, -0.25, 0.75, 1.0, 0.5, -0.75, 0.0];

fn collect_roots<F, Q>(modulus: f64, mut f: F, check: Q, chi: f64) -> Result<Vec<(Complex64, f64, usize, f64)>>
where
    F: FnMut(Complex64) -> (Complex64, Complex64),
    Q: Fn(Complex64) -> Result<f64>,
{
    let tol = |k: Complex64| 1e-12 * (1.0 + k.norm_sqr() / chi);
    let mut found: Vec<(Complex64, f64, usize, f64)> = Vec::new();
    let mut last_err = None;
    for ray in SEED_RAYS {
        // small positive real offset keeps seeds off the negative-axis cut
        let seed = Complex64::from_polar(modulus, ray * PI) + modulus * 1e-3;
        match newton(|k| Ok(f(k)), seed, tol, 100) {
            Ok(rt) => {
                if found.iter().any(|(k, ..)| (*k - rt.root).norm() <= 1e-8 * modulus) {
                    continue;
                }
                let q = check(rt.root).unwrap_or(f64::INFINITY);
                found.push((rt.root, rt.residual, rt.iterations, q));
            }
            Err(e) => last_err = Some(e),
        }
    }
    if found.is_empty() {
        return Err(last_err.unwrap_or_else(|| Error::NoRootFound("no seed converged".into())));
    }
    Ok(found)
}

/// Picks the root that passes the branch-free quantization check, closest to
/// arg k = −π/2 (real λ, decaying mode) among those.
fn pick(found: &[(Complex64, f64, usize, f64)]) -> (Complex64, f64, usize, f64) {
    let key = |k: &Complex64| (k.arg() + PI / 2.0).abs();
    let ok: Vec<_> = found.iter().filter(|r| r.3 <= 1e-8).collect();
    let pool: Vec<_> = if ok.is_empty() { found.iter().collect() } else { ok };
    **pool
        .iter()
        .min_by(|a, b| key(&a.0).total_cmp(&key(&b.0)))
        .expect("non-empty")
}

/// Steady (ω = 0) eigenvalue k_n for Ū = by + c.
pub fn steady_eigen_linear(n: usize, b: f64, c0: f64, cfg: &FlowConfig) -> Result<SteadyRoot> {
    if b == 0.0 {
        return domain("linear profile needs b != 0 (no turning point otherwise)");
    }
    check_mode(n);
    let modulus = steady_linear_modulus(n, b, cfg).max(c0.abs() * cfg.chi).max(1e-8);
    let found = collect_roots(
        modulus,
        |k| steady_linear_function(n, k, b, c0, cfg),
        |k| quantization_check_linear(&steady_pair(n, k, cfg), b, c0, cfg),
        cfg.chi,
    )?;
    let (k, residual, iterations, quantization) = pick(&found);
    Ok(SteadyRoot {
        pair: steady_pair(n, k, cfg),
        residual,
        tolerance: 1e-12 * (1.0 + k.norm_sqr() / cfg.chi),
        quantization,
        branch_factor: k / steady_linear_printed(n, cfg)[1],
        iterations,
    })
}

/// Steady linear pair for which the Airy argument at the wall is exactly the
/// n-th Airy zero, so Ψ(0) = 0 holds to rounding. Seeded from the WKB root.
pub fn steady_eigen_linear_exact(n: usize, b: f64, c0: f64, cfg: &FlowConfig) -> Result<Eigenpair> {
    let seed = steady_eigen_linear(n, b, c0, cfg)?.pair.k;
    let an = crate::specfun::airy_zero(n)?;
    let r2chi = cfg.r * cfg.r * cfg.chi;
    // G(k) = β(k)(λ(k) − c)/b + a_n with β = (ir²χkb)^{1/3}, λ = ik/χ
    let g = |k: Complex64| {
        let beta = (I * r2chi * k * b).powf(1.0 / 3.0);
        let lt = (I * k / cfg.chi - c0) / b;
        let val = beta * lt + an;
        let dval = beta / (3.0 * k) * lt + beta * I / (cfg.chi * b);
        Ok((val, dval))
    };
    let rt = newton(g, seed, |_| 1e-13 * an.abs(), 100)?;
    Ok(steady_pair(n, rt.root, cfg))
}

// ---------------------------------------------------------------- quadratic Ū

fn quad_check(a: f64) -> Result<()> {
    if !(a > 0.0) {
        return domain(format!("quadratic profile needs a > 0, got {a}"));
    }
    Ok(())
}

/// ω_n(k) for Ū = ay² + by + c, written with k√(a/(iχk)) so the principal
/// branch does not sit on the cut for the steady root.
pub fn dispersion_quadratic(n: usize, k: Complex64, a: f64, b: f64, c0: f64, cfg: &FlowConfig) -> Result<Complex64> {
    quad_check(a)?;
    if k.norm() == 0.0 {
        return domain("dispersion_quadratic needs k != 0");
    }
    check_mode(n);
    let s = (a / (I * cfg.chi * k)).sqrt();
    Ok(-I * k * k / cfg.chi - k * (b * b / (4.0 * a) - c0) + 4.0 * k / cfg.r * s * nq(n))
}

/// The printed form with √(ak/(iχ)).
pub fn dispersion_quadratic_printed(
    n: usize,
    k: Complex64,
    a: f64,
    b: f64,
    c0: f64,
    cfg: &FlowConfig,
) -> Result<Complex64> {
    quad_check(a)?;
    Ok(-I * k * k / cfg.chi - k * (b * b / (4.0 * a) - c0) + 4.0 / cfg.r * (a * k / (I * cfg.chi)).sqrt() * nq(n))
}

/// F_q(k) = −ω_n(k) and its derivative.
pub fn steady_quadratic_function(
    n: usize,
    k: Complex64,
    a: f64,
    b: f64,
    c0: f64,
    cfg: &FlowConfig,
) -> (Complex64, Complex64) {
    let s = (a / (I * cfg.chi * k)).sqrt();
    let shift = b * b / (4.0 * a) - c0;
    let f = I * k * k / cfg.chi + k * shift - 4.0 * k / cfg.r * s * nq(n);
    let df = 2.0 * I * k / cfg.chi + shift - 2.0 / cfg.r * s * nq(n);
    (f, df)
}

/// |k| of the steady root for b = c = 0: 2(2χ/r²)^{1/3}(n − 1/4)^{2/3}a^{1/3}.
pub fn steady_quadratic_modulus(n: usize, a: f64, cfg: &FlowConfig) -> f64 {
    2.0 * (2.0 * cfg.chi / (cfg.r * cfg.r)).cbrt() * nq(n).abs().powf(2.0 / 3.0) * a.cbrt()
}

/// The printed closed form (√3 + i)(2χ/r²)^{1/3}(n − 1/4)^{2/3}.
pub fn steady_quadratic_printed(n: usize, cfg: &FlowConfig) -> Complex64 {
    c(3f64.sqrt(), 1.0) * (2.0 * cfg.chi / (cfg.r * cfg.r)).cbrt() * rpow(nq(n), 2.0 / 3.0)
}

/// The same closed form indexed by odd Hermite order, (2m + 3/4)^{2/3}, i.e.
/// n = 2m + 1.
pub fn steady_quadratic_printed_odd(m: usize, cfg: &FlowConfig) -> Complex64 {
    steady_quadratic_printed(2 * m + 1, cfg)
}

/// Steady (ω = 0) eigenvalue k_n for Ū = ay² + by + c.
pub fn steady_eigen_quadratic(n: usize, a: f64, b: f64, c0: f64, cfg: &FlowConfig) -> Result<SteadyRoot> {
    quad_check(a)?;
    check_mode(n);
    let shift = (b * b / (4.0 * a) - c0).abs() * cfg.chi;
    let modulus = steady_quadratic_modulus(n, a, cfg).max(shift).max(1e-8);
    let found = collect_roots(
        modulus,
        |k| steady_quadratic_function(n, k, a, b, c0, cfg),
        |k| quantization_check_quadratic(&steady_pair(n, k, cfg), a, b, c0, cfg),
        cfg.chi,
    )?;
    let (k, residual, iterations, quantization) = pick(&found);
    Ok(SteadyRoot {
        pair: steady_pair(n, k, cfg),
        residual,
        tolerance: 1e-12 * (1.0 + k.norm_sqr() / cfg.chi),
        quantization,
        branch_factor: k / steady_quadratic_printed(n, cfg),
        iterations,
    })
}

// ---------------------------------------------------------------- wake

/// Pöschl–Teller data of the sech² well for wavenumber k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WakeMode {
    pub n: usize,
    /// s = √(−ir²kχU₀/w² + 1/4)
    pub s: Complex64,
    /// ϑ_n = −(n + 1/2) + s; the mode decays only when Re ϑ_n > 0.
    pub vartheta: Complex64,
    pub omega: Complex64,
    pub lambda: Complex64,
}

impl WakeMode {
    pub fn decays(&self) -> bool {
        self.vartheta.re > 0.0
    }
}

fn wake_s(k: Complex64, u0: f64, w: f64, cfg: &FlowConfig) -> Complex64 {
    (-I * cfg.r * cfg.r * k * cfg.chi * u0 / (w * w) + 0.25).sqrt()
}

fn wake_check(k: Complex64, u0: f64, w: f64) -> Result<()> {
    if k.norm() == 0.0 {
        return domain("wake dispersion needs k != 0");
    }
    if !(u0 > 0.0 && w > 0.0) {
        return domain("wake needs U0 > 0 and w > 0");
    }
    Ok(())
}

/// Wake eigenvalue from the bound states of the sech² well:
/// ir²χkλ = −w²ϑ_n², so λ = iw²ϑ_n²/(r²χk) and ω = kλ − ik²/χ.
pub fn wake_dispersion(n: usize, k: Complex64, u0: f64, w: f64, cfg: &FlowConfig) -> Result<WakeMode> {
    wake_check(k, u0, w)?;
    let s = wake_s(k, u0, w, cfg);
    let vartheta = s - (n as f64 + 0.5);
    let lambda = I * w * w * vartheta * vartheta / (cfg.r * cfg.r * cfg.chi * k);
    let m = WakeMode {
        n,
        s,
        vartheta,
        omega: omega_of(k, lambda, cfg.chi),
        lambda,
    };
    if !m.decays() {
        log::warn!("wake mode n = {n} at k = {k} has Re(vartheta) <= 0 and does not decay");
    }
    Ok(m)
}

/// The printed relation λ = w²ϑ_n, ω = −ik²/χ + kw²ϑ_n.
pub fn wake_dispersion_printed(n: usize, k: Complex64, u0: f64, w: f64, cfg: &FlowConfig) -> Result<WakeMode> {
    wake_check(k, u0, w)?;
    let s = wake_s(k, u0, w, cfg);
    let vartheta = s - (n as f64 + 0.5);
    let lambda = w * w * vartheta;
    Ok(WakeMode {
        n,
        s,
        vartheta,
        omega: omega_of(k, lambda, cfg.chi),
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(r: f64, chi: f64) -> FlowConfig {
        FlowConfig::from_chi(r, chi).unwrap()
    }

    #[test]
    fn lambda_round_trip() {
        let (k, w) = (c(0.7, -1.2), c(-0.3, 2.0));
        let l = lambda_of(k, w, 37.0);
        assert!((omega_of(k, l, 37.0) - w).norm() < 1e-14);
    }

    #[test]
    fn quantization_examples() {
        let q = wkb_quantization(re(1.0), |y| Ok(re(y)), (0.0, 1.0), 1.0).unwrap();
        assert!((q.integral.re - 2.0 / 3.0).abs() < 1e-13);
        let q = wkb_quantization(re(1.0), |y| Ok(re(y * y)), (0.0, 1.0), 1.0).unwrap();
        assert!((q.integral.re - PI / 4.0).abs() < 1e-13);
    }

    #[test]
    fn quantization_of_closed_form_is_exact() {
        // E from (2/3)E^{3/2} = (n − 1/4)π/r for V = y
        let (n, r) = (5usize, 10.0);
        let e = (1.5 * nq(n) * PI / r).powf(2.0 / 3.0);
        let q = wkb_quantization(re(e), |y| Ok(re(y)), (0.0, e), r).unwrap();
        assert_eq!(q.n, 5);
        assert!(q.residual.norm() <= 1e-8);
    }

    #[test]
    fn linear_steady_root() {
        let cf = cfg(10.0, 1000.0);
        let rt = steady_eigen_linear(5, 1.0, 0.0, &cf).unwrap();
        assert!(rt.residual <= rt.tolerance);
        let m = steady_linear_modulus(5, 1.0, &cf);
        assert!((rt.pair.k.norm() - m).abs() <= 1e-10 * m);
        assert!(rt.quantization <= 1e-8);
        assert!((rt.pair.k.arg() + PI / 2.0).abs() < 1e-10);
        assert!(rt.pair.omega.norm() < 1e-8);
        let w = dispersion_linear(5, rt.pair.k, 1.0, 0.0, &cf).unwrap();
        assert!(w.norm() <= 1e-8);
        assert!((rt.branch_factor.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn linear_c_shift_is_affine() {
        let cf = cfg(10.0, 1000.0);
        let k = c(1.3, -0.4);
        let a = dispersion_linear(3, k, 1.0, 0.0, &cf).unwrap();
        let b = dispersion_linear(3, k, 1.0, 0.25, &cf).unwrap();
        assert!((b - a - 0.25 * k).norm() < 1e-13);
    }

    #[test]
    fn quadratic_steady_root() {
        let cf = cfg(10.0, 1000.0);
        let rt = steady_eigen_quadratic(3, 1.0, 0.0, 0.0, &cf).unwrap();
        assert!(rt.residual <= rt.tolerance);
        let m = steady_quadratic_modulus(3, 1.0, &cf);
        assert!((rt.pair.k.norm() - m).abs() <= 1e-10 * m);
        assert!(rt.quantization <= 1e-8);
        let w = dispersion_quadratic(3, rt.pair.k, 1.0, 0.0, 0.0, &cf).unwrap();
        assert!(w.norm() < 1e-8);
        assert!(steady_eigen_quadratic(3, -1.0, 0.0, 0.0, &cf).is_err());
    }

    #[test]
    fn exact_airy_pair_puts_a_zero_at_the_wall() {
        let cf = cfg(10.0, 1000.0);
        let p = steady_eigen_linear_exact(5, 1.0, 0.0, &cf).unwrap();
        let beta = (I * cf.r * cf.r * cf.chi * p.k).powf(1.0 / 3.0);
        let eta0 = -beta * p.lambda;
        assert!((eta0 - crate::specfun::airy_zero(5).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn wake_limits() {
        let cf = cfg(10.0, 10.0);
        let k = c(1.0, 0.0);
        // U0 → 0: printed ω → −ik²/χ − k w² n
        let m = wake_dispersion_printed(2, k, 1e-14, 1.0, &cf).unwrap();
        assert!((m.omega - (-I * k * k / cf.chi - k * 2.0)).norm() < 1e-10);
        let m = wake_dispersion_printed(0, k, 1.0, 1.0, &cf).unwrap();
        assert!((lambda_of(k, m.omega, cf.chi) - m.lambda).norm() < 1e-12 * m.lambda.norm());
        let m = wake_dispersion(0, k, 1.0, 1.0, &cf).unwrap();
        assert!(m.decays());
        assert!((lambda_of(k, m.omega, cf.chi) - m.lambda).norm() < 1e-12 * m.lambda.norm());
    }
}
