//! Closed-form solutions Ψ_n of Ψ'' + Q(y)Ψ = 0 for the three mean profiles:
//! Airy (linear Ū), Gaussian-weighted Hermite (quadratic Ū) and a terminating
//! Gauss hypergeometric series (sech² wake).
//!
//! Modes are unnormalized unless a Hermite normalization is requested.

use crate::error::{domain, Result};
use crate::fd;
use crate::meanflow::{FlowConfig, MeanProfile};
use crate::shortwave::{Eigenpair, WakeMode};
use crate::specfun::{
    airy_ai_scaled, hermite_function_scaled, hermite_norm_printed, hermite_norm_standard, pfq, HypergeometricParams,
    Scaled,
};
use crate::{c, re, I};
use num_complex::Complex64;

/// Default for the boundary checks, relative to max|Ψ|.
pub const BOUNDARY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermiteNorm {
    /// No prefactor.
    None,
    /// 1/(π^{1/4}√(2ⁿn!)), unit L² norm in η.
    Standard,
    /// 1/(π^{1/4}√(2ⁿ·2!)) as printed next to the odd modes.
    Printed,
}

impl HermiteNorm {
    pub fn factor(self, order: usize) -> f64 {
        match self {
            HermiteNorm::None => 1.0,
            HermiteNorm::Standard => hermite_norm_standard(order),
            HermiteNorm::Printed => hermite_norm_printed(order),
        }
    }
}

/// Argument of the wake's ₂F₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WakeArgument {
    /// σ = (1 − tanh wy)/2, which maps the line onto (0, 1).
    Half,
    /// σ = 1 − tanh wy as printed; it does not solve the wake equation and is
    /// kept only to demonstrate that.
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PsiKind {
    Airy,
    /// e^{−η²/2} H_order(η)
    Hermite {
        order: usize,
        norm: HermiteNorm,
    },
    /// cosh^{−ϑ}(wy) ₂F₁(2s − n, −n; 1 + ϑ; σ)
    Hypergeometric2F1 {
        s: Complex64,
        vartheta: Complex64,
        argument: WakeArgument,
    },
}

/// A Ψ mode: Ψ(y) = f(scale·(y − shift)) for the Airy and Hermite kinds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiMode {
    pub profile: MeanProfile,
    pub pair: Eigenpair,
    pub cfg: FlowConfig,
    pub kind: PsiKind,
    pub scale: Complex64,
    pub shift: Complex64,
}

impl PsiMode {
    /// Ai[(ir²χkb)^{1/3}(y − λ̃)] with λ̃ = (λ − c)/b, the turning point.
    pub fn linear(pair: Eigenpair, b: f64, c0: f64, cfg: FlowConfig) -> Result<Self> {
        if b == 0.0 {
            return domain("linear mode needs b != 0");
        }
        Ok(PsiMode {
            profile: MeanProfile::Linear { b, c: c0 },
            pair,
            cfg,
            kind: PsiKind::Airy,
            scale: (I * cfg.r * cfg.r * cfg.chi * pair.k * b).powf(1.0 / 3.0),
            shift: (pair.lambda - c0) / b,
        })
    }

    /// e^{−η²/2}H_{2m+1}(η), η = (ir²χka)^{1/4}(y + b/(2a)). The ODE holds when
    /// the pair's λ̃ equals 4m + 3, i.e. the pair of mode n = m + 1.
    pub fn quadratic(
        m: usize,
        pair: Eigenpair,
        a: f64,
        b: f64,
        c0: f64,
        cfg: FlowConfig,
        norm: HermiteNorm,
    ) -> Result<Self> {
        if !(a > 0.0) {
            return domain("quadratic mode needs a > 0");
        }
        Ok(PsiMode {
            profile: MeanProfile::Quadratic { a, b, c: c0 },
            pair,
            cfg,
            kind: PsiKind::Hermite { order: 2 * m + 1, norm },
            scale: (I * cfg.r * cfg.r * cfg.chi * pair.k * a).powf(0.25),
            shift: re(-b / (2.0 * a)),
        })
    }

    /// Pöschl–Teller bound state of the sech² well.
    pub fn wake(
        mode: &WakeMode,
        k: Complex64,
        u0: f64,
        w: f64,
        cfg: FlowConfig,
        argument: WakeArgument,
    ) -> Result<Self> {
        let one_plus = 1.0 + mode.vartheta;
        if one_plus.im == 0.0 && one_plus.re <= 0.0 && one_plus.re == one_plus.re.round() {
            return domain(format!("1 + vartheta = {one_plus} is a non-positive integer"));
        }
        Ok(PsiMode {
            profile: MeanProfile::Sech2 { u0, w },
            pair: Eigenpair::from_lambda(mode.n, k, mode.lambda, cfg.chi),
            cfg,
            kind: PsiKind::Hypergeometric2F1 {
                s: mode.s,
                vartheta: mode.vartheta,
                argument,
            },
            scale: re(w),
            shift: c(0.0, 0.0),
        })
    }

    /// Q(y) = ir²χk(λ − Ū(y)).
    pub fn q(&self, y: f64) -> Result<Complex64> {
        let (u, _) = self.profile.eval(y)?;
        let cf = &self.cfg;
        Ok(I * cf.r * cf.r * cf.chi * self.pair.k * (self.pair.lambda - u))
    }

    /// Ψ(y) as mantissa·exp(exponent).
    pub fn eval_scaled(&self, y: f64) -> Result<Scaled> {
        match self.kind {
            PsiKind::Airy => airy_ai_scaled(self.scale * (y - self.shift)),
            PsiKind::Hermite { order, norm } => {
                let eta = self.scale * (y - self.shift);
                Ok(hermite_function_scaled(order, eta).scale(re(norm.factor(order))))
            }
            PsiKind::Hypergeometric2F1 { s, vartheta, argument } => {
                let x = self.scale.re * y;
                let t = x.tanh();
                let sigma = match argument {
                    WakeArgument::Half => 0.5 * (1.0 - t),
                    WakeArgument::Printed => 1.0 - t,
                };
                let n = self.pair.n as f64;
                let p = HypergeometricParams::new(vec![2.0 * s - n, re(-n)], vec![1.0 + vartheta])?;
                let f = pfq(&p, re(sigma))?;
                // ln cosh x without overflow
                let ax = x.abs();
                let lncosh = ax + (-2.0 * ax).exp().ln_1p() - std::f64::consts::LN_2;
                Ok(Scaled::new(f, -vartheta * lncosh))
            }
        }
    }

    pub fn eval(&self, y: f64) -> Result<Complex64> {
        self.eval_scaled(y)?.value()
    }

    /// Local inverse length used to pick finite-difference steps.
    pub fn rate(&self, y: f64) -> f64 {
        let q = self.q(y).map(|q| q.norm().sqrt()).unwrap_or(0.0);
        let base = match self.kind {
            PsiKind::Airy => self.scale.norm(),
            PsiKind::Hermite { order, .. } => {
                let eta = (self.scale * (y - self.shift)).norm();
                self.scale.norm() * (1.0 + eta + (order as f64).sqrt())
            }
            PsiKind::Hypergeometric2F1 { vartheta, s, .. } => self.scale.re * (1.0 + vartheta.norm() + s.norm()),
        };
        base.max(q)
    }

    /// max over `ys` of the relative residual of Ψ'' + QΨ = 0.
    pub fn ode_residual(&self, ys: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &y in ys {
            let r = second_order_residual(|x| self.eval_scaled(x), self.q(y)?, y, self.rate(y))?;
            worst = worst.max(r);
        }
        Ok(worst)
    }

    /// |Ψ(0)| / max|Ψ| over `ys` (which should include 0).
    pub fn wall_ratio(&self, ys: &[f64]) -> Result<f64> {
        let vals = ys.iter().map(|&y| self.eval(y)).collect::<Result<Vec<_>>>()?;
        let max = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Ok(self.eval(0.0)?.norm() / max)
    }

    /// Boundary condition Ψ(0) = 0 within `tol`·max|Ψ| on the half line, or
    /// decay at both ends of `ys` on the line.
    pub fn boundary_ok(&self, ys: &[f64], tol: f64) -> Result<bool> {
        let vals = ys.iter().map(|&y| self.eval(y)).collect::<Result<Vec<_>>>()?;
        let max = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        match self.profile.domain() {
            crate::meanflow::Domain::HalfLine => Ok(self.eval(0.0)?.norm() <= tol * max),
            crate::meanflow::Domain::Line => {
                let (first, last) = (vals[0].norm(), vals[vals.len() - 1].norm());
                Ok(first <= tol * max && last <= tol * max)
            }
        }
    }
}

/// Relative residual |f'' + q f| / (|q|·max|f| + |f''|) at `y`, with f given
/// in scaled form (normalized by its exponent at `y` to keep values finite)
/// and the stencil step set by the local rate.
pub fn second_order_residual<F>(f: F, q: Complex64, y: f64, rate: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Scaled>,
{
    let e0 = f(y)?.exponent;
    let g = |x: f64| -> Result<Complex64> {
        let s = f(x)?;
        Scaled::new(s.mant, s.exponent - e0).value()
    };
    let h = fd::step_second(1.0 / rate.max(1e-300));
    let d2 = fd::d2(&g, y, h)?;
    let mut m: f64 = 0.0;
    for j in -3..=3 {
        m = m.max(g(y + j as f64 * h)?.norm());
    }
    let v = g(y)?;
    let den = q.norm() * m + d2.norm();
    if den == 0.0 {
        return Ok(0.0);
    }
    Ok((d2 + q * v).norm() / den)
}

/// Ψ_n(y) for Ū = by + c.
pub fn psi_linear(pair: &Eigenpair, b: f64, c0: f64, cfg: &FlowConfig, y: f64) -> Result<Complex64> {
    if y < 0.0 {
        return domain(format!("psi_linear needs y >= 0, got {y}"));
    }
    PsiMode::linear(*pair, b, c0, *cfg)?.eval(y)
}

/// Ψ_m(y) for Ū = ay² + by (odd Hermite order 2m + 1, unnormalized).
pub fn psi_quadratic(m: usize, pair: &Eigenpair, a: f64, b: f64, cfg: &FlowConfig, y: f64) -> Result<Complex64> {
    if y < 0.0 {
        return domain(format!("psi_quadratic needs y >= 0, got {y}"));
    }
    PsiMode::quadratic(m, *pair, a, b, 0.0, *cfg, HermiteNorm::None)?.eval(y)
}

/// Ψ_n(y) for the sech² wake at wavenumber k.
pub fn psi_wake(n: usize, k: Complex64, u0: f64, w: f64, cfg: &FlowConfig, y: f64) -> Result<Complex64> {
    let mode = crate::shortwave::wake_dispersion(n, k, u0, w, cfg)?;
    PsiMode::wake(&mode, k, u0, w, *cfg, WakeArgument::Half)?.eval(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::linspace;
    use crate::shortwave::{steady_eigen_linear, steady_eigen_linear_exact, steady_eigen_quadratic, wake_dispersion};

    fn cfg(r: f64, chi: f64) -> FlowConfig {
        FlowConfig::from_chi(r, chi).unwrap()
    }

    #[test]
    fn airy_mode_residual_and_wall() {
        let cf = cfg(10.0, 1000.0);
        let pair = steady_eigen_linear(5, 1.0, 0.0, &cf).unwrap().pair;
        let m = PsiMode::linear(pair, 1.0, 0.0, cf).unwrap();
        let ys = linspace(0.02, 3.0, 50);
        assert!(m.ode_residual(&ys).unwrap() < 1e-6);
        let exact = steady_eigen_linear_exact(5, 1.0, 0.0, &cf).unwrap();
        let me = PsiMode::linear(exact, 1.0, 0.0, cf).unwrap();
        let grid = linspace(0.0, 3.0, 601);
        assert!(me.wall_ratio(&grid).unwrap() < 1e-10);
        assert!(m.wall_ratio(&grid).unwrap() < 1e-2);
    }

    #[test]
    fn hermite_mode() {
        let cf = cfg(10.0, 1000.0);
        let pair = steady_eigen_quadratic(1, 1.0, 0.0, 0.0, &cf).unwrap().pair;
        let m = PsiMode::quadratic(0, pair, 1.0, 0.0, 0.0, cf, HermiteNorm::None).unwrap();
        assert_eq!(m.eval(0.0).unwrap(), c(0.0, 0.0));
        let ys = linspace(0.05, 2.0, 40);
        assert!(m.ode_residual(&ys).unwrap() < 1e-6);
        // H₁ vanishes only at the origin: no zero on the open half line
        let grid = linspace(1e-3, 1.0, 2000);
        assert!(grid.iter().all(|&y| m.eval(y).unwrap().norm() > 0.0));
    }

    #[test]
    fn wake_mode_solves_its_equation() {
        let cf = cfg(10.0, 10.0);
        let k = c(1.0, 0.0);
        for n in 0..3 {
            let wm = wake_dispersion(n, k, 1.0, 1.0, &cf).unwrap();
            let m = PsiMode::wake(&wm, k, 1.0, 1.0, cf, WakeArgument::Half).unwrap();
            let ys = linspace(-5.0, 5.0, 41);
            assert!(m.ode_residual(&ys).unwrap() < 1e-6, "n = {n}");
            let p = PsiMode::wake(&wm, k, 1.0, 1.0, cf, WakeArgument::Printed).unwrap();
            if n > 0 {
                assert!(p.ode_residual(&ys).unwrap() > 1e-3);
            }
        }
    }

    #[test]
    fn scaling_leaves_residual_unchanged() {
        let cf = cfg(10.0, 1000.0);
        let pair = steady_eigen_linear(3, 1.0, 0.0, &cf).unwrap().pair;
        let m = PsiMode::linear(pair, 1.0, 0.0, cf).unwrap();
        let y = 0.7;
        let q = m.q(y).unwrap();
        let a = second_order_residual(|x| m.eval_scaled(x), q, y, m.rate(y)).unwrap();
        let s = c(-3.0, 7.5);
        let b = second_order_residual(|x| Ok(m.eval_scaled(x)?.scale(s)), q, y, m.rate(y)).unwrap();
        assert!((a - b).abs() < 1e-9);
    }
}
