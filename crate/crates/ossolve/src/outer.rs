//! Outer approximations φ ≈ Ψ/P = −ε²Ψ/α² for the steady linear and quadratic
//! profiles at ε = 1/r, and the amplitude-versus-R figure sweeps.

use crate::eigenfunctions::{HermiteNorm, PsiMode};
use crate::error::{domain, Result};
use crate::greens::{phi_at, synthesize_phi, GreensKernel, KernelDomain, PhiPoint, SynthOptions};
use crate::grid::{linspace, GridFunction, GridMeta};
use crate::meanflow::FlowConfig;
use crate::shortwave::{steady_quadratic_printed_odd, Eigenpair};
use crate::{c, I};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterCase {
    /// Ū = y
    LinearU,
    /// Ū = y²
    QuadraticU,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OuterMode {
    pub case: OuterCase,
    pub index: usize,
    pub pair: Eigenpair,
    pub epsilon: f64,
    pub reynolds: f64,
    pub psi: PsiMode,
}

fn config(reynolds: f64, epsilon: f64) -> Result<FlowConfig> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return domain(format!("outer solutions need 0 < epsilon < 1, got {epsilon}"));
    }
    FlowConfig::from_epsilon(epsilon, reynolds)
}

/// α_n = ε(1+i)(√2/2)(3Rε/2)^{1/2}((n − 1/4)π)^{1/2}, the sign with Re α > 0.
pub fn alpha_linear(n: usize, reynolds: f64, epsilon: f64) -> Complex64 {
    let nq = n as f64 - 0.25;
    epsilon * c(1.0, 1.0) * (0.5f64).sqrt() * (1.5 * reynolds * epsilon).sqrt() * (nq * PI).sqrt()
}

/// λ_n = [(3/2)(iRα)^{−1/2}(n − 1/4)π]^{2/3}.
pub fn lambda_linear(n: usize, alpha: Complex64, reynolds: f64) -> Complex64 {
    let nq = n as f64 - 0.25;
    (1.5 * (I * reynolds * alpha).powf(-0.5) * nq * PI).powf(2.0 / 3.0)
}

/// Outer mode n ≥ 1 for Ū = y.
pub fn outer_mode_linear(n: usize, reynolds: f64, epsilon: f64) -> Result<OuterMode> {
    if n == 0 {
        return domain("linear outer modes start at n = 1");
    }
    let cfg = config(reynolds, epsilon)?;
    let alpha = alpha_linear(n, reynolds, epsilon);
    let pair = Eigenpair::from_lambda(n, alpha, lambda_linear(n, alpha, reynolds), cfg.chi);
    Ok(OuterMode {
        case: OuterCase::LinearU,
        index: n,
        pair,
        epsilon,
        reynolds,
        psi: PsiMode::linear(pair, 1.0, 0.0, cfg)?,
    })
}

/// Outer mode m ≥ 0 for Ū = y², Hermite order 2m + 1. α = (√3+i)(2Rε⁴)^{1/3}(2m + 3/4)^{2/3}
/// is used for both the prefactor and the Hermite argument; λ = (4m + 3)(iRα)^{−1/2}
/// makes Ψ an exact solution of its second-order equation.
pub fn outer_mode_quadratic(m: usize, reynolds: f64, epsilon: f64, norm: HermiteNorm) -> Result<OuterMode> {
    let cfg = config(reynolds, epsilon)?;
    let alpha = steady_quadratic_printed_odd(m, &cfg);
    let lambda = (4 * m + 3) as f64 * (I * reynolds * alpha).powf(-0.5);
    let pair = Eigenpair::from_lambda(m, alpha, lambda, cfg.chi);
    Ok(OuterMode {
        case: OuterCase::QuadraticU,
        index: m,
        pair,
        epsilon,
        reynolds,
        psi: PsiMode::quadratic(m, pair, 1.0, 0.0, 0.0, cfg, norm)?,
    })
}

impl OuterMode {
    /// P = −r²α².
    pub fn p(&self) -> Complex64 {
        let r = self.psi.cfg.r;
        -r * r * self.pair.k * self.pair.k
    }

    pub fn alpha(&self) -> Complex64 {
        self.pair.k
    }

    /// φ(y) = −ε²Ψ(y)/α².
    pub fn eval(&self, y: f64) -> Result<Complex64> {
        if y < 0.0 {
            return domain(format!("outer solution needs y >= 0, got {y}"));
        }
        let a = self.pair.k;
        Ok(-self.epsilon * self.epsilon * self.psi.eval(y)? / (a * a))
    }

    pub fn sample(&self, ys: &[f64]) -> Result<GridFunction> {
        let meta = GridMeta {
            mode: Some(self.index),
            label: format!("outer {:?} R={} eps={}", self.case, self.reynolds, self.epsilon),
        };
        GridFunction::sample(ys, meta, |y| self.eval(y))
    }
}

/// φ_n for Ū = y.
pub fn outer_linear(n: usize, reynolds: f64, epsilon: f64, y: f64) -> Result<Complex64> {
    outer_mode_linear(n, reynolds, epsilon)?.eval(y)
}

/// φ_m for Ū = y² with the printed Hermite normalization.
pub fn outer_quadratic(m: usize, reynolds: f64, epsilon: f64, y: f64) -> Result<Complex64> {
    outer_mode_quadratic(m, reynolds, epsilon, HermiteNorm::Printed)?.eval(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// φ₅, Ū = y
    Fig1,
    /// φ₂, Ū = y²
    Fig2,
}

pub const FIGURE_REYNOLDS: [f64; 4] = [1000.0, 2000.0, 5000.0, 10000.0];
pub const FIGURE_EPSILON: f64 = 0.2;
pub const FIGURE_SAMPLES: usize = 1000;
pub const FIGURE_Y_MAX: f64 = 10.0;

pub fn figure_mode(figure: Figure, reynolds: f64) -> Result<OuterMode> {
    match figure {
        Figure::Fig1 => outer_mode_linear(5, reynolds, FIGURE_EPSILON),
        Figure::Fig2 => outer_mode_quadratic(2, reynolds, FIGURE_EPSILON, HermiteNorm::Printed),
    }
}

/// One profile per R in [`FIGURE_REYNOLDS`] on y ∈ [0, 10].
pub fn figure_profiles(figure: Figure) -> Result<Vec<GridFunction>> {
    let ys = linspace(0.0, FIGURE_Y_MAX, FIGURE_SAMPLES);
    let run = |re: f64| figure_mode(figure, re)?.sample(&ys);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        FIGURE_REYNOLDS.par_iter().map(|&re| run(re)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        FIGURE_REYNOLDS.iter().map(|&re| run(re)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OuterGreensGap {
    pub r: f64,
    /// sup |φ_outer − φ_greens| on the window
    pub sup_gap: f64,
    /// sup_gap / sup |φ_greens|
    pub relative: f64,
    /// sup_gap / (ε² sup |φ_greens|)
    pub c_fit: f64,
    pub max_quadrature_error: f64,
}

/// Half-line kernel with rk = α/ε, and quadrature options resolving Ψ's
/// oscillation out to `y_max`.
pub fn greens_setup(mode: &OuterMode, y_max: f64) -> Result<(GreensKernel, SynthOptions)> {
    let psi = mode.psi;
    let kern = GreensKernel::new(KernelDomain::SemiInfinite, psi.cfg.r, mode.pair.k)?;
    let so = SynthOptions {
        max_width: Some(0.25 * 2.0 * PI / psi.rate(0.0).max(1e-12)),
        support: y_max.max(psi.shift.re.abs() * 4.0),
        ..SynthOptions::default()
    };
    Ok((kern, so))
}

/// φ = −∫GΨ at each y, one result per point so failures stay local.
pub fn greens_profile(mode: &OuterMode, ys: &[f64]) -> Result<Vec<Result<PhiPoint>>> {
    let y_max = ys.iter().cloned().fold(0.0, f64::max);
    let (kern, so) = greens_setup(mode, y_max)?;
    let psi = mode.psi;
    let f = move |y: f64| psi.eval(y);
    let one = |y: f64| phi_at(&kern, &f, y, &so);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(ys.par_iter().map(|&y| one(y)).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(ys.iter().map(|&y| one(y)).collect())
    }
}

/// Compares the outer solution with the Green's-function solution on
/// [5ε, y_max] sampled at `samples` points.
pub fn outer_vs_greens(mode: &OuterMode, y_max: f64, samples: usize) -> Result<OuterGreensGap> {
    let cfg = mode.psi.cfg;
    let ys = linspace(5.0 * mode.epsilon, y_max, samples);
    let psi = mode.psi;
    let (kern, so) = greens_setup(mode, y_max)?;
    let g = synthesize_phi(&kern, |y| psi.eval(y), &ys, &so)?;
    let mut sup = 0.0f64;
    let mut scale = 0.0f64;
    for (y, v) in ys.iter().zip(&g.values) {
        sup = sup.max((mode.eval(*y)? - v).norm());
        scale = scale.max(v.norm());
    }
    let qerr = g.errors.as_ref().map_or(0.0, |e| e.iter().cloned().fold(0.0, f64::max));
    let relative = sup / scale;
    Ok(OuterGreensGap {
        r: cfg.r,
        sup_gap: sup,
        relative,
        c_fit: relative / (mode.epsilon * mode.epsilon),
        max_quadrature_error: qerr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn peak(g: &GridFunction) -> f64 {
        g.max_abs()
    }

    #[test]
    fn linear_profile_shape() {
        let m = outer_mode_linear(5, 1000.0, 0.2).unwrap();
        assert!((m.epsilon * m.psi.cfg.r - 1.0).abs() < 1e-15);
        assert!(m.alpha().re > 0.0);
        let far = m.eval(10.0).unwrap().norm();
        let g = m.sample(&linspace(0.0, 10.0, 1000)).unwrap();
        assert!(far < 1e-3 * peak(&g));
        assert!(outer_linear(0, 1000.0, 0.2, 1.0).is_err());
        assert!(outer_linear(5, 1000.0, 0.2, -1.0).is_err());
    }

    #[test]
    fn quadratic_is_odd_at_wall() {
        for m in 0..4 {
            assert_eq!(outer_quadratic(m, 2000.0, 0.2, 0.0).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn outer_map_identity() {
        for mode in [
            outer_mode_linear(5, 1000.0, 0.2).unwrap(),
            outer_mode_quadratic(2, 5000.0, 0.2, HermiteNorm::Printed).unwrap(),
        ] {
            for &y in &[0.1, 0.7, 1.9, 3.0] {
                let psi = mode.psi.eval(y).unwrap();
                let lhs = mode.p() * mode.eval(y).unwrap();
                assert!((lhs - psi).norm() <= 1e-12 * psi.norm(), "y={y}");
            }
            let ys = linspace(0.2, 3.0, 15);
            assert!(mode.psi.ode_residual(&ys).unwrap() < 1e-6);
        }
    }

    #[test]
    fn figure_trends() {
        for fig in [Figure::Fig1, Figure::Fig2] {
            let profiles = figure_profiles(fig).unwrap();
            assert_eq!(profiles.len(), 4);
            assert!(profiles.iter().all(|p| p.len() == 1000));
            let peaks: Vec<f64> = profiles.iter().map(peak).collect();
            assert!(peaks.windows(2).all(|w| w[1] < w[0]), "{fig:?} {peaks:?}");
            for p in &profiles {
                assert!(p.values.last().unwrap().norm() < 1e-3 * peak(p));
            }
        }
    }

    #[test]
    fn greens_gap_shrinks_with_r() {
        let gap = |r: f64| {
            let m = outer_mode_linear(5, 40.0 * r * r, 1.0 / r).unwrap();
            outer_vs_greens(&m, 5.0, 41).unwrap()
        };
        let (g10, g40) = (gap(10.0), gap(40.0));
        assert!(g40.relative < g10.relative, "{g10:?} {g40:?}");
        assert!(g10.max_quadrature_error < 1e-8);
    }
}
