//! Flow parameters, mean-velocity profiles and the Squire reduction.
//!
//! The spanwise mean velocity is called `spanwise` throughout; the same
//! quantity appears in the literature as both v̄ and w̄.

use crate::error::{domain, Result};
use num_complex::Complex64;

/// Aspect ratios in this band sit between the short- and long-wave limits.
pub const GRAY_ZONE: (f64, f64) = (0.5, 2.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    ShortWave,
    LongWave,
}

/// Nondimensional parameters. `chi` is stored, and `reynolds` is always
/// `chi * r * r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowConfig {
    pub r: f64,
    pub reynolds: f64,
    pub chi: f64,
    pub theta: f64,
    pub regime: Regime,
}

impl FlowConfig {
    /// Configuration from aspect ratio and χ = R/r²; the regime follows r.
    pub fn from_chi(r: f64, chi: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) || !(chi > 0.0 && chi.is_finite()) {
            return domain(format!("need r > 0 and chi > 0, got r = {r}, chi = {chi}"));
        }
        let regime = if r >= 1.0 { Regime::ShortWave } else { Regime::LongWave };
        let cfg = FlowConfig {
            r,
            reynolds: chi * r * r,
            chi,
            theta: 0.0,
            regime,
        };
        cfg.warn_gray_zone();
        Ok(cfg)
    }

    /// Configuration from aspect ratio and Reynolds number.
    pub fn from_reynolds(r: f64, reynolds: f64) -> Result<Self> {
        if !(reynolds > 0.0) {
            return domain(format!("need R > 0, got {reynolds}"));
        }
        Self::from_chi(r, reynolds / (r * r))
    }

    /// Short-wave setting with ε = 1/r.
    pub fn from_epsilon(epsilon: f64, reynolds: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return domain(format!("need epsilon > 0, got {epsilon}"));
        }
        Self::from_reynolds(1.0 / epsilon, reynolds)
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    /// Forces a regime; outside its natural range only a warning is logged.
    pub fn with_regime(mut self, regime: Regime) -> Self {
        match regime {
            Regime::ShortWave if self.r < 1.0 => {
                log::warn!("short-wave regime requested with r = {} < 1", self.r)
            }
            Regime::LongWave if self.r > 1.0 => {
                log::warn!("long-wave regime requested with r = {} > 1", self.r)
            }
            _ => {}
        }
        self.regime = regime;
        self
    }

    pub fn in_gray_zone(&self) -> bool {
        self.r >= GRAY_ZONE.0 && self.r <= GRAY_ZONE.1
    }

    fn warn_gray_zone(&self) {
        if self.in_gray_zone() {
            log::warn!(
                "aspect ratio r = {} is near 1; neither asymptotic limit is well separated",
                self.r
            );
        }
    }
}

/// r = H/L, χ = LV/ν*, R = r²χ.
pub fn nondimensionalize(l: f64, h: f64, v: f64, nu_star: f64) -> Result<FlowConfig> {
    for (name, x) in [("L", l), ("H", h), ("V", v), ("nu*", nu_star)] {
        if !(x > 0.0 && x.is_finite()) {
            return domain(format!("{name} must be positive, got {x}"));
        }
    }
    FlowConfig::from_chi(h / l, l * v / nu_star)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// [0, ∞)
    HalfLine,
    /// (−∞, ∞)
    Line,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeanProfile {
    Linear {
        b: f64,
        c: f64,
    },
    Quadratic {
        a: f64,
        b: f64,
        c: f64,
    },
    /// U₀ sech²(w y)
    Sech2 {
        u0: f64,
        w: f64,
    },
}

/// Quadratic coefficients below this magnitude are small enough for the
/// long-wave treatment.
pub const SMALL_QUADRATIC: f64 = 1e-2;

impl MeanProfile {
    pub fn domain(&self) -> Domain {
        match self {
            MeanProfile::Sech2 { .. } => Domain::Line,
            _ => Domain::HalfLine,
        }
    }

    /// Ū(y) and Ū''(y).
    pub fn eval(&self, y: f64) -> Result<(f64, f64)> {
        if !y.is_finite() || (self.domain() == Domain::HalfLine && y < 0.0) {
            return domain(format!("y = {y} outside the profile domain"));
        }
        Ok(match *self {
            MeanProfile::Linear { b, c } => (b * y + c, 0.0),
            MeanProfile::Quadratic { a, b, c } => (a * y * y + b * y + c, 2.0 * a),
            MeanProfile::Sech2 { u0, w } => {
                let t = (w * y).tanh();
                let s2 = 1.0 - t * t;
                (u0 * s2, u0 * w * w * s2 * (6.0 * t * t - 2.0))
            }
        })
    }

    pub fn long_wave_admissible(&self) -> bool {
        match self {
            MeanProfile::Quadratic { a, .. } => a.abs() <= SMALL_QUADRATIC,
            MeanProfile::Linear { .. } => true,
            MeanProfile::Sech2 { .. } => false,
        }
    }
}

/// Ū = ū cos θ + w̄ sin θ.
pub fn squire_reduce<U, W>(streamwise: U, spanwise: W, theta: f64) -> impl Fn(f64) -> f64
where
    U: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    let (s, c) = theta.sin_cos();
    move |y| streamwise(y) * c + spanwise(y) * s
}

/// Squire reduction of (value, second derivative) pairs.
pub fn squire_reduce_with_curvature<U, W>(streamwise: U, spanwise: W, theta: f64) -> impl Fn(f64) -> (f64, f64)
where
    U: Fn(f64) -> (f64, f64),
    W: Fn(f64) -> (f64, f64),
{
    let (s, c) = theta.sin_cos();
    move |y| {
        let (u, uyy) = streamwise(y);
        let (w, wyy) = spanwise(y);
        (u * c + w * s, uyy * c + wyy * s)
    }
}

/// α = k cos θ, β = k sin θ.
pub fn decompose_wavenumber(k: Complex64, theta: f64) -> (Complex64, Complex64) {
    let (s, c) = theta.sin_cos();
    (k * c, k * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn nondimensional_examples() {
        let c = nondimensionalize(1.0, 1.0, 1.0, 0.001).unwrap();
        assert_eq!((c.r, c.chi, c.reynolds), (1.0, 1000.0, 1000.0));
        let c = nondimensionalize(2.0, 4.0, 1.0, 0.01).unwrap();
        assert_eq!(c.r, 2.0);
        assert!((c.chi - 200.0).abs() < 1e-12);
        assert!((c.reynolds - 800.0).abs() < 1e-10);
        assert_eq!(c.regime, Regime::ShortWave);
        assert!(nondimensionalize(1.0, 0.0, 1.0, 1.0).is_err());
        assert_eq!(nondimensionalize(4.0, 1.0, 1.0, 1.0).unwrap().regime, Regime::LongWave);
    }

    #[test]
    fn squire_examples() {
        let u = |y: f64| 2.0 * (y - y.tanh());
        let w = |y: f64| 2.0 / 3f64.sqrt() * y.tanh();
        // the reduction to Ū = y needs cos θ = 1/2; at θ = π/6 it is off
        let red = squire_reduce(u, w, PI / 3.0);
        for i in 0..50 {
            let y = i as f64 * 0.2;
            assert!((red(y) - y).abs() <= 1e-12 * (1.0 + y), "y={y}");
        }
        let off = squire_reduce(u, w, PI / 6.0);
        assert!((off(2.0) - 2.0).abs() > 0.1);
        let f = |y: f64| y * y + 1.0;
        let g = |y: f64| y.sin();
        let red0 = squire_reduce(f, g, 0.0);
        assert_eq!(red0(1.5), f(1.5));
        let red90 = squire_reduce(f, g, PI / 2.0);
        assert!((red90(1.5) - g(1.5)).abs() < 1e-15);
    }

    #[test]
    fn wavenumber_examples() {
        let k = Complex64::new(1.0, 0.0);
        let (a, b) = decompose_wavenumber(k, PI / 3.0);
        assert!((a.re - 0.5).abs() < 1e-15 && (b.re - 0.866_025_403_784_438_6).abs() < 1e-15);
        let (a, b) = decompose_wavenumber(Complex64::new(2.0, 0.0), PI / 4.0);
        assert!((a.re - 2f64.sqrt()).abs() < 1e-15 && (b.re - 2f64.sqrt()).abs() < 1e-15);
        let k = Complex64::new(0.3, -2.0);
        assert_eq!(decompose_wavenumber(k, 0.0), (k, Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(MeanProfile::Linear { b: 1.0, c: 0.0 }.eval(3.0).unwrap(), (3.0, 0.0));
        assert_eq!(
            MeanProfile::Quadratic { a: 1.0, b: 0.0, c: 0.0 }.eval(2.0).unwrap(),
            (4.0, 2.0)
        );
        assert_eq!(MeanProfile::Sech2 { u0: 1.0, w: 1.0 }.eval(0.0).unwrap(), (1.0, -2.0));
        assert!(MeanProfile::Linear { b: 1.0, c: 0.0 }.eval(-1.0).is_err());
        assert!(MeanProfile::Sech2 { u0: 1.0, w: 1.0 }.eval(-1.0).is_ok());
    }

    #[test]
    fn sech2_curvature_matches_finite_difference() {
        let p = MeanProfile::Sech2 { u0: 1.3, w: 0.7 };
        let h = 1e-4;
        for &y in &[-2.0, -0.3, 0.0, 0.8, 3.0] {
            let u = |x: f64| p.eval(x).unwrap().0;
            let fd = (u(y + h) - 2.0 * u(y) + u(y - h)) / (h * h);
            assert!((fd - p.eval(y).unwrap().1).abs() < 1e-6);
        }
    }
}
