//! Finite-difference stencils used as derivative oracles for ODE residual checks.

use crate::error::Result;
use num_complex::Complex64;

/// Step for a second-derivative check: balances the O(h⁶) truncation of the
/// 7-point stencil against O(ε/h²) rounding, scaled by the local length scale.
pub fn step_second(scale: f64) -> f64 {
    f64::EPSILON.powf(1.0 / 8.0) * scale
}

/// Step for a fourth-derivative check with the 9-point stencil.
pub fn step_fourth(scale: f64) -> f64 {
    f64::EPSILON.powf(1.0 / 10.0) * scale
}

/// Central 7-point second derivative, O(h⁶).
pub fn d2<F>(f: &F, x: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    const W: [f64; 4] = [-490.0, 270.0, -27.0, 2.0];
    let mut s = f(x)? * W[0];
    for (j, w) in W.iter().enumerate().skip(1) {
        let d = h * j as f64;
        s += (f(x - d)? + f(x + d)?) * *w;
    }
    Ok(s / (180.0 * h * h))
}

/// Central 9-point fourth derivative, O(h⁶).
pub fn d4<F>(f: &F, x: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    const W: [f64; 5] = [91.0 / 8.0, -122.0 / 15.0, 169.0 / 60.0, -2.0 / 5.0, 7.0 / 240.0];
    let mut s = f(x)? * W[0];
    for (j, w) in W.iter().enumerate().skip(1) {
        let d = h * j as f64;
        s += (f(x - d)? + f(x + d)?) * *w;
    }
    Ok(s / h.powi(4))
}

/// Central 7-point first derivative, O(h⁶).
pub fn d1<F>(f: &F, x: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    const W: [f64; 4] = [0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];
    let mut s = Complex64::new(0.0, 0.0);
    for (j, w) in W.iter().enumerate().skip(1) {
        let d = h * j as f64;
        s += (f(x + d)? - f(x - d)?) * *w;
    }
    Ok(s / h)
}

/// One-sided 7-point first derivative, O(h⁶). A negative `h` looks to the left.
pub fn d1_one_sided<F>(f: &F, x: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    const W: [f64; 7] = [
        -49.0 / 20.0,
        6.0,
        -15.0 / 2.0,
        20.0 / 3.0,
        -15.0 / 4.0,
        6.0 / 5.0,
        -1.0 / 6.0,
    ];
    let mut s = Complex64::new(0.0, 0.0);
    for (j, w) in W.iter().enumerate() {
        s += f(x + h * j as f64)? * *w;
    }
    Ok(s / h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_exponential() {
        let a = Complex64::new(0.7, -1.3);
        let f = |x: f64| Ok((a * x).exp());
        let x = 0.4;
        let fx = (a * x).exp();
        let h2 = step_second(1.0 / a.norm());
        assert!((d2(&f, x, h2).unwrap() - a * a * fx).norm() < 1e-10);
        let h4 = step_fourth(1.0 / a.norm());
        assert!((d4(&f, x, h4).unwrap() - a.powi(4) * fx).norm() < 1e-7);
        assert!((d1(&f, x, 1e-3).unwrap() - a * fx).norm() < 1e-11);
        assert!((d1_one_sided(&f, x, 1e-3).unwrap() - a * fx).norm() < 1e-10);
        assert!((d1_one_sided(&f, x, -1e-3).unwrap() - a * fx).norm() < 1e-10);
    }
}
