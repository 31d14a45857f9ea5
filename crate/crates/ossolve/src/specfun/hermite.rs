use super::Scaled;
use crate::error::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
pub fn hermite(n: usize, z: Complex64) -> Complex64 {
    let mut h0 = Complex64::new(1.0, 0.0);
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * z;
    for k in 1..n {
        let h2 = 2.0 * z * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// H_n(z) with periodic rescaling, returned as `mant * exp(exponent)`.
pub fn hermite_scaled(n: usize, z: Complex64) -> Scaled {
    let mut h0 = Complex64::new(1.0, 0.0);
    let mut log = 0.0;
    if n == 0 {
        return Scaled::from_value(h0);
    }
    let mut h1 = 2.0 * z;
    for k in 1..n {
        let h2 = 2.0 * z * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
        let m = h1.norm();
        if m > 1e150 {
            h0 /= m;
            h1 /= m;
            log += m.ln();
        }
    }
    Scaled::new(h1, Complex64::new(log, 0.0))
}

/// e^{-η²/2} H_n(η), unnormalized, in scaled form.
pub fn hermite_function_scaled(n: usize, eta: Complex64) -> Scaled {
    hermite_scaled(n, eta).mul(Scaled::new(Complex64::new(1.0, 0.0), -0.5 * eta * eta))
}

/// e^{-η²/2} H_n(η), unnormalized. Overflow is reported, underflow gives zero.
pub fn hermite_function(n: usize, eta: Complex64) -> Result<Complex64> {
    hermite_function_scaled(n, eta).value()
}

/// Standard Hermite-function normalization 1/(π^{1/4} √(2ⁿ n!)).
pub fn hermite_norm_standard(n: usize) -> f64 {
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    (-(0.25 * PI.ln()) - 0.5 * (n as f64 * 2f64.ln() + ln_fact)).exp()
}

/// The normalization printed alongside the odd Gaussian modes,
/// 1/(π^{1/4} √(2ⁿ · 2!)).
pub fn hermite_norm_printed(n: usize) -> f64 {
    (-(0.25 * PI.ln()) - 0.5 * ((n as f64) * 2f64.ln() + 2f64.ln())).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Integer coefficients of H_n from H_n = Σ (-1)^m n!/(m!(n-2m)!) (2x)^{n-2m}.
    fn explicit(n: usize, x: i128) -> i128 {
        let fact = |k: usize| (1..=k as i128).product::<i128>();
        (0..=n / 2)
            .map(|m| {
                let coef = fact(n) / (fact(m) * fact(n - 2 * m));
                let sign = if m % 2 == 0 { 1 } else { -1 };
                sign * coef * (2 * x).pow((n - 2 * m) as u32)
            })
            .sum()
    }

    #[test]
    fn examples() {
        assert_eq!(hermite(0, c(3.7, -1.0)), c(1.0, 0.0));
        assert_eq!(hermite(1, c(3.0, 0.0)), c(6.0, 0.0));
        assert_eq!(hermite(3, c(2.0, 0.0)), c(40.0, 0.0));
    }

    #[test]
    fn recurrence_matches_explicit_coefficients() {
        for n in 0..=10 {
            for x in -3i128..=3 {
                let h = hermite(n, c(x as f64, 0.0));
                assert_eq!(h.re, explicit(n, x) as f64, "n={n} x={x}");
                assert_eq!(h.im, 0.0);
            }
        }
    }

    #[test]
    fn scaled_matches_plain() {
        for n in [0, 1, 5, 40, 120] {
            let z = c(1.3, -0.7);
            let a = hermite(n, z);
            let b = hermite_scaled(n, z).value().unwrap();
            assert!((a - b).norm() <= 1e-13 * a.norm());
        }
        let big = hermite_scaled(200, c(900.0, 300.0));
        assert!(big.ln_abs().is_finite() && big.ln_abs() > 700.0);
    }

    #[test]
    fn normalizations() {
        // H_1 standard: 1/(π^{1/4} √2); printed for order 1 gives 1/(π^{1/4} · 2)
        let s = hermite_norm_standard(1);
        assert!((s - 1.0 / (PI.powf(0.25) * 2f64.sqrt())).abs() < 1e-15);
        let p = hermite_norm_printed(1);
        assert!((p - 1.0 / (PI.powf(0.25) * 2.0)).abs() < 1e-15);
    }
}
