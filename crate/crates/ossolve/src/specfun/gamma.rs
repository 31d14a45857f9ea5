use super::is_nonpositive_integer;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const G: f64 = 7.0;
const P: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πz) with the argument reduced to the nearest integer first.
pub fn sinpi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let f = Complex64::new(z.re - n, z.im);
    let s = (f * PI).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(P[0], 0.0);
    for (i, p) in P.iter().enumerate().skip(1) {
        x += *p / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Log of the gamma function. The imaginary part is a valid phase but not
/// necessarily the principal branch of log Γ.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let s = sinpi(z);
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - lanczos_ln(1.0 - z))
    } else {
        Ok(lanczos_ln(z))
    }
}

/// Γ(z) by the Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 0.5.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.im == 0.0 && z.re == z.re.round() && z.re <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    if z.re < 0.5 {
        let s = sinpi(z);
        let g = lanczos_ln(1.0 - z).exp();
        Ok(PI / (s * g))
    } else {
        let v = lanczos_ln(z).exp();
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Overflow(format!("gamma({z})")));
        }
        Ok(v)
    }
}

/// 1/Γ(z), which is entire: zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sinpi(z) * lanczos_ln(1.0 - z).exp() / PI
    } else {
        (-lanczos_ln(z)).exp()
    }
}

/// Rising factorial (v)_n by the direct product.
pub fn pochhammer(v: Complex64, n: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..n {
        p *= v + j as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorials_and_half() {
        assert_eq!(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0));
        let h = gamma(c(0.5, 0.0)).unwrap();
        assert!((h.re - PI.sqrt()).abs() < 1e-14 * PI.sqrt());
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(7.0, 1.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(2.0, 0.0), 3), c(24.0, 0.0));
        assert_eq!(pochhammer(c(0.5, 0.0), 2), c(0.75, 0.0));
    }

    #[test]
    fn reflection_identity() {
        for &z in &[c(0.3, 0.0), c(-2.7, 0.4), c(1.25, -3.0), c(4.5, 2.5), c(-0.1, -0.9)] {
            let v = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * sinpi(z) / PI;
            assert!((v - 1.0).norm() < 1e-11, "{z}: {v}");
        }
    }
}
