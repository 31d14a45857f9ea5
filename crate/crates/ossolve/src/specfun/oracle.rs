//! Reference summation of ₚF_q in double-double arithmetic, used by tests to
//! check `pfq`. It shares no code path with `pfq`: no transformations, no
//! Kummer step, its own term loop and stop rule.

use super::dd::{DdComplex, DD_EPS};
use super::pfq::HypergeometricParams;
use crate::error::{Error, Result};
use num_complex::Complex64;

const ORACLE_MAX_TERMS: usize = 20_000;

/// ₚF_q summed to `digits` (≤ 31) significant digits in double-double.
pub fn oracle_pfq(params: &HypergeometricParams, z: Complex64, digits: u32) -> Result<Complex64> {
    let digits = digits.clamp(1, 31);
    let stop = 10f64.powi(-(digits as i32));
    let (p, q) = (params.p(), params.q());
    let limit = params.terminating();
    if limit.is_none() {
        if p > q + 1 {
            return Err(Error::Domain(format!("{p}F{q} diverges")));
        }
        if p == q + 1 && z.norm() >= 1.0 {
            return Err(Error::Domain(format!("{p}F{q} oracle needs |z| < 1, got {}", z.norm())));
        }
    }
    let zd = DdComplex::from_c(z);
    let up: Vec<DdComplex> = params.upper.iter().map(|&a| DdComplex::from_c(a)).collect();
    let lo: Vec<DdComplex> = params.lower.iter().map(|&b| DdComplex::from_c(b)).collect();
    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    let mut abs_sum = 1.0;
    let mut quiet = 0;
    for n in 0..ORACLE_MAX_TERMS {
        if let Some(m) = limit {
            if n + 1 >= m {
                return finish(sum, abs_sum, n);
            }
        }
        let nd = DdComplex::from_c(Complex64::new(n as f64, 0.0));
        for &a in &up {
            term = term * (a + nd);
        }
        for &b in &lo {
            term = term / (b + nd);
        }
        term = term * zd / DdComplex::from_c(Complex64::new((n + 1) as f64, 0.0));
        sum = sum + term;
        let t = term.to_c().norm();
        abs_sum += t;
        if !t.is_finite() {
            return Err(Error::Overflow(format!("oracle term at z = {z}")));
        }
        if limit.is_none() {
            if t < stop * sum.to_c().norm() {
                quiet += 1;
                if quiet == 3 {
                    return finish(sum, abs_sum, n);
                }
            } else {
                quiet = 0;
            }
        }
    }
    Err(Error::Convergence {
        terms: ORACLE_MAX_TERMS,
    })
}

fn finish(sum: DdComplex, abs_sum: f64, n: usize) -> Result<Complex64> {
    let v = sum.to_c();
    let err = DD_EPS * abs_sum * (n as f64 + 2.0);
    if err > 1e-15 * v.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::Precision(format!(
            "oracle cancellation: error {err:e} against |sum| {:e}",
            v.norm()
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let p = HypergeometricParams::real(&[], &[2.0 / 3.0]).unwrap();
        assert_eq!(oracle_pfq(&p, c(0.0, 0.0), 30).unwrap(), c(1.0, 0.0));
        let p = HypergeometricParams::real(&[1.0, 1.0], &[2.0]).unwrap();
        let v = oracle_pfq(&p, c(0.5, 0.0), 30).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 2e-16);
        let p = HypergeometricParams::real(&[0.5], &[1.5]).unwrap();
        let v = oracle_pfq(&p, c(-1.0, 0.0), 30).unwrap();
        assert!((v.re - 0.746_824_132_812_427).abs() < 1e-15);
    }

    #[test]
    fn domain() {
        let p = HypergeometricParams::real(&[1.0, 1.0], &[2.0]).unwrap();
        assert!(matches!(oracle_pfq(&p, c(1.5, 0.0), 30), Err(Error::Domain(_))));
    }
}
