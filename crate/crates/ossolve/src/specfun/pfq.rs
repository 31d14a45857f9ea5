use super::dd::DdComplex;
use super::{gamma, integer_distance, is_nonpositive_integer, rgamma, Scalar};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Maximum number of series terms.
pub const N_MAX: usize = 10_000;
const STOP_REL: f64 = 1e-16;
const STOP_COUNT: usize = 3;
/// Estimated relative rounding error above which the sum is redone in double-double.
const ESCALATE: f64 = 1e-13;
/// Transformations whose gamma coefficients are this close to a pole are skipped.
const NEAR_POLE: f64 = 1e-3;

/// Upper parameters a₁…a_p and lower parameters b₁…b_q of ₚF_q.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricParams {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
}

impl HypergeometricParams {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(**b)) {
            return Err(Error::Domain(format!("lower parameter {b} is a non-positive integer")));
        }
        Ok(HypergeometricParams { upper, lower })
    }

    pub fn real(upper: &[f64], lower: &[f64]) -> Result<Self> {
        Self::new(
            upper.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            lower.iter().map(|&b| Complex64::new(b, 0.0)).collect(),
        )
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Number of non-zero terms when an upper parameter is a non-positive integer.
    pub fn terminating(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|a| is_nonpositive_integer(**a))
            .map(|a| (-a.re) as usize + 1)
            .min()
    }
}

/// A summed series with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    pub error: f64,
    pub terms: usize,
}

pub(crate) struct Raw {
    pub sum: Complex64,
    pub trunc: f64,
    pub round: f64,
    pub terms: usize,
}

/// Term-ratio summation of Σ Π(a)_n/Π(b)_n zⁿ/n!. With `limit`, exactly that
/// many terms are summed (terminating series).
pub(crate) fn series<T: Scalar>(up: &[Complex64], lo: &[Complex64], z: Complex64, limit: Option<usize>) -> Result<Raw> {
    let zt = T::from_c(z);
    let ups: Vec<T> = up.iter().map(|&a| T::from_c(a)).collect();
    let los: Vec<T> = lo.iter().map(|&b| T::from_c(b)).collect();
    let mut term = T::from_f64(1.0);
    let mut sum = term;
    let mut weighted = 1.0;
    let mut prev = 1.0;
    let mut last = 1.0;
    let mut small = 0;
    let mut n = 0usize;
    loop {
        if let Some(m) = limit {
            if n + 1 >= m {
                break;
            }
        }
        if n >= N_MAX {
            return Err(Error::Convergence { terms: n });
        }
        let nn = T::from_f64(n as f64);
        let mut num = zt;
        for &a in &ups {
            num = num * (a + nn);
        }
        let mut den = T::from_f64((n + 1) as f64);
        for &b in &los {
            den = den * (b + nn);
        }
        term = term * num / den;
        sum = sum + term;
        n += 1;
        if !term.finite() || !sum.finite() {
            return Err(Error::Overflow(format!("series term {n} at z = {z}")));
        }
        let ta = term.to_c().norm();
        weighted += (n + 1) as f64 * ta;
        prev = last;
        last = ta;
        if limit.is_none() {
            if ta <= STOP_REL * sum.to_c().norm() {
                small += 1;
                if small >= STOP_COUNT {
                    break;
                }
            } else {
                small = 0;
            }
        }
    }
    let trunc = if limit.is_some() {
        0.0
    } else {
        let ratio = if prev > 0.0 { last / prev } else { 0.0 };
        if ratio < 0.9 {
            last * ratio / (1.0 - ratio)
        } else {
            last * 10.0
        }
    };
    Ok(Raw {
        sum: sum.to_c(),
        trunc,
        round: 2.0 * T::EPS * weighted,
        terms: n + 1,
    })
}

/// Direct summation, redone in double-double when cancellation is detected.
pub(crate) fn direct_sum(up: &[Complex64], lo: &[Complex64], z: Complex64, limit: Option<usize>) -> Result<SeriesSum> {
    let mut raw = series::<Complex64>(up, lo, z, limit)?;
    if raw.round > ESCALATE * raw.sum.norm() {
        raw = series::<DdComplex>(up, lo, z, limit)?;
        // Near a zero of the function only absolute accuracy is available;
        // F(0) = 1 sets the scale.
        let scale = raw.sum.norm().max(1e-9);
        if raw.round > 1e-6 * scale {
            return Err(Error::Precision(format!(
                "series cancellation at z = {z} exceeds double-double range"
            )));
        }
    }
    Ok(SeriesSum {
        value: raw.sum,
        error: raw.trunc + raw.round,
        terms: raw.terms,
    })
}

/// ₚF_q(a; b; z) with an error estimate.
pub fn pfq_sum(params: &HypergeometricParams, z: Complex64) -> Result<SeriesSum> {
    let (p, q) = (params.p(), params.q());
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesSum {
            value: Complex64::new(1.0, 0.0),
            error: 0.0,
            terms: 1,
        });
    }
    let limit = params.terminating();
    if limit.is_none() {
        if p > q + 1 {
            return Err(Error::Domain(format!(
                "{p}F{q} diverges for z != 0 unless it terminates"
            )));
        }
        if p == q + 1 {
            if p == 2 && z.norm() > 0.5 {
                return hyp2f1(params.upper[0], params.upper[1], params.lower[0], z);
            }
            if z.norm() >= 1.0 {
                return Err(Error::Domain(format!(
                    "{p}F{q} series needs |z| < 1, got |z| = {}",
                    z.norm()
                )));
            }
        }
        if p == 1 && q == 1 && z.re < 0.0 {
            // Kummer: 1F1(a;b;z) = e^z 1F1(b-a;b;-z)
            let (a, b) = (params.upper[0], params.lower[0]);
            let inner = pfq_sum(&HypergeometricParams::new(vec![b - a], vec![b])?, -z)?;
            let ez = z.exp();
            return Ok(SeriesSum {
                value: ez * inner.value,
                error: ez.norm() * inner.error + 4.0 * f64::EPSILON * (ez * inner.value).norm(),
                terms: inner.terms,
            });
        }
    }
    direct_sum(&params.upper, &params.lower, z, limit)
}

/// ₚF_q(a; b; z).
pub fn pfq(params: &HypergeometricParams, z: Complex64) -> Result<Complex64> {
    pfq_sum(params, z).map(|s| s.value)
}

#[derive(Clone, Copy, Debug)]
enum Map {
    Direct,
    Pfaff,
    OneMinus,
    Inverse,
    InverseOneMinus,
}

fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<SeriesSum> {
    let one = Complex64::new(1.0, 0.0);
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("2F1 argument {z} on the branch cut")));
    }
    let mut cands: Vec<(f64, Map)> = Vec::new();
    if z.norm() < 1.0 {
        cands.push((z.norm(), Map::Direct));
    }
    cands.push(((z / (z - one)).norm(), Map::Pfaff));
    if integer_distance(c - a - b) > NEAR_POLE {
        cands.push(((one - z).norm(), Map::OneMinus));
    }
    if integer_distance(a - b) > NEAR_POLE {
        cands.push(((one / z).norm(), Map::Inverse));
        cands.push(((one / (one - z)).norm(), Map::InverseOneMinus));
    }
    cands.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut last_err = Error::Domain(format!("no convergent 2F1 transformation for z = {z}"));
    for (w, map) in cands {
        if w >= 1.0 {
            break;
        }
        match hyp2f1_map(a, b, c, z, map) {
            Ok(s) => return Ok(s),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn f21(a: Complex64, b: Complex64, c: Complex64, w: Complex64) -> Result<SeriesSum> {
    let p = HypergeometricParams::new(vec![a, b], vec![c])?;
    direct_sum(&p.upper, &p.lower, w, p.terminating())
}

fn combine(terms: &[(Complex64, SeriesSum)]) -> SeriesSum {
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut size = 0.0;
    let mut n = 0;
    for (coef, s) in terms {
        let v = coef * s.value;
        value += v;
        error += coef.norm() * s.error;
        size += v.norm();
        n += s.terms;
    }
    SeriesSum {
        value,
        error: error + 1e-14 * size,
        terms: n,
    }
}

fn hyp2f1_map(a: Complex64, b: Complex64, c: Complex64, z: Complex64, map: Map) -> Result<SeriesSum> {
    let one = Complex64::new(1.0, 0.0);
    match map {
        Map::Direct => f21(a, b, c, z),
        Map::Pfaff => {
            let s = f21(a, c - b, c, z / (z - one))?;
            Ok(combine(&[((one - z).powc(-a), s)]))
        }
        Map::OneMinus => {
            let w = one - z;
            let g1 = gamma(c)? * gamma(c - a - b)? * rgamma(c - a) * rgamma(c - b);
            let g2 = gamma(c)? * gamma(a + b - c)? * rgamma(a) * rgamma(b) * w.powc(c - a - b);
            let s1 = f21(a, b, a + b - c + one, w)?;
            let s2 = f21(c - a, c - b, c - a - b + one, w)?;
            Ok(combine(&[(g1, s1), (g2, s2)]))
        }
        Map::Inverse => {
            let w = one / z;
            let g1 = gamma(c)? * gamma(b - a)? * rgamma(b) * rgamma(c - a) * (-z).powc(-a);
            let g2 = gamma(c)? * gamma(a - b)? * rgamma(a) * rgamma(c - b) * (-z).powc(-b);
            let s1 = f21(a, a - c + one, a - b + one, w)?;
            let s2 = f21(b, b - c + one, b - a + one, w)?;
            Ok(combine(&[(g1, s1), (g2, s2)]))
        }
        Map::InverseOneMinus => {
            let w = one / (one - z);
            let g1 = gamma(c)? * gamma(b - a)? * rgamma(b) * rgamma(c - a) * (one - z).powc(-a);
            let g2 = gamma(c)? * gamma(a - b)? * rgamma(a) * rgamma(c - b) * (one - z).powc(-b);
            let s1 = f21(a, c - b, a - b + one, w)?;
            let s2 = f21(b, c - a, b - a + one, w)?;
            Ok(combine(&[(g1, s1), (g2, s2)]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn elementary_cases() {
        let e = pfq(&HypergeometricParams::real(&[], &[]).unwrap(), c(1.0, 0.0)).unwrap();
        assert!(close(e, c(std::f64::consts::E, 0.0), 1e-15));
        let g = pfq(&HypergeometricParams::real(&[1.0], &[]).unwrap(), c(0.5, 0.0)).unwrap();
        assert!(close(g, c(2.0, 0.0), 1e-15));
        let l = pfq(&HypergeometricParams::real(&[1.0, 1.0], &[2.0]).unwrap(), c(0.5, 0.0)).unwrap();
        assert!(close(l, c(2.0 * 2f64.ln(), 0.0), 1e-14));
    }

    #[test]
    fn rejects_bad_lower_parameter() {
        assert!(HypergeometricParams::real(&[1.0], &[-2.0]).is_err());
    }

    #[test]
    fn domain_outside_unit_disk() {
        let p = HypergeometricParams::real(&[0.5, 0.25, 0.1], &[1.5, 2.0]).unwrap();
        assert!(matches!(pfq(&p, c(1.5, 0.0)), Err(Error::Domain(_))));
        let p = HypergeometricParams::real(&[0.5, 0.25], &[]).unwrap();
        assert!(matches!(pfq(&p, c(0.1, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn terminating_series_everywhere() {
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        let (b, cc) = (1.5, 2.5);
        let p = HypergeometricParams::real(&[-2.0, b], &[cc]).unwrap();
        for &z in &[c(3.0, 0.0), c(-7.0, 2.0), c(0.2, 0.1)] {
            let exact = 1.0 - 2.0 * b * z / cc + b * (b + 1.0) * z * z / (cc * (cc + 1.0));
            assert!(close(pfq(&p, z).unwrap(), exact, 1e-14));
        }
    }

    #[test]
    fn erf_via_kummer() {
        // 1F1(1/2; 3/2; -x^2) = sqrt(pi) erf(x) / (2x)
        let p = HypergeometricParams::real(&[0.5], &[1.5]).unwrap();
        let v = pfq(&p, c(-1.0, 0.0)).unwrap();
        assert!(close(v, c(0.746_824_132_812_427, 0.0), 1e-14));
        // large negative argument, asymptotically sqrt(pi)/(2x)
        let x: f64 = 8.0;
        let v = pfq(&p, c(-x * x, 0.0)).unwrap();
        let expected = std::f64::consts::PI.sqrt() / (2.0 * x);
        assert!(close(v, c(expected, 0.0), 1e-14));
    }

    #[test]
    fn transformations_agree_with_pfaff() {
        let (a, b, cc) = (c(0.3, 0.2), c(1.1, -0.4), c(2.5, 0.3));
        for &z in &[c(0.8, 0.5), c(-3.0, 1.0), c(2.0, 1.5), c(0.9, -0.9)] {
            let reference = hyp2f1_map(a, b, cc, z, Map::Pfaff);
            let value = hyp2f1(a, b, cc, z).unwrap().value;
            if let Ok(r) = reference {
                if (z / (z - 1.0)).norm() < 0.95 {
                    assert!(close(value, r.value, 1e-11), "{z}: {value} vs {}", r.value);
                }
            }
        }
    }
}
