//! Airy functions of complex argument.
//!
//! Inside |z| < 8 the Maclaurin series (the ₀F₁ forms) is summed in double
//! precision, and again in double-double when the cancellation estimate says
//! double precision lost too much. Outside, the large-argument expansion of Ai
//! is used in |arg z| ≤ 2π/3 and the connection formulas cover the rest of
//! the plane. The truncated expansion is stopped at its smallest term, which is
//! below e^{-2|ζ|} ≤ 1e-13 relative for |z| ≥ 8.

use super::dd::{Dd, DdComplex};
use super::{Scalar, Scaled};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 8.0;
// Ai(0) and -Ai'(0) split into double-double.
const AI0: (f64, f64) = (0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const MAI0P: (f64, f64) = (0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);
const SQRT3: (f64, f64) = (1.732_050_807_568_877_2, 1.003_508_422_180_690_3e-16);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryValues {
    pub ai: Complex64,
    pub aip: Complex64,
    pub bi: Complex64,
    pub bip: Complex64,
}

trait Consts: Scalar {
    fn konst(c: (f64, f64)) -> Self;
}

impl Consts for Complex64 {
    fn konst(c: (f64, f64)) -> Self {
        Complex64::new(c.0 + c.1, 0.0)
    }
}

impl Consts for DdComplex {
    fn konst(c: (f64, f64)) -> Self {
        DdComplex::new(Dd { hi: c.0, lo: c.1 }, Dd::ZERO)
    }
}

/// Maclaurin sums; second value is the estimated relative rounding error.
fn maclaurin<T: Consts>(z: Complex64) -> (AiryValues, f64) {
    let zt = T::from_c(z);
    let z3 = zt * zt * zt;
    let one = T::from_f64(1.0);
    let (mut t, mut d, mut u, mut e) = (one, zt * zt * T::from_f64(0.5), zt, one);
    let (mut f, mut fp, mut g, mut gp) = (t, d, u, e);
    let (mut af, mut afp, mut ag, mut agp) = (1.0, d.to_c().norm(), z.norm(), 1.0);
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        t = t * z3 / T::from_f64((3.0 * kf - 1.0) * (3.0 * kf));
        u = u * z3 / T::from_f64((3.0 * kf) * (3.0 * kf + 1.0));
        e = e * z3 / T::from_f64((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            d = d * z3 / T::from_f64((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp = fp + d;
            afp += d.to_c().norm();
        }
        f = f + t;
        g = g + u;
        gp = gp + e;
        let (nt, nu, nd, ne) = (t.to_c().norm(), u.to_c().norm(), d.to_c().norm(), e.to_c().norm());
        af += nt;
        ag += nu;
        agp += ne;
        k += 1;
        let tiny = T::EPS * 1e-3;
        if nt <= tiny * af && nu <= tiny * ag && nd <= tiny * afp.max(1e-300) && ne <= tiny * agp {
            break;
        }
        if k > 400 {
            break;
        }
    }
    let c1 = T::konst(AI0);
    let c2 = T::konst(MAI0P);
    let s3 = T::konst(SQRT3);
    let ai = c1 * f - c2 * g;
    let bi = s3 * (c1 * f + c2 * g);
    let aip = c1 * fp - c2 * gp;
    let bip = s3 * (c1 * fp + c2 * gp);
    let vals = AiryValues {
        ai: ai.to_c(),
        aip: aip.to_c(),
        bi: bi.to_c(),
        bip: bip.to_c(),
    };
    let growth = T::EPS * (4.0 * k as f64);
    let (c1f, c2f) = (AI0.0, MAI0P.0);
    let err_v = growth * (c1f * af + c2f * ag);
    let err_d = growth * (c1f * afp + c2f * agp);
    // Near a zero of Ai or Bi only absolute accuracy against the local
    // envelope is meaningful.
    let (ea, eb) = envelopes(z);
    let sz = z.norm().sqrt();
    let rel = |x: Complex64, err: f64, env: f64| err / x.norm().max(env).max(f64::MIN_POSITIVE);
    let loss = rel(vals.ai, err_v, ea)
        .max(rel(vals.bi, err_v, eb))
        .max(if z.norm() > 0.0 {
            rel(vals.aip, err_d, ea * sz.max(1.0))
        } else {
            0.0
        })
        .max(rel(vals.bip, err_d, eb * sz.max(1.0)));
    (vals, loss)
}

/// Rough moduli of Ai and Bi ignoring their zeros.
fn envelopes(z: Complex64) -> (f64, f64) {
    let zeta = z * z.sqrt() * (2.0 / 3.0);
    let pre = 1.0 / (2.0 * PI.sqrt() * z.norm().max(1.0).powf(0.25));
    let (lo, hi) = ((-zeta.re.abs()).exp(), zeta.re.abs().exp());
    let ea = pre * (-zeta.re).exp();
    (ea.min(1.0), (2.0 * pre * hi).max(pre * lo).min(1.0))
}

fn series(z: Complex64) -> Result<AiryValues> {
    let (v, loss) = maclaurin::<Complex64>(z);
    if loss <= 1e-13 {
        return Ok(v);
    }
    let (v, loss) = maclaurin::<DdComplex>(z);
    if loss > 1e-11 {
        return Err(Error::Precision(format!("Airy series at z = {z}")));
    }
    Ok(v)
}

/// Large-|z| expansion of (Ai, Ai') for |arg z| ≤ 2π/3.
fn asymptotic_sector(z: Complex64) -> Result<(Scaled, Scaled)> {
    let sz = z.sqrt();
    let zeta = z * sz * (2.0 / 3.0);
    let z14 = sz.sqrt();
    let inv = 1.0 / zeta;
    let mut u = 1.0f64;
    let mut pw = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(1.0, 0.0);
    let mut t = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut last = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        pw = -pw * inv;
        let term_u = pw * u;
        let mag = term_u.norm();
        if mag > prev {
            break;
        }
        s += term_u;
        t += pw * v;
        prev = mag;
        last = mag;
        if mag < 1e-17 {
            break;
        }
    }
    if last > 1e-12 {
        return Err(Error::Precision(format!(
            "Airy asymptotic expansion at z = {z}: smallest term {last:e}"
        )));
    }
    let norm = 1.0 / (2.0 * PI.sqrt());
    let ai = Scaled::new(s * norm / z14, -zeta);
    let aip = Scaled::new(-z14 * t * norm, -zeta);
    Ok((ai, aip))
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// (Ai, Ai') in scaled form for |z| ≥ 8, any argument.
fn asymptotic_ai(z: Complex64) -> Result<(Scaled, Scaled)> {
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        return asymptotic_sector(z);
    }
    let w = omega();
    let wb = w.conj();
    let (a1, d1) = asymptotic_sector(w * z)?;
    let (a2, d2) = asymptotic_sector(wb * z)?;
    let ai = a1.scale(-w).add(a2.scale(-wb));
    let aip = d1.scale(-wb).add(d2.scale(-w));
    Ok((ai, aip))
}

/// (Bi, Bi') in scaled form for |z| ≥ 8.
fn asymptotic_bi(z: Complex64) -> Result<(Scaled, Scaled)> {
    let w = omega();
    let wb = w.conj();
    let e = Complex64::from_polar(1.0, PI / 6.0);
    let (a1, d1) = asymptotic_ai(w * z)?;
    let (a2, d2) = asymptotic_ai(wb * z)?;
    let bi = a1.scale(e).add(a2.scale(e.conj()));
    let bip = d1.scale(e * w).add(d2.scale(e.conj() * wb));
    Ok((bi, bip))
}

/// Ai(z) as `mant * exp(exponent)`, usable where Ai under- or overflows.
pub fn airy_ai_scaled(z: Complex64) -> Result<Scaled> {
    if z.norm() < SERIES_RADIUS {
        return Ok(Scaled::from_value(series(z)?.ai));
    }
    Ok(asymptotic_ai(z)?.0)
}

pub fn airy_ai(z: Complex64) -> Result<Complex64> {
    airy_ai_scaled(z)?.value()
}

pub fn airy_ai_prime(z: Complex64) -> Result<Complex64> {
    if z.norm() < SERIES_RADIUS {
        return Ok(series(z)?.aip);
    }
    asymptotic_ai(z)?.1.value()
}

pub fn airy_bi(z: Complex64) -> Result<Complex64> {
    if z.norm() < SERIES_RADIUS {
        return Ok(series(z)?.bi);
    }
    asymptotic_bi(z)?.0.value()
}

pub fn airy_bi_prime(z: Complex64) -> Result<Complex64> {
    if z.norm() < SERIES_RADIUS {
        return Ok(series(z)?.bip);
    }
    asymptotic_bi(z)?.1.value()
}

/// Ai, Ai', Bi, Bi' together.
pub fn airy(z: Complex64) -> Result<AiryValues> {
    if z.norm() < SERIES_RADIUS {
        return series(z);
    }
    let (ai, aip) = asymptotic_ai(z)?;
    let (bi, bip) = asymptotic_bi(z)?;
    Ok(AiryValues {
        ai: ai.value()?,
        aip: aip.value()?,
        bi: bi.value()?,
        bip: bip.value()?,
    })
}

/// The n-th (n ≥ 1) zero of Ai on the negative real axis, bracketed around the
/// asymptotic estimate and refined by bisection.
pub fn airy_zero(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Airy zeros are numbered from 1".into()));
    }
    let t = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let guess = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
    let spacing = PI / guess.abs().sqrt();
    let ai = |x: f64| airy_ai(Complex64::new(x, 0.0)).map(|v| v.re);
    let (mut lo, mut hi) = (guess - 0.3 * spacing, guess + 0.3 * spacing);
    let (mut flo, fhi) = (ai(lo)?, ai(hi)?);
    if flo * fhi > 0.0 {
        return Err(Error::NoRootFound(format!("Airy zero {n} not bracketed")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = ai(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn values_at_origin() {
        let v = airy(c(0.0, 0.0)).unwrap();
        assert!((v.ai.re - 0.355_028_053_887_817).abs() < 1e-15);
        assert!((v.bi.re - 0.614_926_627_446_001).abs() < 1e-15);
        assert!((v.aip.re + 0.258_819_403_792_807).abs() < 1e-15);
    }

    #[test]
    fn first_zeros() {
        let known = [-2.338_107_410_459_767, -4.087_949_444_130_97, -5.520_559_828_095_551];
        for (i, a) in known.iter().enumerate() {
            let z = airy_zero(i + 1).unwrap();
            assert!((z - a).abs() < 1e-12, "{z} vs {a}");
        }
        assert!(airy_ai(c(-2.338_107_410_459_767, 0.0)).unwrap().norm() < 1e-9);
    }

    #[test]
    fn paths_agree_across_the_switch() {
        for &arg in &[0.0, 0.7, 1.5, 2.2, 2.9, -1.1, -2.5] {
            let z = Complex64::from_polar(SERIES_RADIUS, arg);
            let a = series(z).unwrap();
            let (ai, aip) = asymptotic_ai(z).unwrap();
            let (bi, bip) = asymptotic_bi(z).unwrap();
            let b = [
                ai.value().unwrap(),
                aip.value().unwrap(),
                bi.value().unwrap(),
                bip.value().unwrap(),
            ];
            for (x, y) in [(a.ai, b[0]), (a.aip, b[1]), (a.bi, b[2]), (a.bip, b[3])] {
                assert!((x - y).norm() <= 1e-10 * y.norm(), "arg {arg}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn decays_on_positive_axis() {
        let mut prev = f64::INFINITY;
        for i in 0..60 {
            let s = airy_ai_scaled(c(i as f64 * 2.0, 0.0)).unwrap();
            assert!(s.mant.re > 0.0 && s.ln_abs() < prev);
            prev = s.ln_abs();
        }
        assert_eq!(airy_ai(c(2000.0, 0.0)).unwrap(), c(0.0, 0.0));
        let s = airy_ai_scaled(c(2000.0, 0.0)).unwrap();
        assert!(s.ln_abs() < -59000.0);
    }
}
