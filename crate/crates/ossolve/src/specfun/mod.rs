//! Special functions of complex argument: gamma, generalized hypergeometric
//! series, Airy functions and Hermite polynomials.

mod airy;
pub mod dd;
mod gamma;
mod hermite;
mod oracle;
mod pfq;

pub use airy::{airy, airy_ai, airy_ai_prime, airy_ai_scaled, airy_bi, airy_bi_prime, airy_zero, AiryValues};
pub use gamma::{gamma, ln_gamma, pochhammer, rgamma, sinpi};
pub use hermite::{
    hermite, hermite_function, hermite_function_scaled, hermite_norm_printed, hermite_norm_standard, hermite_scaled,
};
pub use oracle::oracle_pfq;
pub use pfq::{pfq, pfq_sum, HypergeometricParams, SeriesSum};

use crate::error::{Error, Result};
use dd::DdComplex;
use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Sub};

/// Largest argument of `exp` that does not overflow.
pub(crate) const LN_MAX: f64 = 709.0;

/// A complex value stored as `mant * exp(exponent)`, used where the plain value
/// would overflow or underflow double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    pub mant: Complex64,
    pub exponent: Complex64,
}

impl Scaled {
    pub fn new(mant: Complex64, exponent: Complex64) -> Self {
        Scaled { mant, exponent }
    }

    pub fn from_value(v: Complex64) -> Self {
        Scaled {
            mant: v,
            exponent: Complex64::new(0.0, 0.0),
        }
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.mant.norm().ln() + self.exponent.re
    }

    /// Unscaled value; underflow gives zero, overflow is an error.
    pub fn value(&self) -> Result<Complex64> {
        if self.mant == Complex64::new(0.0, 0.0) {
            return Ok(self.mant);
        }
        let l = self.ln_abs();
        if l > LN_MAX {
            return Err(Error::Overflow(format!("|value| = exp({l:.1})")));
        }
        if l < -745.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        // split so that the intermediate exp never overflows on its own
        let m = self.mant.norm();
        let phase = self.mant / m;
        let v = phase * Complex64::new(l, self.exponent.im).exp();
        Ok(v)
    }

    pub fn mul(self, o: Scaled) -> Scaled {
        Scaled {
            mant: self.mant * o.mant,
            exponent: self.exponent + o.exponent,
        }
    }

    pub fn scale(self, s: Complex64) -> Scaled {
        Scaled {
            mant: self.mant * s,
            exponent: self.exponent,
        }
    }

    pub fn add(self, o: Scaled) -> Scaled {
        if self.mant.norm() == 0.0 {
            return o;
        }
        if o.mant.norm() == 0.0 {
            return self;
        }
        let (big, small) = if self.exponent.re >= o.exponent.re {
            (self, o)
        } else {
            (o, self)
        };
        let rel = (small.exponent - big.exponent).exp();
        Scaled {
            mant: big.mant + small.mant * rel,
            exponent: big.exponent,
        }
    }
}

/// Arithmetic shared by the double and double-double series loops.
pub(crate) trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    const EPS: f64;
    fn from_c(z: Complex64) -> Self;
    fn to_c(self) -> Complex64;
    fn from_f64(x: f64) -> Self {
        Self::from_c(Complex64::new(x, 0.0))
    }
    fn finite(self) -> bool;
}

impl Scalar for Complex64 {
    const EPS: f64 = f64::EPSILON;
    #[inline]
    fn from_c(z: Complex64) -> Self {
        z
    }
    #[inline]
    fn to_c(self) -> Complex64 {
        self
    }
    #[inline]
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Scalar for DdComplex {
    const EPS: f64 = dd::DD_EPS;
    #[inline]
    fn from_c(z: Complex64) -> Self {
        DdComplex::from_c(z)
    }
    #[inline]
    fn to_c(self) -> Complex64 {
        DdComplex::to_c(self)
    }
    #[inline]
    fn finite(self) -> bool {
        self.is_finite()
    }
}

/// True when `z` is (numerically) a non-positive integer.
pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Distance from `z` to the nearest integer.
pub(crate) fn integer_distance(z: Complex64) -> f64 {
    Complex64::new(z.re - z.re.round(), z.im).norm()
}
