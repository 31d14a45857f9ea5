//! Asymptotic eigenvalues and eigenfunctions of the Orr-Sommerfeld equation.
//!
//! The crate covers the short-wave limit (WKB quantization, Airy/Hermite/Gauss
//! hypergeometric eigenfunctions and Green's function synthesis of the stream
//! function), the long-wave limit (generalized hypergeometric solutions) and a
//! Chebyshev collocation solver used as an independent check.

pub mod eigenfunctions;
pub mod error;
pub mod fd;
pub mod greens;
pub mod grid;
pub mod longwave;
pub mod meanflow;
pub mod oracle;
pub mod outer;
pub mod quad;
pub mod roots;
pub mod shortwave;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
