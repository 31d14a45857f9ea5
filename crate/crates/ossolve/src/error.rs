use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(Complex64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },
    #[error("precision loss: {0}")]
    Precision(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("quadrature failed near y = {at}: {reason}")]
    Quadrature { at: f64, reason: String },
    #[error("no tail truncation point found for y = {at}")]
    Tail { at: f64 },
    #[error("no convergence after {iterations} iterations (last iterate {last}, residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        last: Complex64,
        residual: f64,
    },
    #[error("no root found: {0}")]
    NoRootFound(String),
    #[error("singular map parameter s = {0}")]
    SingularMap(f64),
    #[error("spurious mode at {value}: tail energy {tail:.3e}")]
    SpuriousMode { value: Complex64, tail: f64 },
    #[error("singular matrix")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
