use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by evaluation routines across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("quadrature did not converge: estimated error {estimate:e} after depth {depth}")]
    NonConvergence { estimate: f64, depth: u32 },
    #[error("integrand returned a non-finite value at {at}")]
    NonFinite { at: Complex64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("pole of the function at {0}")]
    Pole(Complex64),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("eta^n = 1 (resonant direction); use the resonant closed form")]
    Resonance,
    #[error("series did not converge within {0} terms")]
    SeriesNonConvergence(usize),
    #[error("dilatation z^{0} is not liftable (odd exponent has no analytic square root)")]
    NotLiftable(u32),
    #[error("n must be odd for the z^2 polygon shear, got {0}")]
    Parity(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("overflow in {0}")]
    Overflow(&'static str),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
