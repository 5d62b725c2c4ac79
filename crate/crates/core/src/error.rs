use thiserror::Error;

/// Failures reported by the numerical core. Messages name the offending parameter point.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge on [{a}, {b}] (estimate {estimate:e}, error {error:e}): {context}")]
    Quadrature { a: f64, b: f64, estimate: f64, error: f64, context: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("no sign change of the derivative in (0, {beta}); beta is outside the small regime")]
    NoSignChange { beta: f64 },
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
