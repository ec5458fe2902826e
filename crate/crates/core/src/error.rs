use thiserror::Error;

/// Errors raised by operator evaluation, witness synthesis and the checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or non-finite input (bad exponents, asymmetric sizes, NaN entries).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input outside the mathematical domain of the operation (r <= 0, v >= lambda, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A constructed object failed its own numerical verification.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    ensure_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive, got {value}")))
    }
}
