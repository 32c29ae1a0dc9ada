use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, AbxError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbxError {
    /// Input outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    Domain(String),
    /// D(k) is numerically zero, the resolvent correction is ill-conditioned.
    #[error("k = {k} is at or near an eigenvalue: |D(k)| = {:.3e}", d.norm())]
    NearEigenvalue { k: Complex64, d: Complex64 },
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

impl AbxError {
    pub fn is_validation(&self) -> bool {
        matches!(self, AbxError::Domain(_))
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(AbxError::Domain(msg.into()))
}
