use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (zero polynomial,
    /// non-squarefree modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// Two values built over different bases or algebras were combined.
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("admittance violated: {0}")]
    Admittance(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
