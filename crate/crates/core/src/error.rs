use thiserror::Error;

/// Errors produced by the exact-computation layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Inputs are individually valid but jointly inconsistent.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    /// The configuration falls outside the implemented scope.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
