//! Error type shared across the library.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A sample of the wrong kind was fed to an oracle (e.g. a data index
    /// given to a noise-perturbed problem).
    #[error("sample kind mismatch: oracle expected {expected}")]
    SampleKind { expected: &'static str },

    /// The oracle does not expose the requested quantity (true gradient,
    /// function value, gradient bound, optimum value, ...).
    #[error("oracle does not expose {0}")]
    MissingCapability(&'static str),

    /// A non-finite number appeared in optimizer state. `step` is the
    /// 1-based index of the step that produced it.
    #[error("non-finite value in {what} at step {step}")]
    NonFinite { step: u64, what: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A stated precondition of a diagnostic or experiment was not met.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
