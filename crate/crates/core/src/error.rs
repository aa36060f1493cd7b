use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps [`Error::Config`], [`Error::Domain`] and
/// [`Error::DimensionMismatch`] to exit code 2 and everything numeric to
/// exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation lost all significant digits or produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An asymptotic critical value cannot be formed; use Monte-Carlo calibration.
    #[error("calibration error: {0}")]
    Calibration(String),

    /// A Monte-Carlo plan or experiment configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("linear algebra error: {0}")]
    LinearAlgebra(String),

    /// Parse failure for one of the plain-text artifact formats.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors caused by bad user input rather than numerics.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Config(_) | Error::DimensionMismatch { .. } | Error::Parse { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
