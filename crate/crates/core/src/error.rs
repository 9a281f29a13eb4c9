use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants are grouped by how the command-line front end reports them:
/// parameter problems are validation errors, file and data problems are data
/// errors, and `Invariant` marks a broken internal guarantee.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("invalid distribution parameters: {0}")]
    InvalidDistribution(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("zero-variance input: {0}")]
    ZeroVariance(String),

    #[error("all observations are censored: {0}")]
    AllCensored(String),

    #[error("missing distance entry between `{0}` and `{1}`")]
    MissingEntry(String, String),

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    #[error("schema error in {path}: {reason}")]
    Schema { path: PathBuf, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad configuration or arguments rather than data.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. } | Error::InvalidDistribution(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
