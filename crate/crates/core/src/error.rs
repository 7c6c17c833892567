//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by any part of the workbench.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A code, identifier, or data file failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A structured input violated its schema at a known record.
    #[error("{file}: line {line}: {message}")]
    Schema {
        file: String,
        line: u64,
        message: String,
    },

    /// A parameter was outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Numerically degenerate input (zero variance, empty data, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An analysis needed data that was not supplied.
    #[error("missing data: {0}")]
    MissingData(String),

    /// A completion client failed after retries.
    #[error("client error: {0}")]
    Client(String),

    /// A scoring client returned a NaN or infinite log-probability.
    #[error("non-finite score for continuation {0:?}")]
    NonFiniteScore(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
