use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of an operation was not met by its inputs.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Invalid configuration, rejected before any work is done.
    #[error("configuration error: {0}")]
    Config(String),

    /// A problem failed to evaluate one individual.
    #[error("evaluation of individual {id} failed: {reason}")]
    Evaluation { id: usize, reason: String },

    /// A malformed input file. `line` is 1-based.
    #[error("{}:{line}: {message}", file.display())]
    Parse {
        file: PathBuf,
        line: u64,
        message: String,
    },

    /// Input that parses but is inconsistent with the rest of the dataset.
    #[error("{}: {message}", file.display())]
    Validation { file: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
