use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A ranking backend disagreed with the oracle.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] nsga_core::Error),
}

impl BenchError {
    /// Process exit status: 1 for failed validation, 2 for configuration
    /// and input problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Validation(_) => 1,
            BenchError::Core(nsga_core::Error::Contract(_))
            | BenchError::Core(nsga_core::Error::Evaluation { .. }) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;

pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> BenchError {
    BenchError::Io {
        path: path.into(),
        source,
    }
}
