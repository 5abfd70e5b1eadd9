use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] cpforce_core::Error),

    #[error("validation failed")]
    Validation,
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 success, 1 usage or I/O, 2 singular point, 3 validation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Model(cpforce_core::Error::Singular { .. }) => 2,
            CliError::Model(cpforce_core::Error::Convergence { .. }) => 3,
            CliError::Model(_) => 1,
            CliError::Validation => 3,
        }
    }
}
