use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable / malformed input.
    #[error("{0}")]
    Usage(String),
    /// Training, loading or writing a model failed.
    #[error("{0}")]
    Model(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(_) => 3,
        }
    }

    pub fn input(path: &Path, e: impl std::fmt::Display) -> CliError {
        CliError::Usage(format!("{}: {e}", path.display()))
    }

    pub fn model(path: &Path, e: impl std::fmt::Display) -> CliError {
        CliError::Model(format!("{}: {e}", path.display()))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
