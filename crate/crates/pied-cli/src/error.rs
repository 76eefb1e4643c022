//! Command-level error split that fixes the process exit codes: 2 for
//! configuration problems, 3 for missing or unreadable inputs.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    MissingInput(String),
}

impl CliError {
    /// Stable scripting contract: 0 success, 2 config error, 3 missing input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::MissingInput(_) => 3,
        }
    }
}

impl From<pied_core::Error> for CliError {
    fn from(err: pied_core::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
