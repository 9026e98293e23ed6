use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NUMERICAL: u8 = 1;
pub const EXIT_CONDITION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_NO_INPUT: u8 = 66;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    MissingFile { path: PathBuf, source: io::Error },
    #[error("numerical failure: {0}")]
    Numerical(#[from] wedgewave::Error),
    #[error("check failed: {0}")]
    Condition(String),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::MissingFile { .. } => EXIT_NO_INPUT,
            CliError::Numerical(wedgewave::Error::PositivityViolation { .. }) | CliError::Condition(_) => EXIT_CONDITION,
            CliError::Numerical(_) | CliError::Write { .. } => EXIT_NUMERICAL,
        }
    }

    /// Input errors raised by the library while validating user data.
    pub fn from_validation(err: wedgewave::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
