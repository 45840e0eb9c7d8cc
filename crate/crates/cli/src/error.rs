use std::fmt::Display;

use chromatic_core::building::BuildingError;
use chromatic_core::congruence::CongruenceError;
use chromatic_core::level1::Level1Error;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("exhausted: {0}")]
    Exhausted(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Exhausted(_) => EXIT_EXHAUSTED,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

pub fn pre(e: impl Display) -> CliError {
    CliError::Precondition(e.to_string())
}

impl From<BuildingError> for CliError {
    fn from(e: BuildingError) -> Self {
        match e {
            BuildingError::Budget { .. } => CliError::Exhausted(e.to_string()),
            _ => pre(e),
        }
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::InsufficientPrecision { .. } => CliError::Exhausted(e.to_string()),
            _ => pre(e),
        }
    }
}

impl From<Level1Error> for CliError {
    fn from(e: Level1Error) -> Self {
        match e {
            Level1Error::SearchExhausted { .. } | Level1Error::Overflow => CliError::Exhausted(e.to_string()),
            _ => pre(e),
        }
    }
}
