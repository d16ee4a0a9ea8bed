//! Library behind the `rattlesim` CLI: config parsing, experiment runners,
//! and CSV/SVG emission. The binary is a thin wrapper so every command can
//! also be driven from tests.

pub mod config;
pub mod csvio;
pub mod experiments;
pub mod svg;

use rattle::{EngineError, EwsError, TimechangeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config file or invalid parameter combination (exit code 2).
    #[error("{0}")]
    Config(String),
    /// Statistically empty result, e.g. no exits anywhere (exit code 3).
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Engine(EngineError),
    #[error(transparent)]
    Ews(#[from] EwsError),
}

impl CliError {
    /// Process exit code: 0 reserved for success, 2 config, 3 inconclusive,
    /// 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Engine(EngineError::InvalidConfig(_)) => 2,
            CliError::Inconclusive(_) => 3,
            _ => 1,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl From<TimechangeError> for CliError {
    fn from(e: TimechangeError) -> Self {
        match e {
            TimechangeError::Inconclusive => CliError::Inconclusive(e.to_string()),
            TimechangeError::Engine(inner) => CliError::Engine(inner),
            other @ (TimechangeError::BadFactor(_)
            | TimechangeError::ScheduledModel
            | TimechangeError::DynamicBasin) => CliError::Config(other.to_string()),
        }
    }
}
