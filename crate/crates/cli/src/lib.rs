//! Pipeline wiring behind the `hatepipe` binary: configuration, the fitted
//! pipeline and model file, and the synthetic acceptance corpus generator.

pub mod config;
pub mod model;
pub mod pipeline;
pub mod synth;

use thiserror::Error;

/// Command failures, split by exit code: input/validation problems exit 1,
/// training/evaluation failures exit 2.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Run(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Run(_) => 2,
        }
    }
}
