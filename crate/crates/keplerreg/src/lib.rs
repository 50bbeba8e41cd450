//! Command-line front end: configuration, report formats and the four
//! subcommands.

pub mod benchmark;
pub mod config;
pub mod output;
pub mod propagate;
pub mod spectrum;
pub mod verify;

use std::io::Write;
use std::path::Path;

pub use config::{Command, Format, Overrides, RunConfig};

/// Failure classes and their exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config or input files (exit 2).
    #[error("{0}")]
    Usage(String),
    /// A verification check failed (exit 1).
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) | CliError::Other(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.into())
    }
}

/// Writes `text` to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    match config.command {
        Some(Command::Verify) => verify::run(config),
        Some(Command::Spectrum) => spectrum::run(config),
        Some(Command::Propagate) => propagate::run(config),
        Some(Command::Benchmark) => benchmark::run(config),
        None => Err(CliError::Usage("no command given".into())),
    }
}
