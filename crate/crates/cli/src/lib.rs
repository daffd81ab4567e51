//! Command-line surface of `fractal-bound-core`.
//!
//! Each subcommand is a plain function from its parsed arguments to an
//! [`Outcome`] (text for stdout plus an exit code), so the binary in
//! `main.rs` only parses, dispatches and prints.

pub mod commands;
pub mod config;
pub mod output;
pub mod parallel;
pub mod report;

use std::path::PathBuf;

pub use commands::{run, Outcome};
pub use config::RunConfig;

/// Exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 1;
    /// Result reported, but the contraction hypotheses do not hold.
    pub const NOT_APPLICABLE: u8 = 2;
    /// Hypotheses hold but a numerical check failed.
    pub const CHECK_FAILED: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fractal_bound_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        exit::USAGE
    }
}
