//! Library half of the `gkn` command-line tool: sweep ledger, run
//! configuration, verification suites and the reference tables they pin.
//!
//! The binary in `main.rs` is a thin clap front end over these modules, so
//! the same code paths are exercised by the integration tests.

pub mod ledger;
pub mod run;
pub mod suites;
pub mod tables;

use std::fmt;
use std::io;

use clap::ValueEnum;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    AssertionFailed = 1,
    Usage = 2,
    Io = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] gkn_core::Error),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => ExitCode::Usage,
            CliError::Assertion(_) => ExitCode::AssertionFailed,
            CliError::Io(_) => ExitCode::Io,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        })
    }
}

/// Serializes to pretty JSON; our types never fail to serialize.
pub fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable value")
}
