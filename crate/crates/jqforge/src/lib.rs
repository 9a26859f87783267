//! Command-line front end for `jqforge-core`.
//!
//! [`cli::run`] takes an argument vector and returns the exit code and the
//! text to print, so the binary and the tests share one code path.

pub mod cli;
pub mod config;
pub mod paper;
pub mod report;

use jqforge_core::Error;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NOT_FOUND: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_PARSE,
            CliError::Core(Error::Parse(_)) => EXIT_PARSE,
            CliError::Core(e) if e.is_not_found() => EXIT_NOT_FOUND,
            CliError::Core(Error::Indecomposable(_)) => EXIT_NOT_FOUND,
            CliError::Core(_) => EXIT_DOMAIN,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PARSE => "parse",
            EXIT_NOT_FOUND => "not_found",
            _ => "domain",
        }
    }
}
