//! Library half of the `jcd` binary: exact JSON file formats, the command
//! implementations, and the exit-code contract. Kept as a library so the
//! integration suites can exercise parsing and verification directly.

pub mod commands;
pub mod files;

use std::fmt;

/// Failure categories with a stable exit-code mapping: check failures exit
/// 1, parse errors 2, precondition violations 3 (success is 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Check(String),
    Parse(String),
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Check(msg) => write!(f, "check failed: {msg}"),
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Precondition(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<jcd_core::Error> for CliError {
    fn from(e: jcd_core::Error) -> CliError {
        match e {
            jcd_core::Error::Invariant(_) => CliError::Check(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
