//! Command line front end over `purecubic-core`.

use std::fmt;

pub mod args;
pub mod cache;
pub mod commands;
pub mod output;
pub mod report;
pub mod uassign;

use args::{Cli, Command};
use report::Report;

/// Failures that abort a command with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Env(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Env(m) => write!(f, "environment error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Scan(a) => commands::scan(a, g),
        Command::Table1(a) => commands::table1(a, g),
        Command::Split(a) => commands::split(a),
        Command::Symbols(a) => commands::symbols(a),
        Command::Classgroup(a) => commands::classgroup(a, g),
        Command::ModelCheck(a) => commands::model_check(a),
    }
}
