//! `homodyne` command-line tool: parameter sweeps over the cavity spectral
//! density, the smearing window and homodyne detector statistics, written as
//! CSV or JSON.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

use std::fmt;
use std::fs;

use config::{Cli, Format, Params, Settings};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Compute(String),
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Compute(_) => "compute",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Compute(m) | CliError::Io(m) => m,
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.message() } }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

/// Resolves the configuration, runs the command and writes the output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Params::from_toml(&text)?
        }
        None => Params::default(),
    };
    let settings = Settings::resolve(cli.command, cli.params.over(file))?;
    let table = commands::run(&settings)?;
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => output::to_csv(&table, &settings),
        Format::Json => output::to_json(&table, &settings),
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}
