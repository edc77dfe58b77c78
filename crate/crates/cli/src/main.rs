//! `equitri`: command-line access to the triangle-billiard library.
//!
//! Every command writes one artifact: CSV with a `#`-prefixed JSON metadata
//! line, or a JSON document. Inputs are in natural units (`ħ = 2μ = a = 1`,
//! positions in `a`, momenta in `ħ/a`); `--si` rescales dimensional outputs.

mod args;
mod commands;
mod output;
mod units;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

/// Environment variable selecting the worker thread count.
const THREADS_ENV: &str = "EQUITRI_THREADS";

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<equitri::Error> for CliError {
    fn from(e: equitri::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Invalid(format!(
            "{THREADS_ENV} must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Invalid(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| commands::run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("equitri: {e}");
            ExitCode::from(e.code())
        }
    }
}
