//! `randgap`: construct the names and tower, verify them exactly, and
//! search Souslin instances for compatible pairs.
//!
//! Exit status: 0 success, 1 a check failed, 2 invalid input, 3 the search
//! pipeline ran out of candidates.

mod artifacts;
mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use config::{Options, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] randgap_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

#[derive(Parser)]
#[command(name = "randgap", version, about = "Exact constructions and pair search over finite Cantor cubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand)]
enum Command {
    /// Write tower.txt, base_names.txt and extended_names.txt to --out
    Construct,
    /// Run every exact check on the construction or on --artifacts
    Verify,
    /// Find a compatible pair (--mode pair) or run the extractor (--mode extract)
    Search,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let config = RunConfig::resolve(cli.options)?;
    let outcome = match cli.command {
        Command::Construct => commands::construct(&config)?,
        Command::Verify => commands::verify(&config)?,
        Command::Search => commands::search(&config)?,
    };
    match (&config.out, cli.command) {
        (Some(path), Command::Verify | Command::Search) => {
            std::fs::write(path, &outcome.body).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?
        }
        _ => std::io::stdout()
            .write_all(outcome.body.as_bytes())
            .map_err(|e| CliError::Output(e.to_string()))?,
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("randgap: {e}");
            ExitCode::from(2)
        }
    }
}
