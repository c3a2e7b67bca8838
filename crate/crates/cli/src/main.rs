//! Command-line driver: seeded game runs, tomography sweeps, and device
//! reports, with machine-readable JSON/CSV outputs and a run manifest.

mod device_cmd;
mod game_cmd;
mod output;
mod tomography_cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "mpsim",
    version,
    about = "Two-copy collective-measurement state estimation simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the two-copy guessing game under a chosen strategy.
    Game(game_cmd::GameArgs),
    /// Sweep tomography ensemble sizes and fit the infidelity scaling.
    Tomography(tomography_cmd::TomographyArgs),
    /// Report the device parameters derived from a target concurrence.
    Device(device_cmd::DeviceArgs),
}

/// Failures split by exit code: 2 for usage/validation, 3 for numeric or
/// runtime trouble.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }
}

impl From<mpsim_core::Error> for CliError {
    fn from(e: mpsim_core::Error) -> Self {
        match e {
            mpsim_core::Error::Domain(msg) => CliError::Usage(format!("invalid input: {msg}")),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Game(args) => game_cmd::run(args),
        Command::Tomography(args) => tomography_cmd::run(args),
        Command::Device(args) => device_cmd::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
