//! `lahbell`: number tables, polynomial listings, identity verification and
//! moment simulation on the command line.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lahbell::Error;

/// Exit statuses shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    IdentityFailure = 1,
    Usage = 2,
    Cap = 3,
    Domain = 4,
    SignedMass = 5,
}

/// A failure to report on stderr together with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Usage,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let exit = match &error {
            Error::SignedMass { .. } => Exit::SignedMass,
            Error::ParseRational(_)
            | Error::InvalidParameter(_)
            | Error::MissingParameter(_)
            | Error::UnknownIdentity(_) => Exit::Usage,
            _ => Exit::Domain,
        };
        let message = match &error {
            Error::SignedMass { index, mass } => {
                format!("cannot sample: first negative mass is at index {index} (mass {mass})")
            }
            other => other.to_string(),
        };
        Self { exit, message }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "lahbell",
    version,
    about = "Lah-Bell polynomials and degenerate distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Largest accepted --n-max or --n.
    #[arg(long, default_value_t = 200)]
    pub cap: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a number triangle or the Lah-Bell numbers for rows 0..=n-max.
    Table(commands::TableArgs),
    /// Print the coefficients of a polynomial and optionally its value.
    Poly(commands::PolyArgs),
    /// Run an identity suite and print one report per instance.
    Verify(commands::VerifyArgs),
    /// Estimate a moment by sampling.
    Simulate(commands::SimulateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table(args) => commands::table(&args),
        Command::Poly(args) => commands::poly(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Simulate(args) => commands::simulate(&args),
    };
    match result {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit as u8)
        }
    }
}
