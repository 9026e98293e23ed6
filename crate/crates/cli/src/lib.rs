//! Batch front end: `check-corner`, `dtn`, `simulate` and `convergence`.
//!
//! Exit codes: 0 pass, 1 numerical failure, 2 failed check, 64 usage error,
//! 66 missing input file.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::error::{CliError, EXIT_CONDITION, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "wedgewave", version, about = "Dirichlet-to-Neumann operator and linear water waves on a wedge")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the corner symbol and report whether it stays away from zero.
    CheckCorner(commands::corner::Args),
    /// Assemble the DtN operator and check symmetry, positivity and Green's identity.
    Dtn(commands::dtn::Args),
    /// Evolve the free surface and write the trajectory.
    Simulate(commands::simulate::Args),
    /// Manufactured-solution refinement study of the Laplace solver.
    Convergence(commands::convergence::Args),
}

/// Whether the computed checks held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::CheckCorner(a) => commands::corner::run(a),
        Command::Dtn(a) => commands::dtn::run(a),
        Command::Simulate(a) => commands::simulate::run(a),
        Command::Convergence(a) => commands::convergence::run(a),
    };
    match result {
        Ok(Status::Pass) => EXIT_OK,
        Ok(Status::Fail) => EXIT_CONDITION,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "wedgewave: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(std::io::stderr(), "run `wedgewave help` for usage");
            }
            e.exit_code()
        }
    }
}

pub(crate) fn print_json(value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    println!("{text}");
}
