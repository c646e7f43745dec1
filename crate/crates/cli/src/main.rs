//! `matroot`: principal and primary matrix pth roots from the command line.
//!
//! ```text
//! matroot compute   <matrix.json> --p 2
//! matroot enumerate <jordan.json> --p 2
//! matroot verify    <root.json> <matrix.json> --p 2 --tol 1e-12
//! matroot series    <matrix.json> --p 3 --terms 2000
//! ```
//!
//! Exit status: 0 ok, 2 parse, 3 singular, 4 convergence, 5 verification,
//! 1 anything else. Errors go to stderr as one JSON line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Outcome, Shared};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "matroot",
    version,
    about = "Matrix pth roots via generalized Fibonacci sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Principal pth root of the matrix in a file.
    Compute {
        matrix: PathBuf,
        #[command(flatten)]
        shared: Shared,
    },
    /// Every primary pth root of a matrix given with its Jordan structure.
    Enumerate {
        jordan: PathBuf,
        #[command(flatten)]
        shared: Shared,
    },
    /// Check a candidate root (matrix or report file) against a matrix.
    Verify {
        root: PathBuf,
        matrix: PathBuf,
        #[command(flatten)]
        shared: Shared,
    },
    /// Truncated binomial series for `(I - tA)^{1/p}`.
    Series {
        matrix: PathBuf,
        #[command(flatten)]
        shared: Shared,
    },
}

fn emit(outcome: &Outcome) -> Result<(), CliError> {
    match &outcome.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn fail(err: &CliError) -> ExitCode {
    let line = serde_json::json!({ "error": err.kind(), "message": err.to_string() });
    eprintln!("{line}");
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute { matrix, shared } => commands::compute(matrix, shared),
        Command::Enumerate { jordan, shared } => commands::enumerate(jordan, shared),
        Command::Verify { root, matrix, shared } => commands::verify(root, matrix, shared),
        Command::Series { matrix, shared } => commands::series(matrix, shared),
    };
    match outcome {
        Ok(outcome) => {
            if let Err(err) = emit(&outcome) {
                return fail(&err);
            }
            match &outcome.failure {
                Some(err) => fail(err),
                None => ExitCode::SUCCESS,
            }
        }
        Err(err) => fail(&err),
    }
}
