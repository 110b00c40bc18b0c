//! Command-line front end: every subcommand prints one JSON document (or a
//! plain-text table with `--pretty`) and exits with 0 on success, 1 when a
//! verification fails and 2 on bad input.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub mod args;
pub mod commands;
pub mod input;
pub mod render;

pub use args::Cli;
pub use commands::Outcome;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
}

macro_rules! input_error_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_error_from!(
    std::io::Error,
    serde_json::Error,
    sklyanin_core::RootSystemError,
    sklyanin_core::LeafError,
    sklyanin_core::EllipticError,
    sklyanin_core::rmatrix::RMatrixError,
    sklyanin_core::toric2d::ToricError,
    sklyanin_core::geom::GeomError,
    sklyanin_core::parabolics::ParabolicError
);

/// Parse `args` (including the program name) and run the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(outcome) => {
            let text = if cli.pretty {
                outcome.pretty.clone()
            } else {
                serde_json::to_string(&outcome.json).expect("JSON values serialize") + "\n"
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            if outcome.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
