//! Command-line front end: spectra, cross-verification, eigenfunction
//! samples and figure data.

pub mod args;
pub mod commands;
pub mod error;
pub mod rational;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Outcome;
use crate::error::{exit, CliError};

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let (outcome, out) = match &cli.command {
        Command::Spectrum(a) => (commands::spectrum(a)?, a.output.out.as_ref()),
        Command::Verify(a) => (commands::verify(a)?, a.out.as_ref()),
        Command::Wavefunction(a) => (commands::wavefunction(a)?, a.out.as_ref()),
        Command::Figures(a) => (commands::figures(a)?, None),
    };
    if let Some(path) = out {
        fs::write(path, &outcome.text).map_err(|e| CliError::io(path, e))?;
        return Ok(Outcome {
            text: String::new(),
            code: outcome.code,
        });
    }
    Ok(outcome)
}

/// Parses `args` (including the program name), runs the command, writes its
/// output and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::BAD_PARAMETERS } else { exit::OK };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return exit::IO;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
