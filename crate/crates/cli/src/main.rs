//! `truss`: exact and truncated k-truss decomposition from the command line.
//!
//! Exit status: 0 success, 1 a `verify` check failed, 2 usage error,
//! 3 I/O, 4 malformed input, 5 invalid graph for the request,
//! 6 invalid parameters, 7 memory budget exceeded.

mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use crate::commands::Outcome;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) if e.broken_pipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("truss: {e}");
            e.exit_code()
        }
    }
}
