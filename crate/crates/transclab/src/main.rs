use std::process::ExitCode;

use clap::Parser;
use transclab::cli::{self, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on flag errors
    match cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
