//! `sphconv`: evaluate, scan, benchmark and verify I(N, α) from the shell.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 numerical failure.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{report, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => commands::cmd_eval(a),
        Command::Scan(a) => commands::cmd_scan(a),
        Command::Bench(a) => commands::cmd_bench(a),
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Coeffs(a) => commands::cmd_coeffs(a),
        Command::Asympt(a) => commands::cmd_asympt(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            report(&e);
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
