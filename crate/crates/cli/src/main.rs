//! `liouville`: command-line front end for the verification toolkit.
//!
//! Exit codes: 0 when the check passes or the question is answered, 1 when a
//! violation is found, 2 on usage or input errors.

mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgMatches, Command as ClapCommand, CommandFactory, FromArgMatches};

use args::{Cli, Command};
use commands::Report;
use error::CliError;

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify(a) => commands::classify_cmd(a),
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::Counterexample(a) => commands::counterexample_cmd(a),
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Monotonic(a) => commands::monotonic_cmd(a),
        Command::Lyapunov(a) => commands::lyapunov_cmd(a),
        Command::Transform(t) => commands::transform_cmd(t),
    }
}

/// Lets `--A -1` and friends parse in every subcommand.
fn allow_negatives(cmd: ClapCommand) -> ClapCommand {
    cmd.allow_negative_numbers(true).mut_subcommands(allow_negatives)
}

fn parse() -> Result<Cli, clap::Error> {
    let mut cmd = allow_negatives(Cli::command());
    let matches: ArgMatches = cmd.try_get_matches_from_mut(std::env::args_os())?;
    Cli::from_arg_matches(&matches).map_err(|e| e.format(&mut cmd))
}

fn main() -> ExitCode {
    let cli = match parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            if !report.body.is_empty() {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(report.body.as_bytes());
                if !report.body.ends_with('\n') {
                    let _ = out.write_all(b"\n");
                }
            }
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
