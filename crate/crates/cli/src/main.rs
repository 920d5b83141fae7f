//! `irv-commlab`: tally profiles, simulate elicitation protocols, and build,
//! count and verify fooling sets.
//!
//! Exit status: 0 on success, 1 when a verification finds a failure, 2 on
//! usage or input errors.

use clap::Parser;
use std::process::ExitCode;

mod args;
mod commands;

use args::{Cli, Command, FoolingCommand};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable input.
    Usage(String),
    /// The command ran, and what it checked does not hold.
    Failed(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tally(a) => commands::tally(&a),
        Command::Protocol(a) => commands::protocol(&a),
        Command::Fooling(FoolingCommand::Emit { spec, output, ungrouped }) => {
            commands::fooling_emit(&spec, output.as_deref(), ungrouped)
        }
        Command::Fooling(FoolingCommand::Count { spec, format }) => commands::fooling_count(&spec, format),
        Command::Fooling(FoolingCommand::Verify(a)) => commands::fooling_verify(&a),
        Command::Asymptotics(a) => commands::asymptotics(&a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
