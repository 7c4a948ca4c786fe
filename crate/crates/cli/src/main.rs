mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use crate::config::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl From<bdanchor::Error> for CliError {
    fn from(e: bdanchor::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Build { input, scheme, build, index } => commands::build(&input, &scheme, &build, &index),
        Command::Query { input, index, patterns, variant, output, oracle } => {
            commands::query(&input, &index, &patterns, variant, output.as_deref(), oracle)
        }
        Command::Stats { index } => commands::stats(&index),
        Command::Patgen { input, length, count, seed, distinct, output } => {
            commands::patgen(&input, length, count, seed, distinct, output.as_deref())
        }
        Command::Bench { input, scheme, build, patterns } => commands::bench(&input, &scheme, &build, &patterns),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bdx: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 1,
                CliError::Data(_) => 2,
            })
        }
    }
}
