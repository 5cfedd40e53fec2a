//! `epiroute` command-line front end. CSV goes to standard output (or `--out`),
//! diagnostics to standard error. Exit status: 0 success, 1 domain error,
//! 2 usage error.

mod args;
mod config;
mod model_cmds;
mod output;
mod trace_cmds;

use std::ffi::OsString;
use std::fmt;
use std::io;
use std::process::ExitCode;

use clap::parser::ValueSource;
use clap::{CommandFactory, FromArgMatches};

use args::{Cli, Command};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => f.write_str(m),
        }
    }
}

impl From<epiroute_core::Error> for Failure {
    fn from(e: epiroute_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("I/O error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Domain(format!("CSV output error: {e}"))
    }
}

fn explicitly_set(matches: &clap::ArgMatches, id: &str) -> bool {
    matches!(
        matches.value_source(id),
        Some(ValueSource::CommandLine | ValueSource::EnvVariable)
    )
}

fn run(argv: Vec<OsString>) -> Result<(), Failure> {
    let argv = config::expand_config(argv).map_err(Failure::Usage)?;
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => e.exit(),
    };
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    match &cli.command {
        Command::Analytic(a) => model_cmds::analytic(a),
        Command::Sweep(a) => {
            let sub = matches
                .subcommand_matches("sweep")
                .expect("sweep subcommand");
            let explicit = model_cmds::Explicit {
                alpha: explicitly_set(sub, "alpha"),
                delay: explicitly_set(sub, "delay"),
            };
            model_cmds::sweep(a, explicit)
        }
        Command::Simulate(a) => model_cmds::simulate(a),
        Command::Estimate(a) => trace_cmds::estimate(a),
        Command::Replay(a) => trace_cmds::replay(a),
        Command::SynthTrace(a) => trace_cmds::synth_trace(a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args_os().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            match failure {
                Failure::Usage(_) => ExitCode::from(2),
                Failure::Domain(_) => ExitCode::from(1),
            }
        }
    }
}
