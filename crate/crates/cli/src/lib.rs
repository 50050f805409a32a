//! Experiment harness around the `fairseed` library: configuration, the five
//! subcommand pipelines and their output files.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::OutputDir;

/// Runs one subcommand on a resolved configuration and returns the files it
/// wrote, manifest excluded.
pub fn execute(command: &str, cfg: &RunConfig) -> Result<Vec<String>, CliError> {
    let mut out = OutputDir::create(&cfg.out)?;
    match command {
        "generate" => commands::cmd_generate(cfg, &mut out).map(drop)?,
        "critical-p" => commands::cmd_critical_p(cfg, &mut out).map(drop)?,
        "vulnerability" => commands::cmd_vulnerability(cfg, &mut out).map(drop)?,
        "optimize" => commands::cmd_optimize(cfg, &mut out).map(drop)?,
        "seed-report" => commands::cmd_seed_report(cfg, &mut out).map(drop)?,
        other => return Err(CliError::config(format!("unknown command {other:?}"))),
    }
    out.finish(command, &cfg.to_text())
}

fn run_command(command: &Command) -> Result<Vec<String>, CliError> {
    let cfg = command.options().resolve()?;
    if let Some(n) = cfg.threads {
        // A pool that is already built (repeated calls in one process) is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    execute(command.name(), &cfg)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; messages go to stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run_command(&cli.command) {
        Ok(files) => {
            for f in files {
                println!("{f}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
