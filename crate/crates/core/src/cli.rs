//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails, 1 on any
//! validation or runtime error. `BIHARM_THREADS` sets the worker count.

use crate::error::{Error, Result};
use crate::scenario::{run, Command, Scenario};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

/// Environment variable overriding the number of worker threads.
pub const THREADS_ENV: &str = "BIHARM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "biharm",
    version,
    about = "Biharmonic cavity scattering: solve, verify, compare"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Solve the scenario's incident field; write far field and field samples.
    Solve(RunArgs),
    /// Run the scenario's check list.
    Verify(RunArgs),
    /// Compare the solver with the series solution on a centred circle.
    Oracle(RunArgs),
    /// Run the phaseless experiment of the `[phaseless]` section.
    Phaseless(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Scenario file (TOML).
    config: PathBuf,
    /// Override the node count parameter `n`.
    #[arg(long)]
    n: Option<usize>,
    /// Output directory (default: the scenario's `output`, else `out/<name>`).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Config {
            field: THREADS_ENV.into(),
            reason: format!("expected a positive integer, got {value:?}"),
        })?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn execute(command: Command, args: RunArgs) -> Result<bool> {
    configure_threads()?;
    let mut scenario = Scenario::load(&args.config)?;
    if let Some(n) = args.n {
        scenario.n = n;
    }
    let out = args
        .out
        .or_else(|| scenario.output.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(&scenario.name));
    let report = run(&scenario, command, &out)?;
    for check in &report.checks {
        println!("{}", check.summary());
    }
    println!("wrote {}", out.display());
    Ok(report.all_pass)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (command, args) = match cli.command {
        Sub::Solve(a) => (Command::Solve, a),
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Oracle(a) => (Command::Oracle, a),
        Sub::Phaseless(a) => (Command::Phaseless, a),
    };
    match execute(command, args) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
