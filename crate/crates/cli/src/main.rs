//! `explicit-formula`: verify explicit formulas for elliptic curves over
//! finite fields and for the Riemann zeta function.
//!
//! Exit status: 0 when every requested check passes, 1 when one fails,
//! 2 on invalid input.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, Overrides, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(name = "explicit-formula", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare every route of a function-field identity and write a JSON report.
    VerifyFf(Common),
    /// Compare both sides of the Riemann explicit formula.
    VerifyRiemann(Common),
    /// Write the closed-orbit spectrum as CSV (n,length,multiplicity).
    Orbits(Common),
    /// Write |spectral(K) - geometric| as CSV (K,residual).
    ResidualCurve(Common),
    /// Compare closed-point counts against direct enumeration.
    OracleCheck(Common),
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Zero ordinates, one per line.
    #[arg(long)]
    zeros_file: Option<PathBuf>,
    /// Truncation budget for the spectral sums.
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long)]
    seed: Option<u64>,
    /// Highest closed-point degree to tabulate.
    #[arg(long)]
    n_max: Option<usize>,
    /// eq2, cor34, thm41 or all.
    #[arg(long)]
    identity: Option<String>,
}

type Action = fn(&RunConfig) -> Result<bool, CliError>;

fn run(cli: Cli) -> Result<bool, CliError> {
    let (name, common, action): (&str, Common, Action) = match cli.command {
        Command::VerifyFf(c) => ("verify-ff", c, commands::verify_ff),
        Command::VerifyRiemann(c) => ("verify-riemann", c, commands::verify_riemann),
        Command::Orbits(c) => ("orbits", c, commands::orbits_csv),
        Command::ResidualCurve(c) => ("residual-curve", c, commands::residual_curve_csv),
        Command::OracleCheck(c) => ("oracle-check", c, commands::oracle_check),
    };
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        identity: common.identity,
        epsilon: common.epsilon,
        n_max: common.n_max,
        seed: common.seed,
        zeros_file: common.zeros_file,
        out: common.out,
    };
    let cfg = RunConfig::resolve(name, file, flags)?;
    action(&cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("FAIL");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
