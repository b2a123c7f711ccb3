use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use whitham_lab::{execute, Command};

/// Runs one experiment from a TOML config and writes CSV, plot data and
/// `summary.json` to the output directory.
#[derive(Parser)]
#[command(name = "whitham-lab", version)]
struct Cli {
    command: Command,
    /// Run configuration (TOML).
    config: PathBuf,
    /// Overrides `output` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `seed` from the config.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let status = execute(cli.command, &cli.config, cli.out, cli.seed);
    ExitCode::from(status.code())
}
