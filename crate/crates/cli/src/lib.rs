//! Subcommand dispatch for `whitham-lab`.
//!
//! Every run writes `summary.json` into its output directory, also when a
//! check fails or the run is refused. Exit status: 0 when every declared
//! check passes, 1 when a check fails, 2 on invalid input or I/O errors.

mod commands;

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use whitham_core::experiments::ExperimentReport;
use whitham_core::io::{parse_config, PinnedConstants, RunConfig};

pub use commands::run;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Simulate,
    DecayTest,
    StrichartzTest,
    ScalingTest,
    RefinedCheck,
    CommutatorProbe,
    GronwallCheck,
    LifespanSweep,
    Calibrate,
    Norms,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Simulate,
        Command::DecayTest,
        Command::StrichartzTest,
        Command::ScalingTest,
        Command::RefinedCheck,
        Command::CommutatorProbe,
        Command::GronwallCheck,
        Command::LifespanSweep,
        Command::Calibrate,
        Command::Norms,
    ];

    pub fn name(self) -> String {
        self.to_possible_value().map_or_else(String::new, |v| v.get_name().to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// Result of one run: the experiment report and the files written.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub report: ExperimentReport,
    pub outputs: Vec<String>,
}

#[derive(Serialize)]
struct Summary<'a> {
    command: Command,
    status: Status,
    error: Option<String>,
    config: Option<&'a RunConfig>,
    outputs: &'a [String],
    report: Option<&'a ExperimentReport>,
}

fn write_summary(dir: &Path, summary: &Summary) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let text = serde_json::to_string_pretty(summary).expect("plain data");
    std::fs::write(dir.join("summary.json"), text + "\n")
}

/// Loads the config, applies the `--out`/`--seed` overrides, runs the
/// subcommand and writes the summary.
pub fn execute(cmd: Command, config: &Path, out: Option<PathBuf>, seed: Option<u64>) -> Status {
    let cfg = parse_config(config).map(|mut c| {
        if let Some(o) = &out {
            c.output = o.clone();
        }
        if let Some(s) = seed {
            c.seed = s;
        }
        c
    });
    let dir = match (&cfg, &out) {
        (Ok(c), _) => c.output.clone(),
        (Err(_), Some(o)) => o.clone(),
        (Err(_), None) => PathBuf::from("out"),
    };
    let result = match &cfg {
        Ok(c) => run(cmd, c).map_err(|e| e.to_string()),
        Err(e) => Err(e.to_string()),
    };
    let (status, error, outcome) = match result {
        Ok(o) if o.report.pass => (Status::Pass, None, Some(o)),
        Ok(o) => (Status::Fail, None, Some(o)),
        Err(e) => (Status::Error, Some(e), None),
    };
    match (&status, &error, &outcome) {
        (_, Some(e), _) => log::error!("{}: {e}", cmd.name()),
        (Status::Fail, _, Some(o)) => {
            for c in o.report.failed_checks() {
                log::error!("check failed: {} = {:.6e} (needs {} {:.6e})", c.name, c.value, c.relation, c.limit);
            }
        }
        _ => log::info!("{}: all checks passed", cmd.name()),
    }
    let summary = Summary {
        command: cmd,
        status,
        error,
        config: cfg.as_ref().ok(),
        outputs: outcome.as_ref().map_or(&[], |o| &o.outputs),
        report: outcome.as_ref().map(|o| &o.report),
    };
    if let Err(e) = write_summary(&dir, &summary) {
        log::error!("cannot write {}: {e}", dir.join("summary.json").display());
        return Status::Error;
    }
    status
}

pub(crate) fn constants(cfg: &RunConfig) -> whitham_core::Result<PinnedConstants> {
    PinnedConstants::load(cfg.constants.as_deref())
}
