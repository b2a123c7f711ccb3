//! Machine-readable experiment summaries.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::FitResult;
use crate::spectral::Grid;

pub const REPORT_HEADER: &str = "numerical consistency evidence for inequalities with non-explicit constants; not a proof";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub grid: Option<Grid>,
    pub threads: usize,
    pub constants_version: u32,
    pub crate_version: String,
}

impl Provenance {
    pub fn new(seed: u64, grid: Option<Grid>, constants_version: u32) -> Self {
        Provenance {
            seed,
            grid,
            threads: super::thread_count(),
            constants_version,
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// One declared assertion: `value` against `limit` in the stated direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    /// `"<="` or `">="`.
    pub relation: String,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, relation: "<=".into(), pass: value <= limit }
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, relation: ">=".into(), pass: value >= limit }
    }

    /// A boolean outcome recorded as 1/0 against 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::at_least(name, if ok { 1.0 } else { 0.0 }, 1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedFit {
    pub name: String,
    pub fit: FitResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub header: String,
    pub params: Value,
    pub measurements: Value,
    pub fits: Vec<NamedFit>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub provenance: Provenance,
}

impl ExperimentReport {
    pub fn new(name: impl Into<String>, params: Value, provenance: Provenance) -> Self {
        ExperimentReport {
            name: name.into(),
            header: REPORT_HEADER.into(),
            params,
            measurements: Value::Null,
            fits: Vec::new(),
            checks: Vec::new(),
            pass: true,
            provenance,
        }
    }

    pub fn measurements(mut self, m: impl Serialize) -> Self {
        self.measurements = serde_json::to_value(m).expect("plain data");
        self
    }

    pub fn fit(&mut self, name: impl Into<String>, fit: FitResult) {
        self.fits.push(NamedFit { name: name.into(), fit });
    }

    pub fn check(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
