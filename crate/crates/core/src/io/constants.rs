//! Versioned table of calibrated constants.
//!
//! The estimates being checked hold up to non-explicit constants. Each one
//! is calibrated once on a held-out ensemble (see the `calibrate`
//! subcommand), multiplied by a safety margin and pinned here; the checks
//! then assert boundedness against the pinned value.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::ModelKind;
use crate::symbols::AdmissiblePair;

const BUNDLED: &str = include_str!("../../data/constants.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinnedConstants {
    pub version: u32,
    /// Bound on the Strichartz ratio, keyed by `d{d}_q{q}_r{r}`.
    pub strichartz: BTreeMap<String, f64>,
    /// Grönwall rate `c`, keyed by model.
    pub gronwall_c: BTreeMap<String, f64>,
    pub coercivity_c1: f64,
    pub coercivity_c2: f64,
    /// Commutator bounds, keyed by `sqrt_t` / `inv_sqrt_t`.
    pub commutator: BTreeMap<String, f64>,
    /// Lower-bound factor `κ` of the lifespan check, keyed by model.
    pub lifespan_kappa: BTreeMap<String, f64>,
    /// Bound on the refined Strichartz ratio for Whitham runs.
    pub refined: f64,
    /// How the values were obtained.
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
}

impl PinnedConstants {
    pub fn bundled() -> Self {
        serde_json::from_str(BUNDLED).expect("bundled constants parse")
    }

    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::bundled()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
                serde_json::from_str(&text).map_err(|e| Error::Format {
                    path: p.to_path_buf(),
                    reason: e.to_string(),
                })
            }
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("plain data");
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    fn lookup(map: &BTreeMap<String, f64>, key: &str, what: &str) -> Result<f64> {
        map.get(key)
            .copied()
            .ok_or_else(|| Error::config("constants", format!("no pinned {what} for `{key}`")))
    }

    pub fn strichartz_key(d: usize, q: &str, r: &str) -> String {
        format!("d{d}_q{q}_r{r}")
    }

    pub fn strichartz_bound(&self, d: usize, q: &str, r: &str) -> Result<f64> {
        Self::lookup(&self.strichartz, &Self::strichartz_key(d, q, r), "Strichartz bound")
    }

    pub fn strichartz_for(&self, pair: &AdmissiblePair) -> Result<f64> {
        self.strichartz_bound(pair.dim(), &pair.q().to_string(), &pair.r().to_string())
    }

    pub fn gronwall(&self, model: ModelKind) -> Result<f64> {
        Self::lookup(&self.gronwall_c, &model.to_string(), "Gronwall rate")
    }

    pub fn kappa(&self, model: ModelKind) -> Result<f64> {
        Self::lookup(&self.lifespan_kappa, &model.to_string(), "lifespan factor")
    }

    pub fn commutator_bound(&self, key: &str) -> Result<f64> {
        Self::lookup(&self.commutator, key, "commutator bound")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_is_complete() {
        let c = PinnedConstants::bundled();
        for m in [ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D] {
            assert!(c.gronwall(m).unwrap() > 0.0);
            assert!(c.kappa(m).unwrap() > 0.0);
        }
        assert!(c.strichartz_bound(1, "8", "4").unwrap() > 0.0);
        assert!(c.strichartz_bound(2, "4", "4").unwrap() > 0.0);
        assert!(c.commutator_bound("sqrt_t").unwrap() > 0.0);
        assert!(c.commutator_bound("inv_sqrt_t").unwrap() > 0.0);
        assert!(c.strichartz_bound(3, "4", "4").is_err());
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let c = PinnedConstants::bundled();
        c.save(&path).unwrap();
        assert_eq!(PinnedConstants::load(Some(&path)).unwrap(), c);
    }
}
