//! Run configuration: one TOML file per run.
//!
//! ```toml
//! seed = 7
//! output = "out/whitham"
//!
//! [model]
//! kind = "whitham1d"   # whitham1d | wb1d | wb2d
//! eps = 0.5            # (0, 1]
//! mu = 1.0             # (0, 1]
//!
//! [grid]
//! n = 2048
//! length = 100.0
//!
//! [data]
//! eta = "gaussian(1.0, 4.0)"
//!
//! [step]
//! dt = 0.01
//! t_end = 50.0
//! ```
//!
//! Unknown keys are rejected, every default is written back into the
//! loaded value so reports can echo the complete configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrator::StepConfig;
use crate::models::{DataSpec, InitialData, ModelKind, ModelParams};
use crate::spectral::Grid;
use crate::symbols::{AdmissiblePair, Exponent};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: ModelKind,
    pub eps: f64,
    pub mu: f64,
    /// Defaults to the model's regularity index.
    pub s: Option<f64>,
    #[serde(default = "default_h0")]
    pub h0: f64,
    /// Accept `s` at or below the existence threshold with a warning.
    #[serde(default)]
    pub allow_low_regularity: bool,
}

fn default_h0() -> f64 {
    0.5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Defaults to the model dimension.
    pub dim: Option<usize>,
    pub n: usize,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    pub eta: DataSpec,
    #[serde(default = "zero_data")]
    pub v: DataSpec,
}

fn zero_data() -> DataSpec {
    DataSpec::Zero
}

impl Default for DataSection {
    fn default() -> Self {
        DataSection {
            eta: DataSpec::Zero,
            v: DataSpec::Zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecayBlock {
    pub lambda: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
}

impl Default for DecayBlock {
    fn default() -> Self {
        DecayBlock {
            lambda: 8.0,
            t_min: 20.0,
            t_max: 140.0,
            samples: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StrichartzBlock {
    /// Defaults to `(8, 4)` in 1D and `(4, 4)` in 2D.
    pub q: Option<Exponent>,
    pub r: Option<Exponent>,
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    pub horizon_factor: f64,
    pub samples: usize,
    pub max_spread: f64,
}

impl Default for StrichartzBlock {
    fn default() -> Self {
        StrichartzBlock {
            q: None,
            r: None,
            lambdas: vec![2.0, 4.0, 8.0, 16.0, 32.0, 64.0],
            mus: vec![0.01, 0.1, 1.0],
            horizon_factor: 20.0,
            samples: 96,
            max_spread: 4.0,
        }
    }
}

impl StrichartzBlock {
    pub fn pair(&self, d: usize) -> Result<AdmissiblePair> {
        let (q, r) = match (self.q, self.r, d) {
            (Some(q), Some(r), _) => (q, r),
            (None, None, 1) => (Exponent::integer(8)?, Exponent::integer(4)?),
            (None, None, _) => (Exponent::integer(4)?, Exponent::integer(4)?),
            _ => return Err(Error::config("strichartz.q", "set both q and r or neither")),
        };
        AdmissiblePair::new(q, r, d).map_err(|e| Error::config("strichartz.q", e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScalingBlock {
    pub mus: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub t: f64,
}

impl Default for ScalingBlock {
    fn default() -> Self {
        ScalingBlock {
            mus: vec![0.04, 0.25],
            lambdas: vec![2.0, 8.0],
            t: 10.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RefinedBlock {
    pub theta: f64,
    pub snapshot_every: usize,
}

impl Default for RefinedBlock {
    fn default() -> Self {
        RefinedBlock {
            theta: 0.05,
            snapshot_every: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CommutatorBlock {
    pub mus: Vec<f64>,
    pub ensemble_size: usize,
    /// Defaults to the model's `s`.
    pub s: Option<f64>,
    pub max_mu_spread: f64,
}

impl Default for CommutatorBlock {
    fn default() -> Self {
        CommutatorBlock {
            mus: vec![1e-3, 1e-2, 0.1, 1.0],
            ensemble_size: 24,
            s: None,
            max_mu_spread: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GronwallBlock {
    /// Defaults to the pinned constant for the model.
    pub c: Option<f64>,
    /// Seed offsets of the ensemble members.
    pub members: usize,
}

impl Default for GronwallBlock {
    fn default() -> Self {
        GronwallBlock { c: None, members: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LifespanBlock {
    pub eps: Vec<f64>,
    pub mu: Vec<f64>,
}

impl Default for LifespanBlock {
    fn default() -> Self {
        LifespanBlock {
            eps: vec![0.1, 0.2, 0.4, 0.8],
            mu: vec![0.1, 0.3, 1.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CalibrateBlock {
    /// First seed offset of the calibration ensemble, disjoint from the
    /// offsets the checks use.
    pub seed_offset: u64,
    pub members: usize,
    /// Multiplicative safety margin applied to every calibrated constant.
    pub margin: f64,
}

impl Default for CalibrateBlock {
    fn default() -> Self {
        CalibrateBlock {
            seed_offset: 1000,
            members: 10,
            margin: 1.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Pinned-constants file; the bundled table when absent.
    pub constants: Option<PathBuf>,
    pub model: ModelSection,
    pub grid: GridSection,
    #[serde(default)]
    pub data: DataSection,
    #[serde(default)]
    pub step: StepConfig,
    #[serde(default)]
    pub decay: DecayBlock,
    #[serde(default)]
    pub strichartz: StrichartzBlock,
    #[serde(default)]
    pub scaling: ScalingBlock,
    #[serde(default)]
    pub refined: RefinedBlock,
    #[serde(default)]
    pub commutator: CommutatorBlock,
    #[serde(default)]
    pub gronwall: GronwallBlock,
    #[serde(default)]
    pub lifespan: LifespanBlock,
    #[serde(default)]
    pub calibrate: CalibrateBlock,
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn params(&self) -> Result<ModelParams> {
        let m = &self.model;
        let p = ModelParams {
            model: m.kind,
            eps: m.eps,
            mu: m.mu,
            s: m.s.unwrap_or(m.kind.default_s()),
            h0: m.h0,
        };
        p.validate(m.allow_low_regularity)?;
        Ok(p)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.dim.unwrap_or(self.model.kind.dim()), self.grid.n, self.grid.length)
    }

    pub fn initial_data(&self) -> InitialData {
        InitialData::new(self.data.eta.clone(), self.data.v.clone())
    }

    /// Fills defaults that depend on other keys and checks every invariant.
    fn materialize(mut self) -> Result<Self> {
        let kind = self.model.kind;
        self.model.s.get_or_insert(kind.default_s());
        self.grid.dim.get_or_insert(kind.dim());
        self.commutator.s.get_or_insert(self.model.s.unwrap_or(kind.default_s()));

        let eps = self.model.eps;
        if !(eps.is_finite() && eps > 0.0 && eps <= 1.0) {
            return Err(Error::config("model.eps", format!("must lie in (0, 1], got {eps}")));
        }
        self.params().map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::config(&format!("model.{name}"), reason),
            other => other,
        })?;
        let grid = self.grid().map_err(|e| Error::config("grid", e.to_string()))?;
        if grid.dim() != kind.dim() {
            return Err(Error::config("grid.dim", format!("{kind} needs dim = {}", kind.dim())));
        }
        if kind == ModelKind::WB2D && !self.data.v.is_curl_free() {
            return Err(Error::config(
                "data.v",
                format!(
                    "`{}` is not curl-free; wb2d needs potential_gradient(seed, lambda_min, lambda_max, amp) or zero",
                    self.data.v
                ),
            ));
        }
        self.step.validate().map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::config(&format!("step.{name}"), reason),
            other => other,
        })?;
        for (key, list) in [
            ("strichartz.mus", &self.strichartz.mus),
            ("scaling.mus", &self.scaling.mus),
            ("commutator.mus", &self.commutator.mus),
            ("lifespan.mu", &self.lifespan.mu),
        ] {
            if let Some(m) = list.iter().find(|m| !(**m > 0.0 && **m <= 1.0)) {
                return Err(Error::config(key, format!("mu must lie in (0, 1], got {m}")));
            }
        }
        if let Some(e) = self.lifespan.eps.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
            return Err(Error::config("lifespan.eps", format!("eps must lie in (0, 1], got {e}")));
        }
        self.strichartz.pair(kind.dim())?;
        Ok(self)
    }
}

/// Parses and validates configuration text.
pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let de = toml::Deserializer::parse(text).map_err(|e| Error::config("<syntax>", e.message().to_string()))?;
    let raw: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let key = e.path().to_string();
        Error::config(if key == "." { "<root>" } else { &key }, e.inner().message().to_string())
    })?;
    raw.materialize()
}

pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text)
}
