//! Seeded run ensembles shared by the Grönwall check, the refined
//! Strichartz check and calibration.
//!
//! Members differ only in the seeds of their random data families. The
//! standard (checked) ensemble uses offsets `0..n`; calibration uses a
//! disjoint block starting at a large offset so the constants are never
//! fitted on the runs they are asserted against.

use serde::{Deserialize, Serialize};

use super::gronwall::{gronwall_check, GronwallReport};
use super::refined::{refined_strichartz_check, RefinedReport};
use super::{run_jobs, DecompositionParams};
use crate::error::Result;
use crate::integrator::{evolve, StepConfig, Trajectory};
use crate::models::{DataSpec, InitialData, ModelKind, ModelParams};
use crate::spectral::Grid;

/// Seed offset of the calibration block.
pub const CALIBRATION_OFFSET: u64 = 1000;
pub const ENSEMBLE_SIZE: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSetup {
    pub grid: Grid,
    pub params: ModelParams,
    pub data: InitialData,
    pub step: StepConfig,
}

impl EnsembleSetup {
    /// Small-grid, moderately nonlinear runs that reach doubling within a
    /// few time units.
    pub fn standard(model: ModelKind) -> Self {
        let band = |seed, amp| DataSpec::RandomBand { lambda_min: 1.0, lambda_max: 4.0, seed, amp };
        let step = StepConfig {
            dt: 0.005,
            t_end: 10.0,
            record_every: 1,
            stop_at_doubling: true,
            ..StepConfig::default()
        };
        // past the doubling point, so the norm growth exceeds the H/h0 prefactor
        let wb_step = StepConfig { t_end: 3.0, stop_at_doubling: false, ..step.clone() };
        let length = 8.0 * std::f64::consts::PI;
        match model {
            // snapshots feed the refined Strichartz check
            ModelKind::Whitham1D => EnsembleSetup {
                grid: Grid::new(1, 256, length).expect("valid grid"),
                params: ModelParams::new(model, 0.5, 1.0, model.default_s(), 0.5).expect("valid params"),
                data: InitialData::new(band(0, 1.0), DataSpec::Zero),
                step: StepConfig { snapshot_every: 5, ..step },
            },
            ModelKind::WB1D => EnsembleSetup {
                grid: Grid::new(1, 256, length).expect("valid grid"),
                params: ModelParams::new(model, 0.3, 1.0, model.default_s(), 0.3).expect("valid params"),
                data: InitialData::new(band(0, 1.0), band(1 << 20, 1.0)),
                step: wb_step,
            },
            ModelKind::WB2D => EnsembleSetup {
                grid: Grid::new(2, 64, length / 2.0).expect("valid grid"),
                params: ModelParams::new(model, 0.3, 1.0, model.default_s(), 0.3).expect("valid params"),
                data: InitialData::new(
                    DataSpec::RandomBand { lambda_min: 1.0, lambda_max: 3.0, seed: 0, amp: 1.0 },
                    DataSpec::PotentialGradient { seed: 1 << 20, lambda_min: 1.0, lambda_max: 3.0, amp: 1.0 },
                ),
                step: wb_step,
            },
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        EnsembleSetup { data: self.data.reseeded(seed), ..self.clone() }
    }

    pub fn run(&self) -> Result<Trajectory> {
        let state = self.data.state(self.params.model, &self.grid)?;
        evolve(&state, &self.params, &self.step)
    }

    /// Trajectories for seed offsets `base..base + size`, in seed order.
    pub fn run_members(&self, base: u64, size: usize) -> Result<Vec<Trajectory>> {
        let seeds: Vec<u64> = (base..base + size as u64).collect();
        run_jobs(&seeds, |&s| self.with_seed(s).run())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GronwallEnsembleReport {
    pub model: ModelKind,
    pub c: f64,
    pub seeds: Vec<u64>,
    pub members: Vec<GronwallReport>,
    pub max_ratio: f64,
    pub max_required_c: f64,
    pub pass: bool,
}

pub fn gronwall_ensemble(trajs: &[Trajectory], seeds: &[u64], c: f64) -> GronwallEnsembleReport {
    let members: Vec<GronwallReport> = trajs.iter().map(|t| gronwall_check(t, c)).collect();
    GronwallEnsembleReport {
        model: trajs.first().map_or(ModelKind::Whitham1D, |t| t.params.model),
        c,
        seeds: seeds.to_vec(),
        max_ratio: members.iter().map(|m| m.max_ratio).fold(0.0, f64::max),
        max_required_c: members.iter().map(|m| m.required_c).fold(0.0, f64::max),
        pass: members.iter().all(|m| m.pass),
        members,
    }
}

/// Refined Strichartz ratios of Whitham runs, each over its own horizon.
pub fn refined_ensemble(trajs: &[Trajectory], theta: f64) -> Result<Vec<RefinedReport>> {
    trajs
        .iter()
        .map(|t| {
            let t_end = t.times.last().copied().unwrap_or(0.0) - t.times.first().copied().unwrap_or(0.0);
            let mut dp = DecompositionParams::preset(1, t.params.mu, t_end.max(f64::MIN_POSITIVE))?;
            dp.theta = theta;
            refined_strichartz_check(t, &dp)
        })
        .collect()
}
