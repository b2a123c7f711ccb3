//! The standard experiment definitions shared by calibration, the
//! acceptance suite and the default configs.

use super::{LifespanConfig, StrichartzOptions};
use crate::error::Result;
use crate::integrator::StepConfig;
use crate::models::{DataSpec, InitialData, ModelKind};
use crate::spectral::Grid;
use crate::symbols::{AdmissiblePair, Exponent};

pub const STRICHARTZ_MUS: [f64; 3] = [0.01, 0.1, 1.0];
pub const STRICHARTZ_LAMBDAS: [f64; 6] = [2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
pub const PROBE_MUS: [f64; 4] = [1e-3, 1e-2, 0.1, 1.0];
pub const COMMUTATOR_ENSEMBLE: usize = 24;
pub const COERCIVITY_EPS: [f64; 3] = [0.1, 0.5, 1.0];
pub const COERCIVITY_SEEDS: usize = 6;
pub const LIFESPAN_EPS: [f64; 4] = [0.1, 0.2, 0.4, 0.8];
pub const LIFESPAN_MUS: [f64; 3] = [0.1, 0.3, 1.0];

/// `(8, 4)` in 1D, `(4, 4)` in 2D.
pub fn strichartz_pair(d: usize) -> Result<AdmissiblePair> {
    let q = if d == 1 { 8 } else { 4 };
    AdmissiblePair::new(Exponent::integer(q)?, Exponent::integer(4)?, d)
}

pub fn strichartz_options() -> StrichartzOptions {
    StrichartzOptions::default()
}

/// Probe frequencies reach about 2, so `√μ|ξ| ≲ 2` for every `μ ≤ 1`.
pub fn commutator_grid() -> Grid {
    Grid::new(1, 256, 64.0 * std::f64::consts::PI).expect("valid grid")
}

pub fn commutator_s() -> f64 {
    ModelKind::WB1D.default_s()
}

pub fn coercivity_grid(model: ModelKind) -> Grid {
    match model.dim() {
        1 => Grid::new(1, 256, 8.0 * std::f64::consts::PI).expect("valid grid"),
        _ => Grid::new(2, 64, 4.0 * std::f64::consts::PI).expect("valid grid"),
    }
}

/// A large positive bump, so that every `ε` of the grid doubles within the
/// horizon (except where dispersion wins outright) and `1 + εη > 0`.
pub fn lifespan_config(model: ModelKind) -> LifespanConfig {
    let data = InitialData::new(DataSpec::Gaussian { a: 4.0, w: 2.0 }, DataSpec::Zero);
    let (grid, s, t_end) = match model {
        ModelKind::Whitham1D => (Grid::new(1, 2048, 100.0), 3.0, 1000.0),
        ModelKind::WB1D => (Grid::new(1, 2048, 100.0), 3.0, 100.0),
        ModelKind::WB2D => (Grid::new(2, 64, 25.0), model.default_s(), 20.0),
    };
    LifespanConfig {
        model,
        grid: grid.expect("valid grid"),
        data,
        eps_grid: LIFESPAN_EPS.to_vec(),
        mu_grid: LIFESPAN_MUS.to_vec(),
        s,
        h0: 0.5,
        step: StepConfig {
            dt: 0.01,
            t_end,
            record_every: 50,
            stop_at_doubling: true,
            ..StepConfig::default()
        },
    }
}
