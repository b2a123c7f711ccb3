//! Equivalence of the energy `E_s` and the `V^s_μ` norm:
//! `h₀‖U‖²_V ≤ C₁ E_s ≤ C₁C₂ H ‖U‖²_V`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{energy_wb, h_min, h_quantity, v_mu_norm};
use crate::models::{DataSpec, InitialData, ModelKind, ModelParams, State};
use crate::spectral::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoercivityRow {
    pub mu: f64,
    pub eps: f64,
    pub seed: u64,
    pub h0: f64,
    pub h: f64,
    pub v_norm_sq: f64,
    pub energy: f64,
    /// `h₀‖U‖²_V / (C₁E_s)`, at most 1 when the lower bound holds.
    pub lower_ratio: f64,
    /// `E_s / (C₂ H ‖U‖²_V)`, at most 1 when the upper bound holds.
    pub upper_ratio: f64,
}

/// Both sides for one state; `h₀` is the state's own minimal depth.
pub fn coercivity_row(state: &State, p: &ModelParams, c1: f64, c2: f64, seed: u64) -> Result<CoercivityRow> {
    if !p.model.is_boussinesq() {
        return Err(Error::param("model", "the energy equivalence concerns the Whitham-Boussinesq systems"));
    }
    let h0 = h_min(state, p.eps);
    if h0 <= 0.0 {
        return Err(Error::NonCoercive { h_min: h0 });
    }
    let v_norm_sq = v_mu_norm(state, p.s, p.mu)?.powi(2);
    let energy = energy_wb(state, p)?;
    let h = h_quantity(state, p.eps);
    Ok(CoercivityRow {
        mu: p.mu,
        eps: p.eps,
        seed,
        h0,
        h,
        v_norm_sq,
        energy,
        lower_ratio: h0 * v_norm_sq / (c1 * energy),
        upper_ratio: energy / (c2 * h * v_norm_sq),
    })
}

/// Random states: band-limited `η` scaled to reach depth `1 + εη = h_target`
/// somewhere, and a curl-free `v`.
pub fn coercivity_state(model: ModelKind, grid: &Grid, eps: f64, h_target: f64, seed: u64) -> Result<State> {
    let top = grid.dyadic_bands().last().copied().unwrap_or(1.0);
    let eta = DataSpec::RandomBand { lambda_min: 0.0, lambda_max: top, seed, amp: 1.0 }.sample_scalar(grid)?;
    // scale so that min(1 + εη) = h_target
    let depth = (1.0 - h_target) / (eps * (-eta.min()).max(1e-300));
    let v = DataSpec::PotentialGradient { seed: seed + 1, lambda_min: 0.0, lambda_max: top, amp: 1.0 };
    let mut st = InitialData::new(DataSpec::Zero, v).state(model, grid)?;
    st.eta = eta.scaled(depth);
    Ok(st)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoercivityReport {
    pub c1: f64,
    pub c2: f64,
    pub rows: Vec<CoercivityRow>,
    pub max_lower: f64,
    pub max_upper: f64,
    pub pass: bool,
}

/// Ensemble over `mus × eps_grid × seeds` with depths down to `0.1`.
pub fn coercivity_check(
    model: ModelKind,
    grid: &Grid,
    mus: &[f64],
    eps_grid: &[f64],
    seeds: &[u64],
    c1: f64,
    c2: f64,
) -> Result<CoercivityReport> {
    let targets = [0.1, 0.5, 0.9];
    let mut keys = Vec::new();
    for &mu in mus {
        for &eps in eps_grid {
            for (i, &seed) in seeds.iter().enumerate() {
                keys.push((mu, eps, seed, targets[i % targets.len()]));
            }
        }
    }
    let rows = super::run_jobs(&keys, |&(mu, eps, seed, target)| {
        let p = ModelParams::new(model, eps, mu, model.default_s(), target)?;
        let st = coercivity_state(model, grid, eps, target, seed)?;
        coercivity_row(&st, &p, c1, c2, seed)
    })?;
    let max_lower = rows.iter().map(|r| r.lower_ratio).fold(0.0, f64::max);
    let max_upper = rows.iter().map(|r| r.upper_ratio).fold(0.0, f64::max);
    Ok(CoercivityReport {
        c1,
        c2,
        rows,
        max_lower,
        max_upper,
        pass: max_lower <= 1.0 && max_upper <= 1.0,
    })
}
