//! End-to-end ratio for the refined Strichartz bound on Whitham runs:
//! `‖∂_xη‖_{L²_T L^∞} / (μ^{-1/5-θ}T^{3/10+θ}‖η‖_{L^∞_T H^r}
//!  + εμ^{-2/5-θ}T^{11/10+θ}‖η‖²_{L^∞_T H^r})`.

use serde::{Deserialize, Serialize};

use super::strichartz::trapezoid;
use super::DecompositionParams;
use crate::error::{Error, Result};
use crate::functionals::{p_quantity, sobolev_norm};
use crate::integrator::Trajectory;
use crate::models::ModelKind;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinedReport {
    pub t_end: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub hr_max: f64,
    pub decomposition: DecompositionParams,
}

/// Uses the stored snapshots; `r` is the run's `s`.
pub fn refined_strichartz_check(traj: &Trajectory, dp: &DecompositionParams) -> Result<RefinedReport> {
    let p = &traj.params;
    if p.model != ModelKind::Whitham1D {
        return Err(Error::param("model", "the refined check applies to the Whitham equation"));
    }
    if traj.snapshots.len() < 2 {
        return Err(Error::MissingSnapshots);
    }
    let times: Vec<f64> = traj.snapshots.iter().map(|s| s.t).collect();
    let t_end = times[times.len() - 1] - times[0];
    let dx_sq = traj
        .snapshots
        .iter()
        .map(|s| p_quantity(s, p.mu).map(|v| v * v))
        .collect::<Result<Vec<_>>>()?;
    let lhs = trapezoid(&times, &dx_sq).sqrt();
    let hr_max = traj
        .snapshots
        .iter()
        .map(|s| sobolev_norm(&s.eta, p.s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let th = dp.theta;
    let rhs = p.mu.powf(-0.2 - th) * t_end.powf(0.3 + th) * hr_max
        + p.eps * p.mu.powf(-0.4 - th) * t_end.powf(1.1 + th) * hr_max * hr_max;
    let ratio = if rhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok(RefinedReport {
        t_end,
        lhs,
        rhs,
        ratio,
        hr_max,
        decomposition: *dp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{evolve, StepConfig};
    use crate::models::{DataSpec, ModelParams, State};
    use crate::spectral::Grid;

    fn run(eps: f64, a: f64, t_end: f64) -> Trajectory {
        let g = Grid::new(1, 256, 60.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, eps, 0.5, 1.7, 0.5).unwrap();
        let eta = DataSpec::Gaussian { a, w: 1.5 }.sample_scalar(&g).unwrap();
        let cfg = StepConfig { dt: 0.05, t_end, snapshot_every: 2, ..StepConfig::default() };
        evolve(&State::scalar(eta), &p, &cfg).unwrap()
    }

    #[test]
    fn zero_data_ratio_is_zero() {
        let traj = run(0.5, 0.0, 1.0);
        let dp = DecompositionParams::preset(1, 0.5, 1.0).unwrap();
        let r = refined_strichartz_check(&traj, &dp).unwrap();
        assert_eq!((r.lhs, r.rhs, r.ratio), (0.0, 0.0, 0.0));
    }

    #[test]
    fn linear_ratio_is_stable_in_t() {
        let a = refined_strichartz_check(&run(0.0, 0.3, 5.0), &DecompositionParams::preset(1, 0.5, 5.0).unwrap()).unwrap();
        let b = refined_strichartz_check(&run(0.0, 0.3, 10.0), &DecompositionParams::preset(1, 0.5, 10.0).unwrap()).unwrap();
        assert!(a.lhs.is_finite() && a.ratio > 0.0);
        let q = b.ratio / a.ratio;
        assert!(q > 0.5 && q < 2.0, "{q}");
    }

    #[test]
    fn snapshots_required() {
        let g = Grid::new(1, 64, 20.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, 0.5, 0.5, 1.7, 0.5).unwrap();
        let cfg = StepConfig { dt: 0.1, t_end: 1.0, ..StepConfig::default() };
        let traj = evolve(&State::zeros(ModelKind::Whitham1D, g), &p, &cfg).unwrap();
        let dp = DecompositionParams::preset(1, 0.5, 1.0).unwrap();
        assert!(matches!(refined_strichartz_check(&traj, &dp), Err(Error::MissingSnapshots)));
    }
}
