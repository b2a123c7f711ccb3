//! Grönwall-type growth bounds along computed trajectories.
//!
//! Whitham: `‖η(t)‖²_{H^s} ≤ exp(cε∫₀ᵗ‖∂_xη‖_∞) ‖η₀‖²_{H^s}`.
//! Systems: `‖U(t)‖²_{V^s_μ} ≤ H(t) h₀^{-1} exp(cε∫₀ᵗ H𝒫) ‖U₀‖²_{V^s_μ}`,
//! where `h₀` is the smallest non-cavitation depth seen along the run (the
//! tightest value the hypothesis allows).

use serde::{Deserialize, Serialize};

use super::strichartz::trapezoid_cumulative;
use crate::integrator::Trajectory;

/// Slack for round-off in a ratio whose exact value may be 1.
pub const RATIO_ROUNDOFF: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GronwallReport {
    pub c: f64,
    pub max_ratio: f64,
    /// Ratio at each recorded time.
    pub ratios: Vec<f64>,
    /// Smallest `c` for which the bound holds along this trajectory.
    pub required_c: f64,
    pub h0: f64,
    pub pass: bool,
}

struct Pieces {
    /// `log` of the norm ratio, minus the prefactor for the systems.
    log_growth: Vec<f64>,
    /// `ε∫₀ᵗ` of the rate.
    exponent: Vec<f64>,
    h0: f64,
}

fn pieces(traj: &Trajectory) -> Pieces {
    let p = &traj.params;
    let recs = &traj.records;
    if p.model.is_boussinesq() {
        let h0 = recs.iter().map(|r| r.h_min).fold(f64::INFINITY, f64::min);
        let v0 = recs[0].vsmu.powi(2);
        let rate: Vec<f64> = recs.iter().map(|r| r.h_of_t * r.p_of_t).collect();
        let integral = trapezoid_cumulative(&traj.times, &rate);
        Pieces {
            log_growth: recs.iter().map(|r| (r.vsmu.powi(2) * h0 / (r.h_of_t * v0)).ln()).collect(),
            exponent: integral.iter().map(|i| p.eps * i).collect(),
            h0,
        }
    } else {
        let n0 = recs[0].hs.powi(2);
        let rate: Vec<f64> = recs.iter().map(|r| r.p_of_t).collect();
        let integral = trapezoid_cumulative(&traj.times, &rate);
        Pieces {
            log_growth: recs.iter().map(|r| (r.hs.powi(2) / n0).ln()).collect(),
            exponent: integral.iter().map(|i| p.eps * i).collect(),
            h0: f64::NAN,
        }
    }
}

/// Bound ratios with constant `c` at every record; a zero initial norm
/// gives ratio 0.
pub fn gronwall_check(traj: &Trajectory, c: f64) -> GronwallReport {
    let initial = traj.records.first().map_or(0.0, |r| if traj.params.model.is_boussinesq() { r.vsmu } else { r.hs });
    if initial == 0.0 {
        return GronwallReport {
            c,
            max_ratio: 0.0,
            ratios: vec![0.0; traj.records.len()],
            required_c: 0.0,
            h0: f64::NAN,
            pass: true,
        };
    }
    let pc = pieces(traj);
    let ratios: Vec<f64> = pc
        .log_growth
        .iter()
        .zip(&pc.exponent)
        .map(|(g, e)| (g - c * e).exp())
        .collect();
    let required_c = pc
        .log_growth
        .iter()
        .zip(&pc.exponent)
        .filter(|(_, e)| **e > 0.0)
        .map(|(g, e)| g / e)
        .fold(0.0, f64::max);
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    GronwallReport {
        c,
        max_ratio,
        ratios,
        required_c,
        h0: pc.h0,
        pass: max_ratio <= 1.0 + RATIO_ROUNDOFF,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{evolve, StepConfig};
    use crate::models::{DataSpec, ModelKind, ModelParams, State};
    use crate::spectral::Grid;

    #[test]
    fn linear_whitham_ratio_is_one() {
        let g = Grid::new(1, 256, 60.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, 0.0, 0.5, 1.7, 0.5).unwrap();
        let eta = DataSpec::Gaussian { a: 0.5, w: 1.0 }.sample_scalar(&g).unwrap();
        let cfg = StepConfig { dt: 0.05, t_end: 5.0, record_every: 1, ..StepConfig::default() };
        let traj = evolve(&State::scalar(eta), &p, &cfg).unwrap();
        let r = gronwall_check(&traj, 1.0);
        for x in &r.ratios {
            assert!((x - 1.0).abs() < 1e-13);
        }
        assert!(r.pass);
    }

    #[test]
    fn zero_data() {
        let g = Grid::new(1, 64, 20.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, 0.5, 0.5, 1.7, 0.5).unwrap();
        let cfg = StepConfig { dt: 0.1, t_end: 1.0, ..StepConfig::default() };
        let traj = evolve(&State::zeros(ModelKind::Whitham1D, g), &p, &cfg).unwrap();
        let r = gronwall_check(&traj, 1.0);
        assert_eq!(r.max_ratio, 0.0);
    }

    #[test]
    fn required_c_is_sharp() {
        let g = Grid::new(1, 256, 40.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, 0.8, 0.5, 1.7, 0.5).unwrap();
        let eta = DataSpec::Gaussian { a: 1.0, w: 1.0 }.sample_scalar(&g).unwrap();
        let cfg = StepConfig { dt: 0.01, t_end: 4.0, record_every: 1, ..StepConfig::default() };
        let traj = evolve(&State::scalar(eta), &p, &cfg).unwrap();
        let c = gronwall_check(&traj, 0.0).required_c;
        assert!(c > 0.0);
        assert!(gronwall_check(&traj, c * 1.001).pass);
        assert!(!gronwall_check(&traj, c * 0.9).pass);
    }
}
