//! Numerical consistency checks for the decay, Strichartz, energy,
//! commutator and lifespan estimates.
//!
//! Every experiment is a pure function of its inputs (grid, parameters,
//! seeds, pinned constants). Results are consistency evidence only: the
//! estimates involve non-explicit constants, so boundedness is asserted
//! against pinned values and never equality.

mod calibrate;
mod coercivity;
mod commutator;
mod decay;
mod ensemble;
mod fit;
mod gronwall;
mod lifespan;
mod packet;
pub mod presets;
mod refined;
mod report;
mod scaling;
mod strichartz;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::AdmissiblePair;

pub use calibrate::{calibrate, CalibrationOptions, CalibrationReport, CONSTANTS_VERSION};
pub use coercivity::{coercivity_check, coercivity_row, coercivity_state, CoercivityReport, CoercivityRow};
pub use commutator::{
    commutator_ensemble, commutator_probe, commutator_ratio, commutator_terms, probe_band_limit, CommutatorKind,
    CommutatorReport, CommutatorRow,
};
pub use ensemble::{gronwall_ensemble, refined_ensemble, EnsembleSetup, GronwallEnsembleReport, CALIBRATION_OFFSET, ENSEMBLE_SIZE};
pub use gronwall::{gronwall_check, GronwallReport, RATIO_ROUNDOFF};
pub use lifespan::{
    lifespan_formula, lifespan_point, lifespan_sweep, LifespanConfig, LifespanPoint, LifespanReport,
    MonotonicityViolation, MONOTONE_TOL,
};
pub use report::{Check, ExperimentReport, NamedFit, Provenance, REPORT_HEADER};
pub use refined::{refined_strichartz_check, RefinedReport};
pub use decay::{decay_experiment, packet_width, wrap_horizon, DecayReport, DecaySample};
pub use fit::{fit_power_law, fit_power_law_raw, linear_fit, FitResult, MIN_FIT_POINTS, TRIM_R_SQUARED};
pub use packet::{band_packet, evolve_packet, group_velocity, log_space, max_group_speed, omega, omega_second, phase_table};
pub use scaling::{scaling_identity_test, ScalingReport, SCALING_TOL};
pub use strichartz::{
    dispersive_time, strichartz_experiment, strichartz_grid, strichartz_ratio, StrichartzOptions, StrichartzPoint,
    StrichartzReport,
};

/// Runs independent jobs on a shared work queue and returns results in
/// input order, so the output does not depend on the thread count.
pub fn run_jobs<K, T, F>(keys: &[K], job: F) -> Result<Vec<T>>
where
    K: Sync,
    T: Send,
    F: Fn(&K) -> Result<T> + Sync,
{
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(keys.len());
    if workers <= 1 {
        return keys.iter().map(&job).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<T>>>> = Mutex::new((0..keys.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= keys.len() {
                    break;
                }
                let r = job(&keys[i]);
                slots.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

/// Worker threads [`run_jobs`] will use; recorded in provenance.
pub fn thread_count() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Splitting parameters of the refined Strichartz argument. Only the
/// presets are used by the end-to-end checks; they are recorded so runs
/// document the balancing they correspond to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionParams {
    pub omega: f64,
    /// `ρ(λ) = rho_coeff / λ`.
    pub rho_coeff: f64,
    pub theta: f64,
    pub gamma: f64,
    pub pair: AdmissiblePair,
    pub t_end: f64,
}

impl DecompositionParams {
    pub const DEFAULT_THETA: f64 = 0.05;
    pub const DEFAULT_GAMMA: f64 = 0.05;

    /// `ω = (μT)^{-1/5}`, `ρ(λ) = T^{4/5}μ^{-1/5}λ^{-1}` in 1D and
    /// `ω = μ^{-1/6}T^{-1/3}`, `ρ(λ) = T^{2/3}μ^{-1/6}λ^{-1}` in 2D, with the
    /// pairs `(8, 4)` and `(4, 4)`.
    pub fn preset(d: usize, mu: f64, t_end: f64) -> Result<Self> {
        use crate::symbols::Exponent;
        let (omega, rho_coeff, pair) = match d {
            1 => (
                (mu * t_end).powf(-0.2),
                t_end.powf(0.8) * mu.powf(-0.2),
                AdmissiblePair::new(Exponent::integer(8)?, Exponent::integer(4)?, 1)?,
            ),
            2 => (
                mu.powf(-1.0 / 6.0) * t_end.powf(-1.0 / 3.0),
                t_end.powf(2.0 / 3.0) * mu.powf(-1.0 / 6.0),
                AdmissiblePair::new(Exponent::integer(4)?, Exponent::integer(4)?, 2)?,
            ),
            _ => return Err(Error::param("d", "must be 1 or 2")),
        };
        let dp = DecompositionParams {
            omega,
            rho_coeff,
            theta: Self::DEFAULT_THETA,
            gamma: Self::DEFAULT_GAMMA,
            pair,
            t_end,
        };
        dp.validate()?;
        Ok(dp)
    }

    pub fn rho(&self, lambda: f64) -> f64 {
        self.rho_coeff / lambda
    }

    /// `ω > 0` and `ρ(λ) ≤ T` for every `λ ≥ ω`.
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.theta > 0.0 && self.gamma > 0.0) {
            return Err(Error::param("decomposition", "omega, theta and gamma must be positive"));
        }
        if self.rho(self.omega) > self.t_end * (1.0 + 1e-12) {
            return Err(Error::param(
                "decomposition",
                format!("rho(omega) = {} exceeds T = {}", self.rho(self.omega), self.t_end),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jobs_keep_input_order() {
        let keys: Vec<u64> = (0..37).collect();
        let out = run_jobs(&keys, |k| Ok(k * k)).unwrap();
        assert_eq!(out, keys.iter().map(|k| k * k).collect::<Vec<_>>());
        let err = run_jobs(&keys, |&k| if k == 5 { Err(Error::param("k", "five")) } else { Ok(k) });
        assert!(err.is_err());
    }

    #[test]
    fn presets_balance_the_split() {
        for d in [1, 2] {
            for mu in [0.01, 1.0] {
                let dp = DecompositionParams::preset(d, mu, 50.0).unwrap();
                assert!(dp.rho(dp.omega) <= dp.t_end * (1.0 + 1e-12));
            }
        }
        // at ω the interval length equals T in 1D
        let dp = DecompositionParams::preset(1, 0.3, 7.0).unwrap();
        assert!((dp.rho(dp.omega) - 7.0).abs() < 1e-12);
    }
}
