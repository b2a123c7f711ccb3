//! `L^∞` decay of frequency-localized linear waves.

use serde::{Deserialize, Serialize};

use super::fit::{fit_power_law, FitResult};
use super::packet::{band_packet, evolve_packet, log_space, max_group_speed, phase_table};
use crate::error::{Error, Result};
use crate::spectral::Grid;
use crate::symbols::{check_mu, eval_decay_rate};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecaySample {
    pub t: f64,
    pub linf: f64,
    pub bound_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub dim: usize,
    pub mu: f64,
    pub lambda: f64,
    pub horizon: f64,
    pub samples: Vec<DecaySample>,
    pub fit: FitResult,
    /// `sup_t` of the normalized `‖S(t)P_λ f‖_∞ t^{d/2} / (A ‖f‖_{L¹})`.
    pub max_bound_ratio: f64,
    /// `‖P_λ f‖_∞` at `t = 0`.
    pub initial_linf: f64,
}

/// Time until the fastest part of the band reaches the box edge.
pub fn wrap_horizon(grid: &Grid, lambda: f64, mu: f64) -> f64 {
    (0.5 * grid.length() - margin(lambda)) / max_group_speed(lambda, mu)
}

fn margin(lambda: f64) -> f64 {
    // a few spatial widths of the packet
    12.0 / lambda
}

/// Width of the generating gaussian: narrow enough that its transform is
/// nearly flat across the band.
pub fn packet_width(lambda: f64) -> f64 {
    0.25 / lambda
}

/// Evolves `P_λ(gaussian)` under `S(t)`, samples the sup norm at
/// `samples` log-spaced times in `t_window` and fits the decay exponent.
pub fn decay_experiment(grid: &Grid, mu: f64, lambda: f64, t_window: (f64, f64), samples: usize) -> Result<DecayReport> {
    check_mu(mu)?;
    let (t0, t1) = t_window;
    if !(t0 > 0.0 && t1 > t0) {
        return Err(Error::param("t_window", "need 0 < t_min < t_max"));
    }
    let horizon = wrap_horizon(grid, lambda, mu);
    if t1 > horizon {
        let required = 2.0 * (t1 * max_group_speed(lambda, mu) + margin(lambda));
        return Err(Error::WrapAround {
            t_end: t1,
            horizon,
            required_length: required,
        });
    }
    let d = grid.dim();
    let (f, l1) = band_packet(grid, lambda, packet_width(lambda))?;
    let phase = phase_table(grid, mu);
    let a = eval_decay_rate(lambda, mu, d);
    let initial_linf = evolve_packet(&f, &phase, 0.0).max_abs();
    let samples: Vec<DecaySample> = log_space(t0, t1, samples)
        .into_iter()
        .map(|t| {
            let linf = evolve_packet(&f, &phase, t).max_abs();
            DecaySample {
                t,
                linf,
                bound_ratio: linf * t.powf(0.5 * d as f64) / (a * l1),
            }
        })
        .collect();
    let ts: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let ls: Vec<f64> = samples.iter().map(|s| s.linf).collect();
    let fit = fit_power_law(&ts, &ls)?;
    let max_bound_ratio = samples.iter().map(|s| s.bound_ratio).fold(0.0, f64::max);
    Ok(DecayReport {
        dim: d,
        mu,
        lambda,
        horizon,
        samples,
        fit,
        max_bound_ratio,
        initial_linf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_box_is_refused_with_a_length() {
        let g = Grid::new(1, 1024, 50.0).unwrap();
        match decay_experiment(&g, 1.0, 8.0, (10.0, 600.0), 16) {
            Err(Error::WrapAround { required_length, horizon, .. }) => {
                assert!(required_length > 50.0);
                assert!(horizon < 600.0);
            }
            other => panic!("expected a wrap-around refusal, got {other:?}"),
        }
    }

    #[test]
    fn no_decay_at_time_zero() {
        let g = Grid::new(1, 1024, 100.0).unwrap();
        let r = decay_experiment(&g, 1.0, 4.0, (1e-8, 1e-6), 4).unwrap();
        for s in &r.samples {
            assert!((s.linf - r.initial_linf).abs() < 1e-6 * r.initial_linf);
        }
    }
}
