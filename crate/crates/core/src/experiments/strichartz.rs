//! Frequency-localized Strichartz ratios
//! `R(λ, μ) = ‖S(t)P_λ f‖_{L^q_T L^r_x} / (A_{μ,d}(λ)^{1/2-1/r} ‖P_λ f‖₂)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::packet::{band_packet, evolve_packet, group_velocity, log_space, max_group_speed, omega_second, phase_table};
use crate::error::{Error, Result};
use crate::spectral::Grid;
use crate::symbols::{check_mu, eval_decay_rate, AdmissiblePair};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrichartzOptions {
    /// The time horizon in units of the dispersive time `t_disp(λ, μ)`.
    pub horizon_factor: f64,
    /// Log-spaced time samples (plus `t = 0`).
    pub samples: usize,
    /// Largest admissible grid side.
    pub max_n: usize,
}

impl Default for StrichartzOptions {
    fn default() -> Self {
        StrichartzOptions {
            horizon_factor: 20.0,
            samples: 96,
            max_n: 1 << 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrichartzPoint {
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
    pub length: f64,
    pub t_end: f64,
    pub lhs: f64,
    pub l2: f64,
    pub ratio: f64,
}

/// Time after which the band has dispersed: `1/(λ²|ω''(λ)|)`, and in 2D
/// also the angular scale `1/(λ ω'(λ))`.
pub fn dispersive_time(d: usize, lambda: f64, mu: f64) -> f64 {
    let radial = 1.0 / (lambda * lambda * omega_second(lambda, mu).abs());
    if d == 1 {
        radial
    } else {
        radial.max(1.0 / (lambda * group_velocity(lambda, mu)))
    }
}

/// Smallest power-of-two grid keeping the band below 5/6 of Nyquist and
/// the packet clear of its periodic images up to `t_end`.
pub fn strichartz_grid(d: usize, lambda: f64, mu: f64, t_end: f64, max_n: usize) -> Result<Grid> {
    let length = 2.0 * (t_end * max_group_speed(lambda, mu) + 12.0 / lambda);
    let need = (2.4 * lambda * length / PI).ceil() as usize;
    let n = need.next_power_of_two().max(64);
    if n > max_n {
        return Err(Error::WrapAround {
            t_end,
            horizon: 0.0,
            required_length: length,
        });
    }
    Grid::new(d, n, length)
}

/// `R(λ, μ)` for one band.
pub fn strichartz_ratio(pair: &AdmissiblePair, mu: f64, lambda: f64, opts: &StrichartzOptions) -> Result<StrichartzPoint> {
    check_mu(mu)?;
    let d = pair.dim();
    let t_end = opts.horizon_factor * dispersive_time(d, lambda, mu);
    let grid = strichartz_grid(d, lambda, mu, t_end, opts.max_n)?;
    let (f, _) = band_packet(&grid, lambda, 0.25 / lambda)?;
    let phase = phase_table(&grid, mu);
    let l2 = f.l2_norm_sq().sqrt();
    let r = pair.r().value();
    let q = pair.q().value();

    let mut times = vec![0.0];
    times.extend(log_space(1e-4 * t_end, t_end, opts.samples));
    let norms: Vec<f64> = times.iter().map(|&t| evolve_packet(&f, &phase, t).lp_norm(r)).collect();
    let lhs = if q.is_infinite() {
        norms.iter().cloned().fold(0.0, f64::max)
    } else {
        let integrand: Vec<f64> = norms.iter().map(|v| v.powf(q)).collect();
        trapezoid(&times, &integrand).powf(1.0 / q)
    };
    let ratio = lhs / (eval_decay_rate(lambda, mu, d).powf(pair.gain_exponent()) * l2);
    Ok(StrichartzPoint {
        lambda,
        mu,
        n: grid.n(),
        length: grid.length(),
        t_end,
        lhs,
        l2,
        ratio,
    })
}

pub(crate) fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(a, b)| 0.5 * (a[1] - a[0]) * (b[0] + b[1]))
        .sum()
}

/// Running trapezoid integral, starting at 0.
pub(crate) fn trapezoid_cumulative(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for i in 0..x.len() {
        if i > 0 {
            acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
        }
        out.push(acc);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrichartzReport {
    pub pair: (String, String),
    pub dim: usize,
    pub points: Vec<StrichartzPoint>,
    pub max_ratio: f64,
    pub min_ratio: f64,
    /// `max/min` over the sweep.
    pub spread: f64,
    /// Largest ratio per `μ`, sorted by `μ`.
    pub max_by_mu: Vec<(f64, f64)>,
}

/// Sweep over `lambdas × mus`; points are ordered by `(μ, λ)`.
pub fn strichartz_experiment(pair: &AdmissiblePair, mus: &[f64], lambdas: &[f64], opts: &StrichartzOptions) -> Result<StrichartzReport> {
    let mut keys: Vec<(f64, f64)> = mus.iter().flat_map(|&m| lambdas.iter().map(move |&l| (m, l))).collect();
    keys.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let points = super::run_jobs(&keys, |&(mu, lambda)| strichartz_ratio(pair, mu, lambda, opts))?;
    let max_ratio = points.iter().map(|p| p.ratio).fold(0.0, f64::max);
    let min_ratio = points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    let mut max_by_mu: Vec<(f64, f64)> = Vec::new();
    for p in &points {
        match max_by_mu.iter_mut().find(|(m, _)| *m == p.mu) {
            Some(e) => e.1 = e.1.max(p.ratio),
            None => max_by_mu.push((p.mu, p.ratio)),
        }
    }
    Ok(StrichartzReport {
        pair: (pair.q().to_string(), pair.r().to_string()),
        dim: pair.dim(),
        points,
        max_ratio,
        min_ratio,
        spread: max_ratio / min_ratio,
        max_by_mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Exponent;

    #[test]
    fn energy_pair_is_exactly_one() {
        let pair = AdmissiblePair::new(Exponent::INFINITY, Exponent::integer(2).unwrap(), 1).unwrap();
        let opts = StrichartzOptions { samples: 8, ..Default::default() };
        for mu in [0.1, 1.0] {
            let p = strichartz_ratio(&pair, mu, 4.0, &opts).unwrap();
            assert!((p.ratio - 1.0).abs() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn trapezoid_is_exact_on_lines() {
        let x = [0.0, 0.5, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|t| 2.0 * t + 1.0).collect();
        assert!((trapezoid(&x, &y) - 12.0).abs() < 1e-14);
    }
}
