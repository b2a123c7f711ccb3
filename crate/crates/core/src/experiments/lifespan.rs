//! Doubling-time sweeps over `(ε, μ)`.
//!
//! The doubling time is a one-sided proxy for the existence time: a long
//! numerical lifespan cannot contradict a lower bound, so the only check
//! against the estimate is `t_double ≥ κ · T(ε, μ)`.

use serde::{Deserialize, Serialize};

use super::fit::{fit_power_law, FitResult, MIN_FIT_POINTS};
use crate::error::{Error, Result};
use crate::integrator::{evolve, NormKind, StepConfig, Termination};
use crate::models::{InitialData, ModelKind, ModelParams};
use crate::spectral::Grid;

/// Relative slack of the monotonicity checks.
pub const MONOTONE_TOL: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LifespanConfig {
    pub model: ModelKind,
    pub grid: Grid,
    pub data: InitialData,
    pub eps_grid: Vec<f64>,
    pub mu_grid: Vec<f64>,
    pub s: f64,
    pub h0: f64,
    pub step: StepConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LifespanPoint {
    pub eps: f64,
    pub mu: f64,
    /// `None` when the horizon was reached without doubling.
    pub t_double: Option<f64>,
    pub termination: Termination,
    pub initial_norm: f64,
    /// The guaranteed existence-time scale with unit constant.
    pub formula: f64,
    /// Blown-up or non-finite runs are excluded from fits and checks.
    pub excluded: bool,
    pub steps: usize,
}

/// `ε^{-(d+3)/4} (μ/ε)^{1/4} N^{-(d+4)/4}`; for the Whitham equation this is
/// `ε^{-1}(μ/ε)^{1/4} N^{-5/4}` with `N = ‖η₀‖_{H^s}`.
pub fn lifespan_formula(model: ModelKind, eps: f64, mu: f64, norm: f64) -> f64 {
    let d = model.dim() as f64;
    eps.powf(-(d + 3.0) / 4.0) * (mu / eps).powf(0.25) * norm.powf(-(d + 4.0) / 4.0)
}

/// Runs one point of the sweep.
pub fn lifespan_point(cfg: &LifespanConfig, eps: f64, mu: f64) -> Result<LifespanPoint> {
    let p = ModelParams::new(cfg.model, eps, mu, cfg.s, cfg.h0)?;
    let initial = cfg.data.state(cfg.model, &cfg.grid)?;
    let step = StepConfig {
        stop_at_doubling: true,
        ..cfg.step.clone()
    };
    let traj = evolve(&initial, &p, &step)?;
    let initial_norm = NormKind::for_model(cfg.model).pick(&traj.records[0]);
    let (t_double, excluded) = match traj.termination {
        Termination::Doubled(t) => (Some(t), false),
        Termination::HorizonReached => (None, false),
        Termination::BlownUp(_) | Termination::NonFinite(_) => (None, true),
    };
    Ok(LifespanPoint {
        eps,
        mu,
        t_double,
        termination: traj.termination,
        initial_norm,
        formula: lifespan_formula(cfg.model, eps, mu, initial_norm),
        excluded,
        steps: traj.steps,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityViolation {
    pub eps: f64,
    pub mu: f64,
    pub against: (f64, f64),
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LifespanReport {
    pub model: ModelKind,
    /// Sorted by `(ε, μ)`.
    pub points: Vec<LifespanPoint>,
    pub excluded: usize,
    pub monotonicity: Vec<MonotonicityViolation>,
    /// Fit of `t_double` against `ε` per `μ`; the exponent is `-a`.
    pub eps_fits: Vec<(f64, Option<FitResult>)>,
    /// Fit against `μ` per `ε`; the exponent is `b`. Needs four doubled points.
    pub mu_fits: Vec<(f64, Option<FitResult>)>,
    /// `min t_double / formula` over the included points.
    pub min_formula_ratio: f64,
}

impl LifespanReport {
    pub fn point(&self, eps: f64, mu: f64) -> Option<&LifespanPoint> {
        self.points.iter().find(|p| p.eps == eps && p.mu == mu)
    }

    /// `a` at the given `μ`, if a fit was possible.
    pub fn eps_exponent(&self, mu: f64) -> Option<f64> {
        self.eps_fits
            .iter()
            .find(|(m, _)| *m == mu)
            .and_then(|(_, f)| f.as_ref())
            .map(|f| -f.exponent)
    }

    /// Every measured doubling time is at least `κ` times the formula.
    pub fn lower_bound_holds(&self, kappa: f64) -> bool {
        self.points
            .iter()
            .filter(|p| !p.excluded)
            .all(|p| p.t_double.is_none_or(|t| t >= kappa * p.formula))
    }
}

fn sorted_unique(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Lifespans compare with "no doubling" as `+∞`.
fn later(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => y >= (1.0 - tol) * x,
    }
}

pub fn lifespan_sweep(cfg: &LifespanConfig) -> Result<LifespanReport> {
    if cfg.eps_grid.contains(&0.0) {
        return Err(Error::param("eps_grid", "eps = 0 never doubles; leave it out of the sweep"));
    }
    let eps = sorted_unique(&cfg.eps_grid);
    let mus = sorted_unique(&cfg.mu_grid);
    let keys: Vec<(f64, f64)> = eps.iter().flat_map(|&e| mus.iter().map(move |&m| (e, m))).collect();
    let points = super::run_jobs(&keys, |&(e, m)| lifespan_point(cfg, e, m))?;
    let get = |e: f64, m: f64| points.iter().find(|p| p.eps == e && p.mu == m).expect("grid point");

    let mut monotonicity = Vec::new();
    for &m in &mus {
        for w in eps.windows(2) {
            let (a, b) = (get(w[0], m), get(w[1], m));
            if a.excluded || b.excluded {
                continue;
            }
            // larger ε: lifespan must not grow
            if !later(b.t_double, a.t_double, MONOTONE_TOL) {
                monotonicity.push(MonotonicityViolation {
                    eps: w[1],
                    mu: m,
                    against: (w[0], m),
                    detail: format!("t_double increased with eps: {:?} -> {:?}", a.t_double, b.t_double),
                });
            }
        }
    }
    for &e in &eps {
        for w in mus.windows(2) {
            let (a, b) = (get(e, w[0]), get(e, w[1]));
            if a.excluded || b.excluded {
                continue;
            }
            if !later(a.t_double, b.t_double, MONOTONE_TOL) {
                monotonicity.push(MonotonicityViolation {
                    eps: e,
                    mu: w[1],
                    against: (e, w[0]),
                    detail: format!("t_double decreased with mu: {:?} -> {:?}", a.t_double, b.t_double),
                });
            }
        }
    }

    let fit_along = |xs: Vec<(f64, Option<f64>)>| -> Option<FitResult> {
        let pts: Vec<(f64, f64)> = xs.into_iter().filter_map(|(x, t)| t.map(|t| (x, t))).collect();
        if pts.len() < MIN_FIT_POINTS {
            return None;
        }
        let (x, y): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        fit_power_law(&x, &y).ok()
    };
    let usable = |p: &LifespanPoint| if p.excluded { None } else { p.t_double };
    let eps_fits = mus
        .iter()
        .map(|&m| (m, fit_along(eps.iter().map(|&e| (e, usable(get(e, m)))).collect())))
        .collect();
    let mu_fits = eps
        .iter()
        .map(|&e| (e, fit_along(mus.iter().map(|&m| (m, usable(get(e, m)))).collect())))
        .collect();
    let min_formula_ratio = points
        .iter()
        .filter_map(|p| usable(p).map(|t| t / p.formula))
        .fold(f64::INFINITY, f64::min);
    let excluded = points.iter().filter(|p| p.excluded).count();
    Ok(LifespanReport {
        model: cfg.model,
        points,
        excluded,
        monotonicity,
        eps_fits,
        mu_fits,
        min_formula_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_reduces_in_one_dimension() {
        let a = lifespan_formula(ModelKind::Whitham1D, 0.2, 0.5, 1.3);
        let b = 0.2f64.powf(-1.0) * (0.5f64 / 0.2).powf(0.25) * 1.3f64.powf(-1.25);
        assert!((a - b).abs() < 1e-12 * b);
        assert_eq!(a, lifespan_formula(ModelKind::WB1D, 0.2, 0.5, 1.3));
        let c = lifespan_formula(ModelKind::WB2D, 0.2, 0.5, 1.3);
        let d = 0.2f64.powf(-1.25) * (0.5f64 / 0.2).powf(0.25) * 1.3f64.powf(-1.5);
        assert!((c - d).abs() < 1e-12 * d);
    }

    #[test]
    fn no_doubling_counts_as_longest() {
        assert!(later(Some(1.0), None, 0.05));
        assert!(!later(None, Some(1.0), 0.05));
        assert!(later(Some(1.0), Some(0.96), 0.05));
        assert!(!later(Some(1.0), Some(0.94), 0.05));
    }
}
