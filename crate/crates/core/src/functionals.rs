//! Norms, energies and the pointwise quantities `𝒫(t)`, `H(t)`, `h_min`.
//!
//! Every derivative and fractional weight is a Fourier multiplier, so the
//! only discretization error is the grid maximum used for `L^∞`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{ModelKind, ModelParams, SpectralState, State};
use crate::spectral::{forward, inverse_complex, Field, Grid, SpectralField};
use crate::symbols::{japanese, t_mu};

/// `‖f‖_{H^s} = (Σ ⟨ξ⟩^{2s}|f̂(ξ)|² L^d)^{1/2}`; equals `‖f‖_{L²}` at `s = 0`.
pub fn sobolev_norm(f: &Field, s: f64) -> Result<f64> {
    Ok(sobolev_norm_spectral(&forward(f)?, s))
}

pub fn sobolev_norm_spectral(sf: &SpectralField, s: f64) -> f64 {
    sf.weighted_norm_sq(|r| japanese(r).powf(2.0 * s)).sqrt()
}

fn hs_sq(grid: &Grid, c: &[Complex64], s: f64, extra: impl Fn(f64) -> f64) -> f64 {
    c.iter()
        .enumerate()
        .map(|(k, z)| {
            let r = grid.xi_abs(k);
            japanese(r).powf(2.0 * s) * extra(r) * z.norm_sqr()
        })
        .sum::<f64>()
        * grid.volume()
}

/// `(‖η‖²_{H^s} + ‖v‖²_{H^s} + √μ ‖|D|^{1/2} v‖²_{H^s})^{1/2}`; the mean of
/// `v` is included.
pub fn v_mu_norm(state: &State, s: f64, mu: f64) -> Result<f64> {
    Ok(v_mu_norm_spectral(&SpectralState::from_state(state)?, s, mu))
}

pub fn v_mu_norm_spectral(u: &SpectralState, s: f64, mu: f64) -> f64 {
    let g = u.grid;
    let sm = mu.sqrt();
    let mut total = hs_sq(&g, &u.comps[0], s, |_| 1.0);
    for c in &u.comps[1..] {
        total += hs_sq(&g, c, s, |r| 1.0 + sm * r);
    }
    total.sqrt()
}

/// `‖η‖²_{H^s} + ‖T_μ^{-1/2}(D) v‖²_{H^s}`, the comparison norm for `V^s_μ`.
pub fn t_weighted_norm_sq(u: &SpectralState, s: f64, mu: f64) -> f64 {
    let g = u.grid;
    let mut total = hs_sq(&g, &u.comps[0], s, |_| 1.0);
    for c in &u.comps[1..] {
        total += hs_sq(&g, c, s, |r| 1.0 / t_mu(r, mu));
    }
    total
}

/// `∫ (J^s η)² dx`.
pub fn energy_whitham(eta: &Field, s: f64) -> Result<f64> {
    Ok(sobolev_norm(eta, s)?.powi(2))
}

/// `∫ (J^s η)² + (1 + εη)|J^s T_μ^{-1/2}(D) v|² dx`.
pub fn energy_wb(state: &State, p: &ModelParams) -> Result<f64> {
    energy_wb_spectral(&SpectralState::from_state(state)?, p)
}

fn physical(grid: &Grid, c: Vec<Complex64>) -> Vec<f64> {
    let sf = SpectralField::from_coeffs(*grid, c).expect("length");
    inverse_complex(&sf).into_iter().map(|z| z.re).collect()
}

pub fn energy_wb_spectral(u: &SpectralState, p: &ModelParams) -> Result<f64> {
    let g = u.grid;
    let eta = physical(&g, u.comps[0].clone());
    let hmin = eta.iter().fold(f64::INFINITY, |m, e| m.min(1.0 + p.eps * e));
    if hmin <= 0.0 {
        return Err(Error::NonCoercive { h_min: hmin });
    }
    let mut total = hs_sq(&g, &u.comps[0], p.s, |_| 1.0);
    for c in &u.comps[1..] {
        let w: Vec<Complex64> = c
            .iter()
            .enumerate()
            .map(|(k, z)| {
                let r = g.xi_abs(k);
                z * (japanese(r).powf(p.s) / t_mu(r, p.mu).sqrt())
            })
            .collect();
        let jv = physical(&g, w);
        total += eta
            .iter()
            .zip(&jv)
            .map(|(e, j)| (1.0 + p.eps * e) * j * j)
            .sum::<f64>()
            * g.cell_volume();
    }
    Ok(total)
}

/// Pointwise sup over the grid of the Euclidean norm across `fields`.
fn sup_euclid(fields: &[Vec<f64>]) -> f64 {
    let n = fields.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| fields.iter().map(|f| f[i] * f[i]).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

/// Physical-space `∂_j` of each coefficient array, optionally weighted.
fn gradients(grid: &Grid, c: &[Complex64], weight: impl Fn(f64) -> f64) -> Vec<Vec<f64>> {
    (0..grid.dim())
        .map(|j| {
            let d = c
                .iter()
                .enumerate()
                .map(|(k, z)| Complex64::i() * grid.xi(k)[j] * weight(grid.xi_abs(k)) * z)
                .collect();
            physical(grid, d)
        })
        .collect()
}

/// `𝒫 = ‖∇η‖_∞ + ‖∇v‖_∞ + ‖T_μ^{-1/2}(D)∇v‖_∞` with pointwise Euclidean
/// (Frobenius for `∇v`) norms; `‖∂_x η‖_∞` for the Whitham equation.
pub fn p_quantity(state: &State, mu: f64) -> Result<f64> {
    Ok(p_quantity_spectral(&SpectralState::from_state(state)?, mu))
}

pub fn p_quantity_spectral(u: &SpectralState, mu: f64) -> f64 {
    let g = u.grid;
    let mut p = sup_euclid(&gradients(&g, &u.comps[0], |_| 1.0));
    if u.comps.len() > 1 {
        let mut grad_v = Vec::new();
        let mut grad_tv = Vec::new();
        for c in &u.comps[1..] {
            grad_v.extend(gradients(&g, c, |_| 1.0));
            grad_tv.extend(gradients(&g, c, |r| 1.0 / t_mu(r, mu).sqrt()));
        }
        p += sup_euclid(&grad_v) + sup_euclid(&grad_tv);
    }
    p
}

/// `H = 1 + ε(‖η‖_∞ + ‖v‖_∞)`.
pub fn h_quantity(state: &State, eps: f64) -> f64 {
    1.0 + eps * (state.eta.max_abs() + state.v_max_abs())
}

/// `min_x (1 + εη)`.
pub fn h_min(state: &State, eps: f64) -> f64 {
    1.0 + eps * state.eta.min()
}

/// All monitored quantities at one time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub hs: f64,
    pub vsmu: f64,
    pub linf_eta: f64,
    pub linf_v: f64,
    pub p_of_t: f64,
    pub h_of_t: f64,
    pub h_min: f64,
    pub mass: f64,
    /// `E_s`; NaN once `h_min ≤ 0` for Whitham–Boussinesq.
    pub energy: f64,
}

impl NormReport {
    pub fn compute(state: &State, p: &ModelParams) -> Result<Self> {
        Ok(Self::from_spectral(&SpectralState::from_state(state)?, p))
    }

    pub fn from_spectral(u: &SpectralState, p: &ModelParams) -> Self {
        let g = u.grid;
        let st = u.to_state(0.0);
        let hs = hs_sq(&g, &u.comps[0], p.s, |_| 1.0).sqrt();
        let energy = match p.model {
            ModelKind::Whitham1D => hs * hs,
            _ => energy_wb_spectral(u, p).unwrap_or(f64::NAN),
        };
        NormReport {
            hs,
            vsmu: v_mu_norm_spectral(u, p.s, p.mu),
            linf_eta: st.eta.max_abs(),
            linf_v: st.v_max_abs(),
            p_of_t: p_quantity_spectral(u, p.mu),
            h_of_t: h_quantity(&st, p.eps),
            h_min: h_min(&st, p.eps),
            mass: u.comps[0][0].re * g.volume(),
            energy,
        }
    }
}
