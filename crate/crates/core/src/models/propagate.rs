use num_complex::Complex64;

use super::params::{ModelKind, ModelParams};
use super::state::SpectralState;
use crate::error::{Error, Result};
use crate::spectral::{apply_multiplier_complex, ComplexField, Grid};
use crate::symbols::{eval_m, t_mu};

/// `S_{μ,d}(sign·t) f = e^{sign·i(t/√μ) m_d(√μ D)} f`.
///
/// The Whitham flow is `sign = -1`. In 1D `m_1` is odd and real data stay
/// real; in 2D the phase is radial and the result is genuinely complex.
pub fn linear_propagate(f: &ComplexField, t: f64, mu: f64, d: usize, sign: f64) -> Result<ComplexField> {
    crate::symbols::check_mu(mu)?;
    if d != f.grid().dim() {
        return Err(Error::GridMismatch(format!("d = {d} on a {}-dimensional grid", f.grid().dim())));
    }
    let sm = mu.sqrt();
    let phase = sign * t / sm;
    apply_multiplier_complex(f, &move |xi: &[f64]| {
        let scaled: Vec<f64> = xi.iter().map(|x| sm * x).collect();
        Complex64::from_polar(1.0, phase * eval_m(&scaled))
    })
}

/// Per-mode data of the linear part of a model on a fixed grid.
///
/// For Whitham–Boussinesq each mode is a 2×2 rotation of `(η̂, ŵ)`, with
/// `ŵ = e·v̂`, `e = ξ/|ξ|` and frequency `ω = √T_μ |ξ|`; the transverse
/// part of `v̂` does not evolve.
#[derive(Clone, Debug)]
pub struct PropagatorTable {
    model: ModelKind,
    /// Whitham: `ξ√T_μ`; WB: `ω`.
    rate: Vec<f64>,
    sqrt_t: Vec<f64>,
    unit: Vec<[f64; 2]>,
}

impl PropagatorTable {
    pub fn new(p: &ModelParams, grid: &Grid) -> Self {
        let n = grid.len();
        let mut rate = Vec::with_capacity(n);
        let mut sqrt_t = Vec::with_capacity(n);
        let mut unit = Vec::with_capacity(n);
        for i in 0..n {
            let xi = grid.xi(i);
            let r = grid.xi_abs(i);
            let st = t_mu(r, p.mu).sqrt();
            sqrt_t.push(st);
            match p.model {
                ModelKind::Whitham1D => rate.push(xi[0] * st),
                _ => rate.push(st * r),
            }
            unit.push(if r > 0.0 { [xi[0] / r, xi[1] / r] } else { [0.0, 0.0] });
        }
        PropagatorTable {
            model: p.model,
            rate,
            sqrt_t,
            unit,
        }
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    /// Dispersion frequency of each mode (`ω` for WB, `ξ√T_μ` for Whitham).
    pub fn rates(&self) -> &[f64] {
        &self.rate
    }

    /// Precomputes `e^{Lh}` for one step size.
    pub fn factors(&self, h: f64) -> StepFactors {
        match self.model {
            ModelKind::Whitham1D => StepFactors::Scalar(
                self.rate.iter().map(|a| Complex64::from_polar(1.0, -a * h)).collect(),
            ),
            _ => StepFactors::Rotation(
                self.rate
                    .iter()
                    .zip(&self.sqrt_t)
                    .zip(&self.unit)
                    .map(|((w, st), e)| {
                        let (s, c) = (w * h).sin_cos();
                        ModeRotation {
                            cos: c,
                            sin_over_sqrt_t: s / st,
                            sin_times_sqrt_t: s * st,
                            unit: *e,
                        }
                    })
                    .collect(),
            ),
        }
    }

    pub fn apply(&self, u: &mut SpectralState, h: f64) {
        self.factors(h).apply(u);
    }

    /// `e^{±iωh}` for the diagonal variables of a Whitham–Boussinesq model.
    pub fn diagonal_factors(&self, h: f64) -> StepFactors {
        StepFactors::Diagonal(self.rate.iter().map(|w| Complex64::from_polar(1.0, w * h)).collect())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ModeRotation {
    cos: f64,
    sin_over_sqrt_t: f64,
    sin_times_sqrt_t: f64,
    unit: [f64; 2],
}

/// `e^{Lh}` for a fixed `h`.
#[derive(Clone, Debug)]
pub enum StepFactors {
    Scalar(Vec<Complex64>),
    Rotation(Vec<ModeRotation>),
    /// Diagonal variables: `u⁺` picks up the phase, `u⁻` its conjugate.
    Diagonal(Vec<Complex64>),
}

impl StepFactors {
    pub fn apply(&self, u: &mut SpectralState) {
        let i = Complex64::i();
        match self {
            StepFactors::Scalar(f) => {
                for (c, m) in u.comps[0].iter_mut().zip(f) {
                    *c *= m;
                }
            }
            StepFactors::Diagonal(f) => {
                for (k, m) in f.iter().enumerate() {
                    u.comps[0][k] *= m;
                    u.comps[1][k] *= m.conj();
                }
            }
            StepFactors::Rotation(rot) => {
                let d = u.comps.len() - 1;
                for (k, r) in rot.iter().enumerate() {
                    let eta = u.comps[0][k];
                    let w: Complex64 = (0..d).map(|j| u.comps[j + 1][k] * r.unit[j]).sum();
                    let eta_new = eta * r.cos - i * r.sin_over_sqrt_t * w;
                    let w_new = -i * r.sin_times_sqrt_t * eta + w * r.cos;
                    u.comps[0][k] = eta_new;
                    let dw = w_new - w;
                    for j in 0..d {
                        u.comps[j + 1][k] += dw * r.unit[j];
                    }
                }
            }
        }
    }
}

/// Exact linear flow of the model over time `t`, in place.
pub fn propagate_linear(p: &ModelParams, u: &mut SpectralState, t: f64) {
    PropagatorTable::new(p, &u.grid).apply(u, t);
}
