use num_complex::Complex64;

use super::params::ModelKind;
use crate::error::{Error, Result};
use crate::spectral::{forward, inverse, Field, Grid, SpectralField};

/// Physical-space unknowns. `v` is empty for the Whitham equation and has
/// one component per space dimension otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub eta: Field,
    pub v: Vec<Field>,
    pub t: f64,
}

impl State {
    pub fn new(eta: Field, v: Vec<Field>) -> Result<Self> {
        let g = *eta.grid();
        if v.iter().any(|c| *c.grid() != g) {
            return Err(Error::GridMismatch("η and v live on different grids".into()));
        }
        if !v.is_empty() && v.len() != g.dim() {
            return Err(Error::GridMismatch(format!(
                "v has {} components on a {}-dimensional grid",
                v.len(),
                g.dim()
            )));
        }
        Ok(State { eta, v, t: 0.0 })
    }

    pub fn scalar(eta: Field) -> Self {
        State { eta, v: Vec::new(), t: 0.0 }
    }

    pub fn zeros(model: ModelKind, grid: Grid) -> Self {
        let v = if model.is_boussinesq() {
            vec![Field::zeros(grid); grid.dim()]
        } else {
            Vec::new()
        };
        State { eta: Field::zeros(grid), v, t: 0.0 }
    }

    pub fn grid(&self) -> &Grid {
        self.eta.grid()
    }

    pub fn components(&self) -> impl Iterator<Item = &Field> {
        std::iter::once(&self.eta).chain(self.v.iter())
    }

    pub fn check_finite(&self) -> Result<()> {
        self.components().try_for_each(Field::check_finite)
    }

    /// Pointwise Euclidean `max |v|`.
    pub fn v_max_abs(&self) -> f64 {
        let n = self.grid().len();
        (0..n)
            .map(|i| self.v.iter().map(|c| c.values()[i].powi(2)).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &State) -> f64 {
        self.components()
            .zip(other.components())
            .map(|(a, b)| a.max_diff(b))
            .fold(0.0, f64::max)
    }
}

/// Fourier coefficients of all unknowns, `[η̂, v̂_1, v̂_2]` as present.
///
/// Linear combinations act coefficient-wise; the integrator only needs
/// `axpy`-style updates.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralState {
    pub grid: Grid,
    pub comps: Vec<Vec<Complex64>>,
}

impl SpectralState {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        SpectralState {
            grid,
            comps: vec![vec![Complex64::new(0.0, 0.0); grid.len()]; ncomp],
        }
    }

    pub fn zeros_like(other: &SpectralState) -> Self {
        Self::zeros(other.grid, other.comps.len())
    }

    /// Transforms a physical state. Nyquist coefficients are dropped: their
    /// real-field action is not unitary under odd symbols.
    pub fn from_state(state: &State) -> Result<Self> {
        let grid = *state.grid();
        let mut comps = Vec::with_capacity(1 + state.v.len());
        for c in state.components() {
            let mut coeffs = forward(c)?.into_coeffs();
            for (i, z) in coeffs.iter_mut().enumerate() {
                if grid.is_nyquist(i) {
                    *z = Complex64::new(0.0, 0.0);
                }
            }
            comps.push(coeffs);
        }
        Ok(SpectralState { grid, comps })
    }

    pub fn to_state(&self, t: f64) -> State {
        let mut fields = self.comps.iter().map(|c| inverse(&self.spectral(c)));
        let eta = fields.next().expect("at least one component");
        State { eta, v: fields.collect(), t }
    }

    fn spectral(&self, c: &[Complex64]) -> SpectralField {
        SpectralField::from_coeffs(self.grid, c.to_vec()).expect("grid-consistent length")
    }

    pub fn component(&self, k: usize) -> SpectralField {
        self.spectral(&self.comps[k])
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: f64, other: &SpectralState) {
        for (x, y) in self.comps.iter_mut().zip(&other.comps) {
            for (xi, yi) in x.iter_mut().zip(y) {
                *xi += yi * a;
            }
        }
    }

    pub fn scaled(&self, a: f64) -> SpectralState {
        let mut out = self.clone();
        for c in out.comps.iter_mut().flatten() {
            *c *= a;
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().flatten().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_diff(&self, other: &SpectralState) -> f64 {
        self.comps
            .iter()
            .flatten()
            .zip(other.comps.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}
