use num_complex::Complex64;

use super::params::ModelParams;
use super::propagate::PropagatorTable;
use super::state::{SpectralState, State};
use crate::error::{Error, Result};
use crate::spectral::{forward, inverse_complex, Field, Grid, SpectralField};
use crate::symbols::t_mu;

/// Diagonal variables `u± = ½(η ∓ i T_μ^{-1/2}(D) R·v)`.
///
/// `R` is the Riesz vector `-iξ/|ξ|` (the Hilbert symbol `-i sgn ξ` in 1D),
/// zero at the origin. The mean of `v` is invisible to `u±`, so it is kept
/// alongside; it does not evolve.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagState {
    pub u_plus: SpectralField,
    pub u_minus: SpectralField,
    pub mu: f64,
    pub v_mean: [f64; 2],
}

struct ModeData {
    unit: [f64; 2],
    sqrt_t: f64,
    abs: f64,
}

fn mode(grid: &Grid, k: usize, mu: f64) -> ModeData {
    let r = grid.xi_abs(k);
    let xi = grid.xi(k);
    ModeData {
        unit: if r > 0.0 { [xi[0] / r, xi[1] / r] } else { [0.0, 0.0] },
        sqrt_t: t_mu(r, mu).sqrt(),
        abs: r,
    }
}

impl DiagState {
    pub fn grid(&self) -> &Grid {
        self.u_plus.grid()
    }

    /// Complex samples of `u⁺` on the grid.
    pub fn u_plus_values(&self) -> Vec<Complex64> {
        inverse_complex(&self.u_plus)
    }

    pub fn u_minus_values(&self) -> Vec<Complex64> {
        inverse_complex(&self.u_minus)
    }

    /// `[û⁺, û⁻]` as a two-component spectral state.
    pub fn to_spectral(&self) -> SpectralState {
        SpectralState {
            grid: *self.grid(),
            comps: vec![self.u_plus.coeffs().to_vec(), self.u_minus.coeffs().to_vec()],
        }
    }

    pub fn from_spectral(u: &SpectralState, mu: f64, v_mean: [f64; 2]) -> Result<Self> {
        Ok(DiagState {
            u_plus: SpectralField::from_coeffs(u.grid, u.comps[0].clone())?,
            u_minus: SpectralField::from_coeffs(u.grid, u.comps[1].clone())?,
            mu,
            v_mean,
        })
    }

    /// Coefficients of `(η, v)`, skipping the realness check of [`reconstruct`].
    pub fn to_primitive_spectral(&self) -> SpectralState {
        primitive_coeffs(self)
    }

    pub fn max_diff(&self, other: &DiagState) -> f64 {
        self.u_plus.max_diff(&other.u_plus).max(self.u_minus.max_diff(&other.u_minus))
    }
}

/// Transforms a Whitham–Boussinesq state. Any rotational part of `v` is
/// discarded, so only curl-free states round-trip.
pub fn diagonalize(state: &State, mu: f64) -> Result<DiagState> {
    crate::symbols::check_mu(mu)?;
    let g = *state.grid();
    if state.v.len() != g.dim() {
        return Err(Error::GridMismatch("diagonalization needs a velocity field".into()));
    }
    let u = SpectralState::from_state(state)?;
    let d = g.dim();
    let mut plus = vec![Complex64::new(0.0, 0.0); g.len()];
    let mut minus = plus.clone();
    for k in 0..g.len() {
        let m = mode(&g, k, mu);
        let w: Complex64 = (0..d).map(|j| u.comps[j + 1][k] * m.unit[j]).sum();
        let eta = u.comps[0][k];
        plus[k] = 0.5 * (eta - w / m.sqrt_t);
        minus[k] = 0.5 * (eta + w / m.sqrt_t);
    }
    let mut v_mean = [0.0; 2];
    for j in 0..d {
        v_mean[j] = u.comps[j + 1][0].re;
    }
    Ok(DiagState {
        u_plus: SpectralField::from_coeffs(g, plus)?,
        u_minus: SpectralField::from_coeffs(g, minus)?,
        mu,
        v_mean,
    })
}

/// Coefficients of `(η, v)` from the diagonal variables, without the
/// realness check.
pub(crate) fn primitive_coeffs(diag: &DiagState) -> SpectralState {
    let g = *diag.grid();
    let d = g.dim();
    let mut out = SpectralState::zeros(g, 1 + d);
    let (p, m) = (diag.u_plus.coeffs(), diag.u_minus.coeffs());
    for k in 0..g.len() {
        let md = mode(&g, k, diag.mu);
        out.comps[0][k] = p[k] + m[k];
        let w = -md.sqrt_t * (p[k] - m[k]);
        for j in 0..d {
            out.comps[j + 1][k] = w * md.unit[j];
        }
    }
    for j in 0..d {
        out.comps[j + 1][0] = Complex64::new(diag.v_mean[j], 0.0);
    }
    out
}

/// `η = u⁺ + u⁻`, `v = -i√T_μ(D) R(u⁺ - u⁻)`. Fails when the result has an
/// imaginary part above `1e-8` relative.
pub fn reconstruct(diag: &DiagState) -> Result<State> {
    let u = primitive_coeffs(diag);
    let g = u.grid;
    let mut fields = Vec::with_capacity(u.comps.len());
    for (c, name) in u.comps.iter().zip(["eta", "v1", "v2"]) {
        let z = inverse_complex(&SpectralField::from_coeffs(g, c.clone())?);
        let re_max = z.iter().fold(0.0f64, |a, c| a.max(c.re.abs()));
        let im_max = z.iter().fold(0.0f64, |a, c| a.max(c.im.abs()));
        if im_max > 1e-8 * re_max.max(f64::MIN_POSITIVE) && im_max > 1e-300 {
            return Err(Error::Inconsistent(format!(
                "{name} has imaginary part {im_max:.3e} against {re_max:.3e}"
            )));
        }
        fields.push(Field::from_values(g, z.into_iter().map(|c| c.re).collect())?);
    }
    let eta = fields.remove(0);
    State::new(eta, fields)
}

fn physical(grid: &Grid, c: &[Complex64]) -> Vec<f64> {
    let sf = SpectralField::from_coeffs(*grid, c.to_vec()).expect("length");
    inverse_complex(&sf).into_iter().map(|z| z.re).collect()
}

fn dealiased(grid: &Grid, values: Vec<f64>) -> Result<Vec<Complex64>> {
    let mut sf = forward(&Field::from_values(*grid, values)?)?;
    sf.dealias_in_place();
    Ok(sf.into_coeffs())
}

/// Nonlinear part of the diagonal system:
/// `∂_t u± ⊃ (iε/2) 𝓑±`, `𝓑± = i∇·(ηv) ± ½ T_μ^{-1/2}(D)|D| |v|²`.
pub fn diag_nonlinear(diag: &DiagState, p: &ModelParams) -> Result<DiagState> {
    let g = *diag.grid();
    let d = g.dim();
    let mut plus = vec![Complex64::new(0.0, 0.0); g.len()];
    let mut minus = plus.clone();
    if p.eps != 0.0 {
        let u = primitive_coeffs(diag);
        let eta = physical(&g, &u.comps[0]);
        let v: Vec<Vec<f64>> = (0..d).map(|j| physical(&g, &u.comps[j + 1])).collect();
        let flux: Vec<Vec<Complex64>> = v
            .iter()
            .map(|vj| dealiased(&g, eta.iter().zip(vj).map(|(a, b)| a * b).collect()))
            .collect::<Result<_>>()?;
        let sq = dealiased(&g, (0..g.len()).map(|k| v.iter().map(|vj| vj[k] * vj[k]).sum()).collect())?;
        let i = Complex64::i();
        for k in 0..g.len() {
            let xi = g.xi(k);
            let md = mode(&g, k, diag.mu);
            let div: Complex64 = (0..d).map(|j| i * xi[j] * flux[j][k]).sum();
            let a = i * div;
            let b = 0.5 * md.abs / md.sqrt_t * sq[k];
            plus[k] = 0.5 * i * p.eps * (a + b);
            minus[k] = 0.5 * i * p.eps * (a - b);
        }
    }
    Ok(DiagState {
        u_plus: SpectralField::from_coeffs(g, plus)?,
        u_minus: SpectralField::from_coeffs(g, minus)?,
        mu: diag.mu,
        v_mean: [0.0; 2],
    })
}

/// `∂_t u± = ±i√T_μ(D)|D| u± + (iε/2) 𝓑±(η, v)`.
pub fn diag_rhs(diag: &DiagState, p: &ModelParams) -> Result<DiagState> {
    let mut out = diag_nonlinear(diag, p)?;
    let g = *diag.grid();
    let i = Complex64::i();
    for k in 0..g.len() {
        let md = mode(&g, k, diag.mu);
        let w = md.sqrt_t * md.abs;
        out.u_plus.coeffs_mut()[k] += i * w * diag.u_plus.coeffs()[k];
        out.u_minus.coeffs_mut()[k] -= i * w * diag.u_minus.coeffs()[k];
    }
    Ok(out)
}

/// Exact linear diagonal flow over `h`: `u± ← e^{±i√T_μ|ξ|h} u±`.
pub fn diag_linear_propagate(u: &mut SpectralState, p: &ModelParams, h: f64) {
    PropagatorTable::new(p, &u.grid).diagonal_factors(h).apply(u);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{wb_rhs, ModelKind};
    use crate::symbols::Symbol;
    use std::f64::consts::PI;

    fn gradient(phi: &Field) -> Vec<Field> {
        let sf = forward(phi).unwrap();
        (1..=phi.grid().dim())
            .map(|j| crate::spectral::inverse(&sf.apply(&Symbol::Derivative { j }).unwrap()))
            .collect()
    }

    fn sample_state(g: Grid) -> State {
        let w = 2.0 * PI / g.length();
        let eta = Field::from_fn(g, |x| 0.3 * (w * x[0]).cos() + 0.2 * (3.0 * w * (x[0] + x.get(1).unwrap_or(&0.0))).sin());
        let phi = Field::from_fn(g, |x| (2.0 * w * x[0]).sin() * (w * x.get(1).unwrap_or(&0.0)).cos() + 0.5 * (w * x[0]).cos());
        let mut v = gradient(&phi);
        for c in v.iter_mut() {
            *c = c.map(|y| y + 0.05);
        }
        State::new(eta, v).unwrap()
    }

    #[test]
    fn zero_velocity_splits_evenly() {
        let g = Grid::new(1, 128, 20.0).unwrap();
        let eta = Field::from_fn(g, |x| (-(x[0] - 10.0).powi(2)).exp());
        let st = State::new(eta, vec![Field::zeros(g)]).unwrap();
        let dg = diagonalize(&st, 0.5).unwrap();
        assert!(dg.u_plus.max_diff(&dg.u_minus) < 1e-16);
        let back = reconstruct(&dg).unwrap();
        assert!(back.max_diff(&st) < 1e-14);
    }

    #[test]
    fn zero_elevation_gives_opposite_pair() {
        let g = Grid::new(2, 32, 20.0).unwrap();
        let mut st = sample_state(g);
        st.eta = Field::zeros(g);
        let dg = diagonalize(&st, 0.3).unwrap();
        let sum: f64 = dg.u_plus.coeffs().iter().zip(dg.u_minus.coeffs()).map(|(a, b)| (a + b).norm()).fold(0.0, f64::max);
        assert!(sum < 1e-16);
    }

    #[test]
    fn round_trip_and_rhs_agree() {
        for (dim, n) in [(1, 64), (2, 32)] {
            let g = Grid::new(dim, n, 20.0).unwrap();
            let model = if dim == 1 { ModelKind::WB1D } else { ModelKind::WB2D };
            let p = ModelParams::new(model, 0.4, 0.3, model.default_s(), 0.5).unwrap();
            let st = sample_state(g);
            let dg = diagonalize(&st, p.mu).unwrap();
            assert!(reconstruct(&dg).unwrap().max_diff(&st) < 1e-12);
            let lhs = diagonalize(&wb_rhs(&st, &p).unwrap(), p.mu).unwrap();
            let rhs = diag_rhs(&dg, &p).unwrap();
            assert!(lhs.max_diff(&rhs) < 1e-13, "{dim}D: {}", lhs.max_diff(&rhs));
        }
    }

    #[test]
    fn linear_diagonal_flow() {
        let g = Grid::new(1, 64, 20.0).unwrap();
        let p = ModelParams::new(ModelKind::WB1D, 0.0, 1.0, 1.7, 0.5).unwrap();
        let dg = diagonalize(&sample_state(g), 1.0).unwrap();
        let r = diag_rhs(&dg, &p).unwrap();
        for k in 0..g.len() {
            let w = g.xi_abs(k) * t_mu(g.xi_abs(k), 1.0).sqrt();
            let want = Complex64::i() * w * dg.u_plus.coeffs()[k];
            assert!((r.u_plus.coeffs()[k] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn inconsistent_pair_is_rejected() {
        let g = Grid::new(1, 32, 10.0).unwrap();
        let mut plus = vec![Complex64::new(0.0, 0.0); g.len()];
        plus[3] = Complex64::new(1.0, 0.0);
        let dg = DiagState {
            u_plus: SpectralField::from_coeffs(g, plus).unwrap(),
            u_minus: SpectralField::zeros(g),
            mu: 1.0,
            v_mean: [0.0; 2],
        };
        assert!(matches!(reconstruct(&dg), Err(Error::Inconsistent(_))));
    }
}
