use num_complex::Complex64;

use super::curl::{curl_residual, velocity_gradient_norm};
use super::params::{ModelKind, ModelParams};
use super::state::{SpectralState, State};
use crate::error::{Error, Result};
use crate::spectral::{forward, inverse_complex, Field, Grid, SpectralField};
use crate::symbols::t_mu;

fn check_model(p: &ModelParams, u: &SpectralState) -> Result<()> {
    if u.comps.len() != p.model.components() || u.grid.dim() != p.dim() {
        return Err(Error::GridMismatch(format!(
            "{} expects {} components in {}D, got {} in {}D",
            p.model,
            p.model.components(),
            p.dim(),
            u.comps.len(),
            u.grid.dim()
        )));
    }
    Ok(())
}

fn to_physical(grid: &Grid, c: &[Complex64]) -> Vec<f64> {
    let sf = SpectralField::from_coeffs(*grid, c.to_vec()).expect("grid-consistent length");
    inverse_complex(&sf).into_iter().map(|z| z.re).collect()
}

/// Dealiased coefficients of a pointwise product.
fn product_coeffs(grid: &Grid, values: Vec<f64>) -> Result<Vec<Complex64>> {
    let mut sf = forward(&Field::from_values(*grid, values)?)?;
    sf.dealias_in_place();
    Ok(sf.into_coeffs())
}

/// Linear part `L U` in Fourier variables.
pub fn linear_terms(p: &ModelParams, u: &SpectralState) -> SpectralState {
    let g = u.grid;
    let i = Complex64::i();
    let mut out = SpectralState::zeros_like(u);
    match p.model {
        ModelKind::Whitham1D => {
            for k in 0..g.len() {
                let xi = g.xi(k)[0];
                out.comps[0][k] = -i * xi * t_mu(xi.abs(), p.mu).sqrt() * u.comps[0][k];
            }
        }
        _ => {
            let d = g.dim();
            for k in 0..g.len() {
                let xi = g.xi(k);
                let t = t_mu(g.xi_abs(k), p.mu);
                let div: Complex64 = (0..d).map(|j| i * xi[j] * u.comps[j + 1][k]).sum();
                out.comps[0][k] = -div;
                for j in 0..d {
                    out.comps[j + 1][k] = -t * i * xi[j] * u.comps[0][k];
                }
            }
        }
    }
    out
}

/// Quadratic part `N(U)`, every product dealiased by the 2/3 rule.
pub fn nonlinear_terms(p: &ModelParams, u: &SpectralState) -> Result<SpectralState> {
    check_model(p, u)?;
    let g = u.grid;
    let i = Complex64::i();
    let mut out = SpectralState::zeros_like(u);
    if p.eps == 0.0 {
        return Ok(out);
    }
    let eta = to_physical(&g, &u.comps[0]);
    match p.model {
        ModelKind::Whitham1D => {
            let sq = product_coeffs(&g, eta.iter().map(|e| e * e).collect())?;
            for k in 0..g.len() {
                out.comps[0][k] = -0.5 * p.eps * i * g.xi(k)[0] * sq[k];
            }
        }
        _ => {
            let d = g.dim();
            let v: Vec<Vec<f64>> = (0..d).map(|j| to_physical(&g, &u.comps[j + 1])).collect();
            let flux: Vec<Vec<Complex64>> = v
                .iter()
                .map(|vj| product_coeffs(&g, eta.iter().zip(vj).map(|(a, b)| a * b).collect()))
                .collect::<Result<_>>()?;
            let speed2: Vec<f64> = (0..g.len()).map(|k| v.iter().map(|vj| vj[k] * vj[k]).sum()).collect();
            let sq = product_coeffs(&g, speed2)?;
            for k in 0..g.len() {
                let xi = g.xi(k);
                let div: Complex64 = (0..d).map(|j| i * xi[j] * flux[j][k]).sum();
                out.comps[0][k] = -p.eps * div;
                for j in 0..d {
                    out.comps[j + 1][k] = -0.5 * p.eps * i * xi[j] * sq[k];
                }
            }
        }
    }
    Ok(out)
}

fn full_rhs(p: &ModelParams, u: &SpectralState) -> Result<SpectralState> {
    let mut out = nonlinear_terms(p, u)?;
    out.axpy(1.0, &linear_terms(p, u));
    Ok(out)
}

/// `-√T_μ(D)∂_x η - (ε/2)∂_x(η²)`.
pub fn whitham_rhs(eta: &Field, p: &ModelParams) -> Result<Field> {
    if p.model != ModelKind::Whitham1D {
        return Err(Error::param("model", format!("whitham_rhs called with {}", p.model)));
    }
    let u = SpectralState::from_state(&State::scalar(eta.clone()))?;
    Ok(full_rhs(p, &u)?.to_state(0.0).eta)
}

/// Time derivative of a Whitham–Boussinesq state. In 2D the velocity must
/// be curl-free: residual at most `1e-8 ‖∇v‖₂`.
pub fn wb_rhs(state: &State, p: &ModelParams) -> Result<State> {
    if !p.model.is_boussinesq() {
        return Err(Error::param("model", format!("wb_rhs called with {}", p.model)));
    }
    if p.model == ModelKind::WB2D {
        let residual = curl_residual(&state.v)?;
        let threshold = 1e-8 * velocity_gradient_norm(&state.v)? + 1e-300;
        if residual > threshold {
            return Err(Error::NotCurlFree { residual, threshold });
        }
    }
    let u = SpectralState::from_state(state)?;
    Ok(full_rhs(p, &u)?.to_state(state.t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn zero_state_gives_zero() {
        let g = Grid::new(1, 64, 30.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, 0.5, 1.0, 1.7, 0.5).unwrap();
        assert_eq!(whitham_rhs(&Field::zeros(g), &p).unwrap().max_abs(), 0.0);
        let p = ModelParams::new(ModelKind::WB2D, 0.5, 1.0, 2.3, 0.5).unwrap();
        let g2 = Grid::new(2, 16, 30.0).unwrap();
        let z = State::zeros(ModelKind::WB2D, g2);
        let r = wb_rhs(&z, &p).unwrap();
        assert_eq!(r.max_diff(&z), 0.0);
    }

    #[test]
    fn whitham_single_mode() {
        let g = Grid::new(1, 128, 2.0 * PI * 4.0).unwrap();
        let (k, eps, mu) = (1.5, 0.3, 0.6);
        let p = ModelParams::new(ModelKind::Whitham1D, eps, mu, 1.7, 0.5).unwrap();
        let eta = Field::from_fn(g, |x| (k * x[0]).cos());
        let out = whitham_rhs(&eta, &p).unwrap();
        let c = k * t_mu(k, mu).sqrt();
        let expected = Field::from_fn(g, |x| c * (k * x[0]).sin() + 0.5 * eps * k * (2.0 * k * x[0]).sin());
        assert!(out.max_diff(&expected) < 1e-12);
        assert!(out.mean().abs() < 1e-15);
    }

    #[test]
    fn wb_linear_single_mode() {
        let g = Grid::new(1, 64, 2.0 * PI * 2.0).unwrap();
        let (k, mu) = (2.5, 0.3);
        let p = ModelParams::new(ModelKind::WB1D, 0.0, mu, 1.7, 0.5).unwrap();
        let eta = Field::from_fn(g, |x| (k * x[0]).cos());
        let st = State::new(eta, vec![Field::zeros(g)]).unwrap();
        let r = wb_rhs(&st, &p).unwrap();
        assert!(r.eta.max_abs() < 1e-14);
        let expected = Field::from_fn(g, |x| k * t_mu(k, mu) * (k * x[0]).sin());
        assert!(r.v[0].max_diff(&expected) < 1e-13);
    }

    #[test]
    fn wb_rejects_rotational_velocity() {
        let g = Grid::new(2, 32, 2.0 * PI).unwrap();
        let p = ModelParams::new(ModelKind::WB2D, 0.1, 1.0, 2.3, 0.5).unwrap();
        // v = ∇^⊥ ψ with ψ = sin x sin y
        let v1 = Field::from_fn(g, |x| x[0].sin() * x[1].cos());
        let v2 = Field::from_fn(g, |x| -x[0].cos() * x[1].sin());
        let st = State::new(Field::zeros(g), vec![v1, v2]).unwrap();
        assert!(matches!(wb_rhs(&st, &p), Err(Error::NotCurlFree { .. })));
    }

    #[test]
    fn wb2d_output_is_gradient() {
        let g = Grid::new(2, 32, 12.0).unwrap();
        let p = ModelParams::new(ModelKind::WB2D, 0.7, 0.5, 2.3, 0.5).unwrap();
        let w = 2.0 * PI / 12.0;
        let eta = Field::from_fn(g, |x| 0.4 * (w * x[0]).cos() * (2.0 * w * x[1]).sin());
        // v = ∇φ, φ = cos(w x) + sin(w(x + y))
        let v1 = Field::from_fn(g, |x| -w * (w * x[0]).sin() + w * (w * (x[0] + x[1])).cos());
        let v2 = Field::from_fn(g, |x| w * (w * (x[0] + x[1])).cos());
        let st = State::new(eta, vec![v1, v2]).unwrap();
        let r = wb_rhs(&st, &p).unwrap();
        let res = curl_residual(&r.v).unwrap();
        let grad = velocity_gradient_norm(&r.v).unwrap();
        assert!(res < 1e-10 * grad.max(1.0), "{res} vs {grad}");
        assert_relative_eq!(r.eta.mean(), 0.0, epsilon = 1e-15);
    }
}
