use num_complex::Complex64;

use super::state::SpectralState;
use crate::error::{Error, Result};
use crate::spectral::{forward, inverse, Field, Grid, SpectralField};

fn check_2d(v: &[Field]) -> Result<Grid> {
    if v.len() != 2 || v[0].grid().dim() != 2 || v[0].grid() != v[1].grid() {
        return Err(Error::GridMismatch("expected a two-component field on a 2D grid".into()));
    }
    Ok(*v[0].grid())
}

/// `‖∂_2 v_1 - ∂_1 v_2‖_{L²}`, computed spectrally.
pub fn curl_residual(v: &[Field]) -> Result<f64> {
    let g = check_2d(v)?;
    let a = forward(&v[0])?;
    let b = forward(&v[1])?;
    let coeffs = (0..g.len())
        .map(|k| {
            let xi = g.xi(k);
            Complex64::i() * (xi[1] * a.coeffs()[k] - xi[0] * b.coeffs()[k])
        })
        .collect();
    Ok(SpectralField::from_coeffs(g, coeffs)?.l2_norm_sq().sqrt())
}

/// `‖∇v‖_{L²}` (Frobenius over components and directions).
pub fn velocity_gradient_norm(v: &[Field]) -> Result<f64> {
    let mut s = 0.0;
    for c in v {
        s += forward(c)?.weighted_norm_sq(|r| r * r);
    }
    Ok(s.sqrt())
}

/// Helmholtz projection onto gradients: keeps `(ξ·v̂)ξ/|ξ|²`; the zero
/// mode is left untouched.
pub fn project_curl_free(v: &[Field]) -> Result<Vec<Field>> {
    let g = check_2d(v)?;
    let mut u = SpectralState {
        grid: g,
        comps: vec![
            vec![Complex64::new(0.0, 0.0); g.len()],
            forward(&v[0])?.into_coeffs(),
            forward(&v[1])?.into_coeffs(),
        ],
    };
    project_curl_free_spectral(&mut u);
    Ok((1..3)
        .map(|j| inverse(&SpectralField::from_coeffs(g, u.comps[j].clone()).expect("length")))
        .collect())
}

/// In-place projection of components 1 and 2 of a 2D spectral state.
pub fn project_curl_free_spectral(u: &mut SpectralState) {
    let g = u.grid;
    if g.dim() != 2 || u.comps.len() < 3 {
        return;
    }
    for k in 0..g.len() {
        let r = g.xi_abs(k);
        if r == 0.0 {
            continue;
        }
        let xi = g.xi(k);
        let e = [xi[0] / r, xi[1] / r];
        let w = u.comps[1][k] * e[0] + u.comps[2][k] * e[1];
        u.comps[1][k] = w * e[0];
        u.comps[2][k] = w * e[1];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(2, 32, 2.0 * PI).unwrap()
    }

    #[test]
    fn gradient_is_fixed() {
        let g = grid();
        // ∇(sin x cos 2y)
        let v = vec![
            Field::from_fn(g, |x| x[0].cos() * (2.0 * x[1]).cos()),
            Field::from_fn(g, |x| -2.0 * x[0].sin() * (2.0 * x[1]).sin()),
        ];
        let p = project_curl_free(&v).unwrap();
        assert!(p[0].max_diff(&v[0]) < 1e-12 && p[1].max_diff(&v[1]) < 1e-12);
        assert!(curl_residual(&v).unwrap() < 1e-12);
    }

    #[test]
    fn rotational_field_is_removed() {
        let g = grid();
        // ∇^⊥ψ with ψ = sin x sin y; curl = -Δψ = 2ψ, so the residual is 2‖ψ‖₂ = 2π
        let v = vec![
            Field::from_fn(g, |x| x[0].sin() * x[1].cos()),
            Field::from_fn(g, |x| -x[0].cos() * x[1].sin()),
        ];
        let before = curl_residual(&v).unwrap();
        assert!((before - 2.0 * PI).abs() < 1e-11, "{before}");
        let p = project_curl_free(&v).unwrap();
        assert!(p[0].max_abs() < 1e-13 && p[1].max_abs() < 1e-13);
    }

    #[test]
    fn projection_is_idempotent_and_keeps_mean() {
        let g = grid();
        let v = vec![
            Field::from_fn(g, |x| 0.3 + x[0].sin() * x[1].cos() + (2.0 * x[0]).cos()),
            Field::from_fn(g, |x| -0.1 + x[1].sin() * (x[0] + x[1]).cos()),
        ];
        let p1 = project_curl_free(&v).unwrap();
        let p2 = project_curl_free(&p1).unwrap();
        assert!(p1[0].max_diff(&p2[0]) < 1e-13 && p1[1].max_diff(&p2[1]) < 1e-13);
        assert!((p1[0].mean() - 0.3).abs() < 1e-14);
        assert!((p1[1].mean() + 0.1).abs() < 1e-14);
        assert!(curl_residual(&p1).unwrap() < 1e-12);
    }
}
