//! The rescaling identity `S_{μ,d}(t)P_λ = σ_{1/√μ} S_{1,d}(t/√μ) P_{√μλ} σ_{√μ}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::linear_propagate;
use crate::spectral::{rescale_sigma, rescale_sigma_complex, ComplexField, Field};
use crate::symbols::{check_mu, lp_project};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub mu: f64,
    pub lambda: f64,
    pub t: f64,
    pub max_error: f64,
    pub f_sup: f64,
    pub pass: bool,
}

/// Relative tolerance on `‖f‖_∞`.
pub const SCALING_TOL: f64 = 1e-10;

/// Both sides of the identity evaluated on the dual grids `L` and `L/√μ`.
pub fn scaling_identity_test(mu: f64, lambda: f64, t: f64, f: &Field) -> Result<ScalingReport> {
    check_mu(mu)?;
    let grid = *f.grid();
    if 2.0 * lambda >= grid.nyquist() {
        return Err(Error::Unresolved {
            lambda,
            reason: format!("band edge {} is not below the Nyquist frequency {}", 2.0 * lambda, grid.nyquist()),
        });
    }
    let d = grid.dim();
    let sm = mu.sqrt();
    let lhs = linear_propagate(&ComplexField::from(&lp_project(f, lambda)?), t, mu, d, 1.0)?;

    let g = rescale_sigma(f, sm)?;
    let g = lp_project(&g, sm * lambda)?;
    let g = linear_propagate(&ComplexField::from(&g), t / sm, 1.0, d, 1.0)?;
    let rhs = rescale_sigma_complex(&g, 1.0 / sm)?;
    // σ maps back onto a grid of the same side up to rounding in L
    let rhs = ComplexField::from_values(grid, rhs.into_values())?;

    let max_error = lhs.max_diff(&rhs);
    let f_sup = f.max_abs();
    Ok(ScalingReport {
        mu,
        lambda,
        t,
        max_error,
        f_sup,
        pass: max_error < SCALING_TOL * f_sup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::DataSpec;
    use crate::spectral::Grid;

    #[test]
    fn identity_at_unit_mu() {
        let g = Grid::new(1, 256, 40.0).unwrap();
        let f = DataSpec::Gaussian { a: 1.0, w: 0.7 }.sample_scalar(&g).unwrap();
        let r = scaling_identity_test(1.0, 2.0, 10.0, &f).unwrap();
        assert_eq!(r.max_error, 0.0);
    }

    #[test]
    fn quarter_mu() {
        let g = Grid::new(1, 512, 60.0).unwrap();
        let f = DataSpec::Gaussian { a: 1.0, w: 0.3 }.sample_scalar(&g).unwrap();
        let r = scaling_identity_test(0.25, 4.0, 10.0, &f).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn unresolved_band() {
        let g = Grid::new(1, 32, 40.0).unwrap();
        let f = Field::zeros(g);
        assert!(matches!(scaling_identity_test(0.5, 2.0, 1.0, &f), Err(Error::Unresolved { .. })));
    }
}
