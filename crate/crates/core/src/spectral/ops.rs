use num_complex::Complex64;

use super::field::{ComplexField, Field, SpectralField};
use super::grid::Grid;
use super::transform::{forward, forward_field, inverse, inverse_field};
use crate::error::{Error, Result};

/// A Fourier symbol `m(ξ)` evaluable at lattice frequencies.
///
/// `xi` holds `dim` entries. Symbols that are singular at the origin must
/// return their declared zero-mode value there rather than NaN.
pub trait Multiplier {
    fn eval(&self, xi: &[f64]) -> Complex64;

    fn label(&self) -> String {
        "multiplier".to_string()
    }
}

impl<F> Multiplier for F
where
    F: Fn(&[f64]) -> Complex64,
{
    fn eval(&self, xi: &[f64]) -> Complex64 {
        self(xi)
    }
}

/// Evaluates `m` at every lattice frequency of `grid`, in spectral order.
pub fn symbol_table<M: Multiplier + ?Sized>(grid: &Grid, m: &M) -> Result<Vec<Complex64>> {
    let d = grid.dim();
    (0..grid.len())
        .map(|i| {
            let xi = grid.xi(i);
            let v = m.eval(&xi[..d]);
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::SymbolNotFinite {
                    symbol: m.label(),
                    xi: xi[..d].to_vec(),
                })
            }
        })
        .collect()
}

impl SpectralField {
    pub fn apply<M: Multiplier + ?Sized>(&self, m: &M) -> Result<SpectralField> {
        let table = symbol_table(self.grid(), m)?;
        Ok(self.mul_table(&table))
    }
}

/// `(m(ξ) f̂)^∨`, returning the real part of the result.
///
/// For symbols with `m(-ξ) = conj m(ξ)` the output is exactly real. At
/// Nyquist indices the pairing fails; dropping the imaginary part keeps only
/// `Re m` there, so compositions are exact on fields without Nyquist content.
pub fn apply_multiplier<M: Multiplier + ?Sized>(f: &Field, m: &M) -> Result<Field> {
    let sf = forward(f)?;
    Ok(inverse(&sf.apply(m)?))
}

/// `(m(ξ) f̂)^∨` on complex samples; no realness is assumed.
pub fn apply_multiplier_complex<M: Multiplier + ?Sized>(f: &ComplexField, m: &M) -> Result<ComplexField> {
    let sf = forward_field(f)?;
    Ok(inverse_field(&sf.apply(m)?))
}

/// 2/3-rule truncation: zeroes every mode with some |k| > n/3.
pub fn dealias(f: &Field) -> Field {
    let mut sf = forward(f).expect("dealias requires a finite field");
    sf.dealias_in_place();
    inverse(&sf)
}

/// `σ_α f(x) = α^d f(αx)`, returned on the `α`-rescaled grid (side `L/α`).
pub fn rescale_sigma(f: &Field, alpha: f64) -> Result<Field> {
    let grid = f.grid().rescaled(alpha)?;
    let factor = alpha.powi(grid.dim() as i32);
    Field::from_values(grid, f.values().iter().map(|v| factor * v).collect())
}

/// [`rescale_sigma`] for complex samples.
pub fn rescale_sigma_complex(f: &ComplexField, alpha: f64) -> Result<ComplexField> {
    let grid = f.grid().rescaled(alpha)?;
    let factor = alpha.powi(grid.dim() as i32);
    ComplexField::from_values(grid, f.values().iter().map(|v| v * factor).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_symbol() {
        let g = Grid::new(1, 64, 10.0).unwrap();
        let f = Field::from_fn(g, |x| (-(x[0] - 5.0).powi(2)).exp());
        let out = apply_multiplier(&f, &|_: &[f64]| c(1.0)).unwrap();
        assert!(out.max_diff(&f) < 1e-14);
    }

    #[test]
    fn derivative_of_cosine() {
        let g = Grid::new(1, 64, 2.0 * PI).unwrap();
        let k = 3.0;
        let f = Field::from_fn(g, |x| (k * x[0]).cos());
        let out = apply_multiplier(&f, &|xi: &[f64]| Complex64::new(0.0, xi[0])).unwrap();
        let expected = Field::from_fn(g, |x| -k * (k * x[0]).sin());
        assert!(out.max_diff(&expected) < 1e-12);
    }

    #[test]
    fn nan_symbol_reports_frequency() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let f = Field::zeros(g);
        let err = apply_multiplier(&f, &|xi: &[f64]| c(1.0 / xi[0] * 0.0)).unwrap_err();
        match err {
            Error::SymbolNotFinite { xi, .. } => assert_eq!(xi, vec![0.0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dealias_keeps_band_limited_and_kills_nyquist() {
        let g = Grid::new(1, 48usize.next_power_of_two(), 2.0 * PI).unwrap();
        let f = Field::from_fn(g, |x| (5.0 * x[0]).sin() + 0.3 * (21.0 * x[0]).cos());
        assert!(dealias(&f).max_diff(&f) < 1e-13);
        let nyq = Field::from_fn(g, |x| (32.0 * x[0]).cos());
        assert!(dealias(&nyq).max_abs() < 1e-13);
    }

    #[test]
    fn sigma_l1_norm_in_one_dimension() {
        // ‖σ_α f‖_{L¹} = ‖f‖_{L¹} in 1D
        let g = Grid::new(1, 1024, 40.0).unwrap();
        let f = Field::from_fn(g, |x| (-(x[0] - 20.0).powi(2)).exp());
        let f = f.scaled(3.0 / f.lp_norm(1.0));
        let s = rescale_sigma(&f, 2.0).unwrap();
        assert_relative_eq!(s.lp_norm(1.0), 3.0, max_relative = 1e-12);
        assert_relative_eq!(s.grid().length(), 20.0);
    }

    #[test]
    fn sigma_identity_at_one() {
        let g = Grid::new(2, 16, 3.0).unwrap();
        let f = Field::from_fn(g, |x| x[0].sin() * x[1].cos());
        assert_eq!(rescale_sigma(&f, 1.0).unwrap(), f);
        assert!(rescale_sigma(&f, 0.0).is_err());
        assert!(rescale_sigma(&f, -1.0).is_err());
    }
}
