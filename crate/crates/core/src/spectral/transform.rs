use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::{ComplexField, Field, SpectralField};
use super::grid::Grid;
use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// Unnormalized in-place d-dimensional FFT.
fn fft_nd(grid: &Grid, data: &mut [Complex64], inverse: bool) {
    let n = grid.n();
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    if grid.dim() == 1 {
        fft.process_with_scratch(data, &mut scratch);
        return;
    }
    // rows are contiguous
    fft.process_with_scratch(data, &mut scratch);
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for (i, c) in column.iter_mut().enumerate() {
            *c = data[i * n + j];
        }
        fft.process_with_scratch(&mut column, &mut scratch);
        for (i, c) in column.iter().enumerate() {
            data[i * n + j] = *c;
        }
    }
}

/// Forward transform of a real field. Rejects non-finite samples.
pub fn forward(field: &Field) -> Result<SpectralField> {
    field.check_finite()?;
    let grid = *field.grid();
    let data: Vec<Complex64> = field.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_complex(&grid, data)
}

/// Forward transform of complex samples.
pub fn forward_complex(grid: &Grid, mut data: Vec<Complex64>) -> Result<SpectralField> {
    if let Some(index) = data.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::NonFinite { index });
    }
    fft_nd(grid, &mut data, false);
    let scale = 1.0 / grid.len() as f64;
    for c in data.iter_mut() {
        *c *= scale;
    }
    SpectralField::from_coeffs(*grid, data)
}

/// Inverse transform; the imaginary part (round-off for Hermitian input) is dropped.
pub fn inverse(sf: &SpectralField) -> Field {
    let values = inverse_complex(sf).into_iter().map(|c| c.re).collect();
    Field::from_values(*sf.grid(), values).expect("grid-consistent length")
}

/// Inverse transform keeping the complex samples.
pub fn inverse_complex(sf: &SpectralField) -> Vec<Complex64> {
    let mut data = sf.coeffs().to_vec();
    fft_nd(sf.grid(), &mut data, true);
    data
}

/// Forward transform of complex samples held in a [`ComplexField`].
pub fn forward_field(f: &ComplexField) -> Result<SpectralField> {
    forward_complex(f.grid(), f.values().to_vec())
}

/// Inverse transform keeping the complex samples.
pub fn inverse_field(sf: &SpectralField) -> ComplexField {
    ComplexField::from_values(*sf.grid(), inverse_complex(sf)).expect("grid-consistent length")
}
