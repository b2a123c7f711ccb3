//! Frequency-localized wave packets and the radial dispersion relation used
//! by the linear experiments.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral::{inverse_field, Complex64, ComplexField, Grid, SpectralField};
use crate::symbols::{beta_lambda, tanh_ratio};

/// Radial phase `ω(r) = μ^{-1/2} m(√μ r) = r √(tanh(√μ r)/(√μ r))`.
pub fn omega(r: f64, mu: f64) -> f64 {
    r * tanh_ratio(mu.sqrt() * r).sqrt()
}

/// `ω'(r)` by a fourth-order central difference.
pub fn group_velocity(r: f64, mu: f64) -> f64 {
    let h = 1e-3 * r.max(1e-3);
    (-omega(r + 2.0 * h, mu) + 8.0 * omega(r + h, mu) - 8.0 * omega(r - h, mu) + omega(r - 2.0 * h, mu)) / (12.0 * h)
}

/// `ω''(r)` by a central difference.
pub fn omega_second(r: f64, mu: f64) -> f64 {
    let h = 1e-2 * r.max(1e-3);
    (omega(r + h, mu) - 2.0 * omega(r, mu) + omega(r - h, mu)) / (h * h)
}

/// Largest group speed over the band `[λ/2, 2λ]`.
pub fn max_group_speed(lambda: f64, mu: f64) -> f64 {
    (0..=200)
        .map(|k| group_velocity(lambda * (0.5 + 1.5 * k as f64 / 200.0), mu))
        .fold(0.0, f64::max)
}

/// `P_λ` applied to the centred gaussian `exp(-|x - c|²/(2w²))`, built from
/// its continuous Fourier transform so the coefficients are exactly
/// supported on `λ/2 ≤ |ξ| ≤ 2λ`. Returns the coefficients and the
/// `L¹` norm of the unprojected gaussian.
pub fn band_packet(grid: &Grid, lambda: f64, w: f64) -> Result<(SpectralField, f64)> {
    if 2.0 * lambda >= grid.nyquist() {
        return Err(Error::Unresolved {
            lambda,
            reason: format!("band edge 2λ = {} reaches the Nyquist frequency {}", 2.0 * lambda, grid.nyquist()),
        });
    }
    let d = grid.dim() as i32;
    let norm = (2.0 * PI * w * w).powf(0.5 * d as f64);
    let scale = norm / grid.volume();
    let c = grid.centre();
    let coeffs = (0..grid.len())
        .map(|k| {
            let xi = grid.xi(k);
            let r = grid.xi_abs(k);
            let b = beta_lambda(r, lambda);
            if b == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let shift: f64 = (0..d as usize).map(|j| xi[j] * c[j]).sum();
            Complex64::from_polar(scale * b * (-0.5 * w * w * r * r).exp(), -shift)
        })
        .collect();
    Ok((SpectralField::from_coeffs(*grid, coeffs)?, norm))
}

/// Phase table `ω(|ξ|)` with the sign of `m_1` in 1D.
pub fn phase_table(grid: &Grid, mu: f64) -> Vec<f64> {
    (0..grid.len())
        .map(|k| {
            let w = omega(grid.xi_abs(k), mu);
            if grid.dim() == 1 && grid.xi(k)[0] < 0.0 {
                -w
            } else {
                w
            }
        })
        .collect()
}

/// `S(t)` applied to coefficients via a precomputed phase table.
pub fn evolve_packet(f: &SpectralField, phase: &[f64], t: f64) -> ComplexField {
    let coeffs = f
        .coeffs()
        .iter()
        .zip(phase)
        .map(|(c, p)| c * Complex64::from_polar(1.0, t * p))
        .collect();
    inverse_field(&SpectralField::from_coeffs(*f.grid(), coeffs).expect("same grid"))
}

/// `n` log-spaced points on `[a, b]`.
pub fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n).map(|k| (la + (lb - la) * k as f64 / (n - 1) as f64).exp()).collect()
}
