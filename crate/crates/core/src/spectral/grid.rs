use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid with `n` points per axis on a box of side `length`.
///
/// Flat indices are row-major: in 2D the point `(i1, i2)` sits at
/// `i1 * n + i2` and has coordinates `(i1 dx, i2 dx)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dimension must be 1 or 2, got {dim}")));
        }
        if n < 8 {
            return Err(Error::InvalidGrid(format!("n must be at least 8, got {n}")));
        }
        if !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("n must be a power of two, got {n}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!("length must be positive, got {length}")));
        }
        Ok(Grid { dim, n, length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of grid points, `n^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Quadrature weight of one grid cell, `dx^d`.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    /// Box volume `L^d`.
    pub fn volume(&self) -> f64 {
        self.length.powi(self.dim as i32)
    }

    /// Spacing of the frequency lattice, `2π/L`.
    pub fn dxi(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Largest resolvable |frequency| along one axis (the Nyquist frequency).
    pub fn nyquist(&self) -> f64 {
        self.dxi() * (self.n / 2) as f64
    }

    /// Signed mode number of a per-axis FFT index: `0, 1, …, n/2-1, -n/2, …, -1`.
    pub fn mode(&self, index: usize) -> i64 {
        let n = self.n as i64;
        let i = index as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Per-axis frequencies in FFT order.
    pub fn freqs(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.mode(i) as f64 * self.dxi()).collect()
    }

    /// Per-axis frequencies sorted increasingly, `2πk/L` for `k ∈ [-n/2, n/2)`.
    pub fn sorted_freqs(&self) -> Vec<f64> {
        let half = (self.n / 2) as i64;
        (-half..half).map(|k| k as f64 * self.dxi()).collect()
    }

    /// Splits a flat index into per-axis indices (the second is 0 in 1D).
    pub fn split(&self, flat: usize) -> [usize; 2] {
        if self.dim == 1 {
            [flat, 0]
        } else {
            [flat / self.n, flat % self.n]
        }
    }

    /// Per-axis mode numbers of a flat spectral index.
    pub fn modes(&self, flat: usize) -> [i64; 2] {
        let [a, b] = self.split(flat);
        if self.dim == 1 {
            [self.mode(a), 0]
        } else {
            [self.mode(a), self.mode(b)]
        }
    }

    /// Frequency vector of a flat spectral index. Only the first `dim`
    /// entries are meaningful.
    pub fn xi(&self, flat: usize) -> [f64; 2] {
        let [k1, k2] = self.modes(flat);
        [k1 as f64 * self.dxi(), k2 as f64 * self.dxi()]
    }

    /// |ξ| of a flat spectral index.
    pub fn xi_abs(&self, flat: usize) -> f64 {
        let [a, b] = self.xi(flat);
        a.hypot(b)
    }

    /// Physical coordinates of a flat index.
    pub fn coords(&self, flat: usize) -> [f64; 2] {
        let [a, b] = self.split(flat);
        [a as f64 * self.dx(), b as f64 * self.dx()]
    }

    /// Centre of the box, used to place localized data.
    pub fn centre(&self) -> [f64; 2] {
        let c = 0.5 * self.length;
        if self.dim == 1 {
            [c, 0.0]
        } else {
            [c, c]
        }
    }

    /// Grid for `σ_α`: same `n`, side `L/α`.
    pub fn rescaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::param("alpha", format!("must be positive, got {alpha}")));
        }
        Grid::new(self.dim, self.n, self.length / alpha)
    }

    /// True when the flat spectral index carries a Nyquist component on some axis.
    pub fn is_nyquist(&self, flat: usize) -> bool {
        let half = (self.n / 2) as i64;
        let [a, b] = self.modes(flat);
        a == -half || (self.dim == 2 && b == -half)
    }

    /// Powers of two `λ` whose Littlewood–Paley band is resolvable and free of
    /// aliasing: `4π/L ≤ λ ≤ (n/3)(2π/L)`.
    pub fn dyadic_bands(&self) -> Vec<f64> {
        let lo = 2.0 * self.dxi();
        let hi = (self.n as f64 / 3.0) * self.dxi();
        let mut out = Vec::new();
        let mut k = lo.log2().ceil() as i32;
        while 2f64.powi(k) <= hi {
            out.push(2f64.powi(k));
            k += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lattice_on_two_pi_box() {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        let f = g.sorted_freqs();
        let expected = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        for (a, b) in f.iter().zip(expected) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn spacing_and_volume() {
        let g = Grid::new(1, 256, 100.0).unwrap();
        assert_eq!(g.dx(), 0.390625);
        assert_eq!(g.dx() * g.n() as f64, g.length());
        let g2 = Grid::new(2, 128, 50.0).unwrap();
        // 2π/50 to 16 digits
        assert_relative_eq!(g2.dxi(), 0.12566370614359174, max_relative = 1e-15);
        assert_eq!(g2.len(), 128 * 128);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Grid::new(1, 7, 1.0).is_err());
        assert!(Grid::new(1, 4, 1.0).is_err());
        assert!(Grid::new(1, 12, 1.0).is_err());
        assert!(Grid::new(1, 16, 0.0).is_err());
        assert!(Grid::new(1, 16, -3.0).is_err());
        assert!(Grid::new(3, 16, 1.0).is_err());
    }

    #[test]
    fn frequencies_symmetric_except_nyquist() {
        let g = Grid::new(1, 32, 10.0).unwrap();
        let f = g.sorted_freqs();
        assert_relative_eq!(f[0], -g.nyquist());
        for k in 1..16 {
            assert_relative_eq!(f[16 + k], -f[16 - k], epsilon = 1e-14);
        }
    }

    #[test]
    fn dyadic_bands_are_resolved() {
        let g = Grid::new(1, 1024, 100.0).unwrap();
        let bands = g.dyadic_bands();
        assert!(!bands.is_empty());
        for b in bands {
            assert!(b >= 2.0 * g.dxi() && b <= g.n() as f64 / 3.0 * g.dxi());
        }
    }
}
