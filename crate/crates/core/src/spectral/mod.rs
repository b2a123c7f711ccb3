//! Periodic-box discretization and the Fourier machinery shared by every
//! other module.
//!
//! The whole line (or plane) is approximated by a periodic box of side `L`
//! sampled at `n` points per axis. The forward transform carries the
//! `1/n^d` factor, so a unit-amplitude cosine has coefficient `1/2` at each
//! of `±k`. Multiplying a coefficient by the box volume `L^d` gives the
//! continuous Fourier transform of the periodized field at that frequency.

mod field;
mod grid;
mod ops;
mod transform;

pub use field::{ComplexField, Field, SpectralField};
pub use grid::Grid;
pub use ops::{apply_multiplier, apply_multiplier_complex, dealias, rescale_sigma, rescale_sigma_complex, symbol_table, Multiplier};
pub use transform::{forward, forward_complex, forward_field, inverse, inverse_complex, inverse_field};

pub use num_complex::Complex64;
