//! Smooth dyadic cutoffs.
//!
//! `χ(s) = ψ(2-|s|) / (ψ(2-|s|) + ψ(|s|-1))` with `ψ(x) = e^{-1/x}` for
//! `x > 0` and `0` otherwise. It equals 1 on `|s| ≤ 1`, vanishes for
//! `|s| ≥ 2` and is smooth. `β(s) = χ(s) - χ(2s)` is supported in
//! `1/2 ≤ |s| ≤ 2`, so `β_λ = β(·/λ)` lives on `[λ/2, 2λ]`.

use crate::error::{Error, Result};
use crate::spectral::{apply_multiplier, Complex64, Field};

fn psi(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

pub fn chi(s: f64) -> f64 {
    let a = s.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        let p = psi(2.0 - a);
        p / (p + psi(a - 1.0))
    }
}

pub fn beta(s: f64) -> f64 {
    chi(s) - chi(2.0 * s)
}

/// `β(s/λ)`.
pub fn beta_lambda(s: f64, lambda: f64) -> f64 {
    beta(s / lambda)
}

/// `P_λ f`, the multiplier `β_λ(|ξ|)`.
pub fn lp_project(f: &Field, lambda: f64) -> Result<Field> {
    if !(lambda > 0.0) {
        return Err(Error::param("lambda", "must be positive"));
    }
    apply_multiplier(f, &|xi: &[f64]| Complex64::new(beta_lambda(norm(xi), lambda), 0.0))
}

/// `P_{≤α} f`, the multiplier `χ(|ξ|/α)`.
pub fn lp_low(f: &Field, alpha: f64) -> Result<Field> {
    if !(alpha > 0.0) {
        return Err(Error::param("alpha", "must be positive"));
    }
    apply_multiplier(f, &|xi: &[f64]| Complex64::new(chi(norm(xi) / alpha), 0.0))
}

fn norm(xi: &[f64]) -> f64 {
    xi.iter().map(|x| x * x).sum::<f64>().sqrt()
}
