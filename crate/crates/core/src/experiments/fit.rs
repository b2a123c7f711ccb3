//! Least-squares exponent fits in log–log coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `r²` the two extreme points are dropped once.
pub const TRIM_R_SQUARED: f64 = 0.98;
pub const MIN_FIT_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
    /// Range of the abscissa actually used.
    pub window: (f64, f64),
    /// Whether the extreme points were dropped.
    pub trimmed: bool,
}

/// Ordinary least squares `y = a + b x`; returns `(b, a, r²)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (b, a, r2)
}

/// Fits `log y = a + b log x` with no trimming.
pub fn fit_power_law_raw(x: &[f64], y: &[f64]) -> Result<FitResult> {
    if x.len() != y.len() {
        return Err(Error::param("fit", "abscissa and ordinate lengths differ"));
    }
    if x.len() < MIN_FIT_POINTS {
        return Err(Error::param("fit", format!("need at least {MIN_FIT_POINTS} points, got {}", x.len())));
    }
    if x.iter().chain(y).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::param("fit", "log-log fit needs positive finite data"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let (b, a, r2) = linear_fit(&lx, &ly);
    let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        exponent: b,
        intercept: a,
        r_squared: r2,
        n_points: x.len(),
        window: (lo, hi),
        trimmed: false,
    })
}

/// Power-law fit; if `r² < 0.98` and enough points remain, the smallest and
/// largest abscissae are dropped and the fit redone.
pub fn fit_power_law(x: &[f64], y: &[f64]) -> Result<FitResult> {
    let fit = fit_power_law_raw(x, y)?;
    if fit.r_squared >= TRIM_R_SQUARED || x.len() < MIN_FIT_POINTS + 2 {
        return Ok(fit);
    }
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let keep = &idx[1..idx.len() - 1];
    let xs: Vec<f64> = keep.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = keep.iter().map(|&i| y[i]).collect();
    let mut trimmed = fit_power_law_raw(&xs, &ys)?;
    trimmed.trimmed = true;
    Ok(trimmed)
}
