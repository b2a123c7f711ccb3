//! Commutator probes for `[J^s √T_μ(D), f]g` and `[J^s T_μ^{-1/2}(D), f]g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::DataSpec;
use crate::spectral::{forward, inverse, Complex64, Field, Grid, SpectralField};
use crate::symbols::{check_mu, japanese, t_mu};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorKind {
    /// `J^s √T_μ(D)` against `‖∇f‖_∞‖J^{s-1}g‖₂ + ‖J^s f‖₂‖g‖_∞`.
    SqrtT,
    /// `J^s T_μ^{-1/2}(D)` against the same bound with `J_μ^{1/2}` weights.
    InvSqrtT,
}

impl CommutatorKind {
    pub const ALL: [CommutatorKind; 2] = [CommutatorKind::SqrtT, CommutatorKind::InvSqrtT];

    /// Key in the pinned-constants table.
    pub fn key(self) -> &'static str {
        match self {
            CommutatorKind::SqrtT => "sqrt_t",
            CommutatorKind::InvSqrtT => "inv_sqrt_t",
        }
    }

    fn symbol(self, r: f64, s: f64, mu: f64) -> f64 {
        match self {
            CommutatorKind::SqrtT => japanese(r).powf(s) * t_mu(r, mu).sqrt(),
            CommutatorKind::InvSqrtT => japanese(r).powf(s) / t_mu(r, mu).sqrt(),
        }
    }

    /// `J_μ^{1/2} = ⟨√μ ξ⟩^{1/2}` for the second kind, 1 otherwise.
    fn extra_weight(self, r: f64, mu: f64) -> f64 {
        match self {
            CommutatorKind::SqrtT => 1.0,
            CommutatorKind::InvSqrtT => japanese(mu.sqrt() * r).sqrt(),
        }
    }
}

fn radial_multiply(sf: &SpectralField, m: impl Fn(f64) -> f64) -> SpectralField {
    let g = *sf.grid();
    let c = sf.coeffs().iter().enumerate().map(|(k, z)| z * m(g.xi_abs(k))).collect();
    SpectralField::from_coeffs(g, c).expect("same grid")
}

fn sup_gradient(f: &SpectralField) -> f64 {
    let g = *f.grid();
    let parts: Vec<Field> = (0..g.dim())
        .map(|j| {
            let c = f
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, z)| Complex64::i() * g.xi(k)[j] * z)
                .collect();
            inverse(&SpectralField::from_coeffs(g, c).expect("same grid"))
        })
        .collect();
    (0..g.len())
        .map(|i| parts.iter().map(|p| p.values()[i].powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

/// Largest spectral radius allowed for probe fields: products of two such
/// fields are alias-free.
pub fn probe_band_limit(grid: &Grid) -> f64 {
    (grid.n() / 4 - 1) as f64 * grid.dxi()
}

fn check_band(f: &SpectralField) -> Result<()> {
    let g = f.grid();
    let limit = probe_band_limit(g) * (1.0 + 1e-12);
    let peak = f.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (k, z) in f.coeffs().iter().enumerate() {
        let [a, b] = g.xi(k);
        if a.abs().max(b.abs()) > limit && z.norm() > 1e-13 * peak {
            return Err(Error::param("probe", "fields must be band-limited below n/4 so products do not alias"));
        }
    }
    Ok(())
}

/// `(‖[M, f]g‖₂, bound)` for one pair.
pub fn commutator_terms(kind: CommutatorKind, s: f64, mu: f64, f: &Field, g: &Field) -> Result<(f64, f64)> {
    check_mu(mu)?;
    let fh = forward(f)?;
    let gh = forward(g)?;
    check_band(&fh)?;
    check_band(&gh)?;
    let m = |r: f64| kind.symbol(r, s, mu);
    let fg = forward(&f.product(g))?;
    let m_fg = inverse(&radial_multiply(&fg, m));
    let f_mg = f.product(&inverse(&radial_multiply(&gh, m)));
    let comm = (&m_fg - &f_mg).l2_norm();

    let low = radial_multiply(&gh, |r| japanese(r).powf(s - 1.0) * kind.extra_weight(r, mu)).l2_norm_sq().sqrt();
    let high = radial_multiply(&fh, |r| japanese(r).powf(s) * kind.extra_weight(r, mu)).l2_norm_sq().sqrt();
    let bound = sup_gradient(&fh) * low + high * g.max_abs();
    Ok((comm, bound))
}

/// Ratio of the commutator to its bound; `0` when the commutator vanishes.
pub fn commutator_ratio(kind: CommutatorKind, s: f64, mu: f64, f: &Field, g: &Field) -> Result<f64> {
    let (comm, bound) = commutator_terms(kind, s, mu, f, g)?;
    if bound == 0.0 {
        return Ok(0.0);
    }
    Ok(comm / bound)
}

/// Seeded probe pairs. Bands cycle through low/high, high/low, and full
/// combinations so both terms of the bound are exercised.
pub fn commutator_ensemble(grid: &Grid, size: usize, seed: u64) -> Result<Vec<(Field, Field)>> {
    let top = probe_band_limit(grid);
    let bands = [
        ((0.0, 0.15 * top), (0.5 * top, top)),
        ((0.5 * top, top), (0.0, 0.15 * top)),
        ((0.0, top), (0.0, top)),
        ((0.0, 0.3 * top), (0.0, 0.3 * top)),
    ];
    (0..size)
        .map(|i| {
            let ((a, b), (c, d)) = bands[i % bands.len()];
            let base = seed.wrapping_add(2 * i as u64);
            let f = DataSpec::RandomBand { lambda_min: a, lambda_max: b, seed: base, amp: 1.0 }.sample_scalar(grid)?;
            let g = DataSpec::RandomBand { lambda_min: c, lambda_max: d, seed: base + 1, amp: 1.0 }.sample_scalar(grid)?;
            Ok((f, g))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorRow {
    pub kind: CommutatorKind,
    pub mu: f64,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub s: f64,
    pub dim: usize,
    pub ensemble_size: usize,
    pub rows: Vec<CommutatorRow>,
}

impl CommutatorReport {
    pub fn max_ratio(&self, kind: CommutatorKind) -> f64 {
        self.rows.iter().filter(|r| r.kind == kind).map(|r| r.max_ratio).fold(0.0, f64::max)
    }

    /// `max_μ / min_μ` of the per-`μ` maxima.
    pub fn mu_spread(&self, kind: CommutatorKind) -> f64 {
        let v: Vec<f64> = self.rows.iter().filter(|r| r.kind == kind).map(|r| r.max_ratio).collect();
        let hi = v.iter().cloned().fold(0.0, f64::max);
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        hi / lo
    }
}

/// Ensemble maxima for both commutators over `mus`.
pub fn commutator_probe(s: f64, mus: &[f64], ensemble: &[(Field, Field)]) -> Result<CommutatorReport> {
    let dim = ensemble.first().map_or(1, |(f, _)| f.grid().dim());
    let mut keys = Vec::new();
    for kind in CommutatorKind::ALL {
        for &mu in mus {
            keys.push((kind, mu));
        }
    }
    let rows = super::run_jobs(&keys, |&(kind, mu)| {
        let ratios = ensemble
            .iter()
            .map(|(f, g)| commutator_ratio(kind, s, mu, f, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(CommutatorRow {
            kind,
            mu,
            max_ratio: ratios.iter().cloned().fold(0.0, f64::max),
            mean_ratio: ratios.iter().sum::<f64>() / ratios.len().max(1) as f64,
        })
    })?;
    Ok(CommutatorReport {
        s,
        dim,
        ensemble_size: ensemble.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_commute() {
        let g = Grid::new(1, 64, 20.0).unwrap();
        let f = Field::from_fn(g, |_| 2.5);
        let h = commutator_ensemble(&g, 1, 3).unwrap().remove(0).1;
        for kind in CommutatorKind::ALL {
            let (c, b) = commutator_terms(kind, 2.0, 0.1, &f, &h).unwrap();
            assert!(c < 1e-12 * b, "{c} {b}");
        }
    }

    #[test]
    fn zero_g_gives_zero() {
        let g = Grid::new(2, 32, 10.0).unwrap();
        let (f, _) = commutator_ensemble(&g, 1, 0).unwrap().remove(0);
        let r = commutator_ratio(CommutatorKind::SqrtT, 2.0, 0.5, &f, &Field::zeros(g)).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn aliasing_fields_are_rejected() {
        let g = Grid::new(1, 32, 2.0 * std::f64::consts::PI).unwrap();
        let f = Field::from_fn(g, |x| (12.0 * x[0]).cos());
        assert!(commutator_ratio(CommutatorKind::SqrtT, 2.0, 0.5, &f, &f).is_err());
    }
}
