//! Named initial-data families, e.g. `gaussian(0.2, 1.5)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::params::ModelKind;
use super::state::State;
use crate::error::{Error, Result};
use crate::spectral::{inverse, Field, Grid, SpectralField};
use crate::symbols::Symbol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DataSpec {
    /// `a exp(-|x - c|²/(2w²))`, centred in the box.
    Gaussian { a: f64, w: f64 },
    /// `a cos(k x_1)`; `k` must lie on the frequency lattice.
    Cosine { k: f64, a: f64 },
    /// Random Fourier coefficients on `λmin ≤ |ξ| ≤ λmax`, sup norm `amp`.
    RandomBand { lambda_min: f64, lambda_max: f64, seed: u64, amp: f64 },
    /// `v = ∇φ` with `φ` a random band field, `max |v| = amp`.
    PotentialGradient { seed: u64, lambda_min: f64, lambda_max: f64, amp: f64 },
    Zero,
}

impl DataSpec {
    /// The same family with its seed offset by `offset`; seedless families
    /// are returned unchanged.
    pub fn reseeded(&self, offset: u64) -> DataSpec {
        let mut d = self.clone();
        match &mut d {
            DataSpec::RandomBand { seed, .. } | DataSpec::PotentialGradient { seed, .. } => {
                *seed = seed.wrapping_add(offset)
            }
            _ => {}
        }
        d
    }

    pub fn is_random(&self) -> bool {
        matches!(self, DataSpec::RandomBand { .. } | DataSpec::PotentialGradient { .. })
    }

    pub fn is_curl_free(&self) -> bool {
        matches!(self, DataSpec::PotentialGradient { .. } | DataSpec::Zero)
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidData {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }

    pub fn sample_scalar(&self, grid: &Grid) -> Result<Field> {
        match *self {
            DataSpec::Zero => Ok(Field::zeros(*grid)),
            DataSpec::Gaussian { a, w } => {
                if !(w > 0.0) {
                    return Err(self.invalid("width must be positive"));
                }
                let c = grid.centre();
                Ok(Field::from_fn(*grid, |x| {
                    let r2: f64 = x.iter().zip(c).map(|(p, q)| (p - q).powi(2)).sum();
                    a * (-r2 / (2.0 * w * w)).exp()
                }))
            }
            DataSpec::Cosine { k, a } => {
                let m = k / grid.dxi();
                if (m - m.round()).abs() > 1e-9 * m.abs().max(1.0) {
                    return Err(self.invalid(format!(
                        "k must be a multiple of 2π/L = {}",
                        grid.dxi()
                    )));
                }
                if m.round().abs() >= (grid.n() / 2) as f64 {
                    return Err(self.invalid("k is at or beyond the Nyquist frequency"));
                }
                Ok(Field::from_fn(*grid, |x| a * (k * x[0]).cos()))
            }
            DataSpec::RandomBand { lambda_min, lambda_max, seed, amp } => {
                let f = random_band(grid, lambda_min, lambda_max, seed).map_err(|r| self.invalid(r))?;
                let m = f.max_abs();
                Ok(f.scaled(amp / m))
            }
            DataSpec::PotentialGradient { .. } => {
                Err(self.invalid("a potential gradient is a vector field; use it for v"))
            }
        }
    }

    /// Velocity components. In 2D only curl-free families are accepted.
    pub fn sample_vector(&self, grid: &Grid) -> Result<Vec<Field>> {
        let d = grid.dim();
        match *self {
            DataSpec::Zero => Ok(vec![Field::zeros(*grid); d]),
            DataSpec::PotentialGradient { seed, lambda_min, lambda_max, amp } => {
                let phi = random_band(grid, lambda_min, lambda_max, seed).map_err(|r| self.invalid(r))?;
                let sf = crate::spectral::forward(&phi)?;
                let v: Vec<Field> = (1..=d)
                    .map(|j| sf.apply(&Symbol::Derivative { j }).map(|c| inverse(&c)))
                    .collect::<Result<_>>()?;
                let vmax = (0..grid.len())
                    .map(|i| v.iter().map(|c| c.values()[i].powi(2)).sum::<f64>().sqrt())
                    .fold(0.0, f64::max);
                Ok(v.iter().map(|c| c.scaled(amp / vmax)).collect())
            }
            _ if d == 1 => Ok(vec![self.sample_scalar(grid)?]),
            _ => Err(self.invalid("2D velocity data must be curl-free: use potential_gradient(...) or zero")),
        }
    }
}

/// Real field with standard-normal coefficients on the band, unnormalized.
fn random_band(grid: &Grid, lo: f64, hi: f64, seed: u64) -> std::result::Result<Field, String> {
    if !(lo >= 0.0 && hi > lo) {
        return Err("need 0 <= lambda_min < lambda_max".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut any = false;
    for (k, c) in coeffs.iter_mut().enumerate() {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let r = grid.xi_abs(k);
        if r >= lo && r <= hi && r > 0.0 && !grid.is_nyquist(k) {
            *c = Complex64::new(re, im);
            any = true;
        }
    }
    if !any {
        return Err(format!("no lattice frequency in [{lo}, {hi}]"));
    }
    // Re of the inverse symmetrizes the spectrum
    let z = crate::spectral::inverse_complex(&SpectralField::from_coeffs(*grid, coeffs).expect("length"));
    Ok(Field::from_values(*grid, z.iter().map(|c| c.re).collect()).expect("length"))
}

fn args(s: &str) -> Option<(&str, Vec<&str>)> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    let list = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::trim).collect()
    };
    Some((s[..open].trim(), list))
}

impl FromStr for DataSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::InvalidData {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        if s == "zero" || s == "zero()" {
            return Ok(DataSpec::Zero);
        }
        let (name, a) = args(s).ok_or_else(|| bad("expected name(arg, ...)"))?;
        let num = |i: usize| -> Result<f64> {
            a.get(i)
                .and_then(|v| v.parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(&format!("argument {} must be a number", i + 1)))
        };
        let seed = |i: usize| -> Result<u64> {
            a.get(i)
                .and_then(|v| v.parse::<u64>().ok())
                .ok_or_else(|| bad(&format!("argument {} must be a non-negative integer seed", i + 1)))
        };
        let arity = |n: usize| -> Result<()> {
            if a.len() == n {
                Ok(())
            } else {
                Err(bad(&format!("{name} takes {n} arguments")))
            }
        };
        match name {
            "gaussian" => {
                arity(2)?;
                Ok(DataSpec::Gaussian { a: num(0)?, w: num(1)? })
            }
            "cosine" => {
                arity(2)?;
                Ok(DataSpec::Cosine { k: num(0)?, a: num(1)? })
            }
            "random_band" => {
                arity(4)?;
                Ok(DataSpec::RandomBand {
                    lambda_min: num(0)?,
                    lambda_max: num(1)?,
                    seed: seed(2)?,
                    amp: num(3)?,
                })
            }
            "potential_gradient" => {
                arity(4)?;
                Ok(DataSpec::PotentialGradient {
                    seed: seed(0)?,
                    lambda_min: num(1)?,
                    lambda_max: num(2)?,
                    amp: num(3)?,
                })
            }
            _ => Err(bad("unknown family (gaussian, cosine, random_band, potential_gradient, zero)")),
        }
    }
}

impl fmt::Display for DataSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSpec::Gaussian { a, w } => write!(f, "gaussian({a}, {w})"),
            DataSpec::Cosine { k, a } => write!(f, "cosine({k}, {a})"),
            DataSpec::RandomBand { lambda_min, lambda_max, seed, amp } => {
                write!(f, "random_band({lambda_min}, {lambda_max}, {seed}, {amp})")
            }
            DataSpec::PotentialGradient { seed, lambda_min, lambda_max, amp } => {
                write!(f, "potential_gradient({seed}, {lambda_min}, {lambda_max}, {amp})")
            }
            DataSpec::Zero => write!(f, "zero"),
        }
    }
}

impl TryFrom<String> for DataSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DataSpec> for String {
    fn from(d: DataSpec) -> String {
        d.to_string()
    }
}

/// Initial elevation and velocity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialData {
    pub eta: DataSpec,
    pub v: DataSpec,
}

impl InitialData {
    pub fn new(eta: DataSpec, v: DataSpec) -> Self {
        InitialData { eta, v }
    }

    /// Both fields reseeded by `offset`, see [`DataSpec::reseeded`].
    pub fn reseeded(&self, offset: u64) -> InitialData {
        InitialData {
            eta: self.eta.reseeded(offset),
            v: self.v.reseeded(offset),
        }
    }

    pub fn state(&self, model: ModelKind, grid: &Grid) -> Result<State> {
        if grid.dim() != model.dim() {
            return Err(Error::GridMismatch(format!("{model} needs a {}D grid", model.dim())));
        }
        let eta = self.eta.sample_scalar(grid)?;
        if !model.is_boussinesq() {
            return Ok(State::scalar(eta));
        }
        State::new(eta, self.v.sample_vector(grid)?)
    }
}
