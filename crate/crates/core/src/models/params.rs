use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "whitham1d")]
    Whitham1D,
    #[serde(rename = "wb1d")]
    WB1D,
    #[serde(rename = "wb2d")]
    WB2D,
}

impl ModelKind {
    pub fn dim(self) -> usize {
        match self {
            ModelKind::WB2D => 2,
            _ => 1,
        }
    }

    /// Number of scalar unknowns: η plus the velocity components.
    pub fn components(self) -> usize {
        match self {
            ModelKind::Whitham1D => 1,
            ModelKind::WB1D => 2,
            ModelKind::WB2D => 3,
        }
    }

    pub fn is_boussinesq(self) -> bool {
        self != ModelKind::Whitham1D
    }

    /// Regularity threshold of the long-time existence results:
    /// `13/8` for Whitham, `1 + 5d/8` for Whitham–Boussinesq.
    pub fn min_regularity(self) -> f64 {
        match self {
            ModelKind::Whitham1D => 13.0 / 8.0,
            m => 1.0 + 5.0 * m.dim() as f64 / 8.0,
        }
    }

    /// Default Sobolev index, just above the threshold.
    pub fn default_s(self) -> f64 {
        match self {
            ModelKind::WB2D => 2.3,
            _ => 1.7,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Whitham1D => "whitham1d",
            ModelKind::WB1D => "wb1d",
            ModelKind::WB2D => "wb2d",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "whitham1d" | "whitham" => Ok(ModelKind::Whitham1D),
            "wb1d" => Ok(ModelKind::WB1D),
            "wb2d" => Ok(ModelKind::WB2D),
            _ => Err(Error::param("model", format!("unknown model `{s}` (whitham1d, wb1d, wb2d)"))),
        }
    }
}

/// Physical and regularity parameters of a run.
///
/// `eps = 0` is accepted here as the linear limit; configuration files
/// require `eps ∈ (0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub model: ModelKind,
    pub eps: f64,
    pub mu: f64,
    pub s: f64,
    pub h0: f64,
}

impl ModelParams {
    /// Validated parameters with the strict regularity check.
    pub fn new(model: ModelKind, eps: f64, mu: f64, s: f64, h0: f64) -> Result<Self> {
        let p = ModelParams { model, eps, mu, s, h0 };
        p.validate(false)?;
        Ok(p)
    }

    /// Defaults `s` to the model default and `h0 = 0.5`.
    pub fn with_defaults(model: ModelKind, eps: f64, mu: f64) -> Result<Self> {
        Self::new(model, eps, mu, model.default_s(), 0.5)
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    /// With `allow_low_regularity` an `s` below the threshold only logs a warning.
    pub fn validate(&self, allow_low_regularity: bool) -> Result<()> {
        if !(self.eps.is_finite() && (0.0..=1.0).contains(&self.eps)) {
            return Err(Error::param("eps", format!("must lie in [0, 1], got {}", self.eps)));
        }
        crate::symbols::check_mu(self.mu)?;
        if !(self.h0 > 0.0 && self.h0 < 1.0) {
            return Err(Error::param("h0", format!("must lie in (0, 1), got {}", self.h0)));
        }
        if !self.s.is_finite() {
            return Err(Error::param("s", "must be finite"));
        }
        let s_min = self.model.min_regularity();
        if self.s <= s_min {
            if allow_low_regularity {
                log::warn!("s = {} is below the {} threshold {s_min}", self.s, self.model);
            } else {
                return Err(Error::param(
                    "s",
                    format!("must exceed {s_min} for {} (got {})", self.model, self.s),
                ));
            }
        }
        Ok(())
    }
}
