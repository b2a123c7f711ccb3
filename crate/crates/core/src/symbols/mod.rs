//! Fourier symbols: the water-wave multiplier `T_μ` and its powers, the
//! dispersion relations `m_d`, Bessel/Riesz/homogeneous weights,
//! Littlewood–Paley cutoffs, Strichartz admissibility and the decay factor
//! `A_{μ,d}(λ)`.

mod admissible;
mod littlewood_paley;

use std::fmt;

use num_complex::Complex64;

pub use admissible::{check_admissible, AdmissiblePair, Exponent};
pub use littlewood_paley::{beta, beta_lambda, chi, lp_low, lp_project};

use crate::error::{Error, Result};
use crate::spectral::Multiplier;

/// `tanh(x)/x`, with its even Taylor series below `|x| = 1e-4`.
pub fn tanh_ratio(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0
    } else {
        x.tanh() / x
    }
}

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 && mu <= 1.0 {
        Ok(())
    } else {
        Err(Error::param("mu", format!("must lie in (0, 1], got {mu}")))
    }
}

/// `T_μ(ξ) = tanh(√μ|ξ|)/(√μ|ξ|)`, equal to 1 at `ξ = 0`.
pub fn eval_t_mu(xi: f64, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    Ok(t_mu(xi.abs(), mu))
}

#[inline]
pub(crate) fn t_mu(xi_abs: f64, mu: f64) -> f64 {
    tanh_ratio(mu.sqrt() * xi_abs)
}

/// Dispersion relation `m_d` evaluated on a frequency vector of length `d`.
///
/// `m_1(ξ) = ξ √(tanh|ξ|/|ξ|)` is odd; `m_2(ξ) = |ξ| √(tanh|ξ|/|ξ|)` is radial.
pub fn eval_m(xi: &[f64]) -> f64 {
    match xi.len() {
        1 => xi[0] * tanh_ratio(xi[0]).sqrt(),
        _ => {
            let r = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
            r * tanh_ratio(r).sqrt()
        }
    }
}

/// `A_{μ,d}(λ) = μ^{-1/2} λ^{d/2-1} ⟨√μ λ⟩^{d/4+1}`.
pub fn eval_decay_rate(lambda: f64, mu: f64, d: usize) -> f64 {
    let d = d as f64;
    let jb = japanese(mu.sqrt() * lambda);
    mu.powf(-0.5) * lambda.powf(0.5 * d - 1.0) * jb.powf(0.25 * d + 1.0)
}

/// Japanese bracket `⟨x⟩ = (1 + x²)^{1/2}`.
#[inline]
pub fn japanese(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

/// Symbols addressable by name, see [`Symbol::parse`].
#[derive(Clone, Debug, PartialEq)]
pub enum Symbol {
    Identity,
    TMu { mu: f64 },
    SqrtTMu { mu: f64 },
    InvSqrtTMu { mu: f64 },
    /// `m_d`, with `d` taken from the frequency vector.
    MSymbol,
    /// `⟨ξ⟩^s`
    Bessel { s: f64 },
    /// `⟨√μ ξ⟩^s`
    BesselMu { s: f64, mu: f64 },
    /// `|ξ|^s`, with a declared value at `ξ = 0`.
    HomogeneousAbs { s: f64, zero_mode_value: f64 },
    /// `R_j = -i ξ_j/|ξ|` (in 1D the Hilbert symbol `-i sgn ξ`), 0 at the origin.
    RieszComponent { j: usize },
    /// `i ξ_j`
    Derivative { j: usize },
    LpBand { lambda: f64 },
    LpLow { alpha: f64 },
    Product(Vec<Symbol>),
}

impl Symbol {
    /// Parses a registry name. Products are written with `*`, e.g.
    /// `bessel:2*sqrt_tmu`. `mu` is used by the μ-dependent symbols.
    ///
    /// Names: `identity`, `tmu`, `sqrt_tmu`, `inv_sqrt_tmu`, `m1`, `m2`,
    /// `bessel:s`, `bessel_mu:s`, `abs:s`, `riesz:j`, `dx:j`, `lp:λ`, `lp_low:α`.
    pub fn parse(name: &str, mu: f64) -> Result<Symbol> {
        let parts: Vec<&str> = name.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts
                .iter()
                .map(|p| Symbol::parse(p, mu))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Symbol::Product(factors));
        }
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (name.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::UnknownSymbol(format!("{name} (missing argument)")))?
                .parse::<f64>()
                .map_err(|_| Error::UnknownSymbol(format!("{name} (bad argument)")))
        };
        let index = |a: Option<&str>| -> Result<usize> {
            match a.and_then(|s| s.parse::<usize>().ok()) {
                Some(j @ (1 | 2)) => Ok(j),
                _ => Err(Error::UnknownSymbol(format!("{name} (component must be 1 or 2)"))),
            }
        };
        let sym = match head {
            "identity" => Symbol::Identity,
            "tmu" => Symbol::TMu { mu },
            "sqrt_tmu" => Symbol::SqrtTMu { mu },
            "inv_sqrt_tmu" => Symbol::InvSqrtTMu { mu },
            "m1" | "m2" => Symbol::MSymbol,
            "bessel" => Symbol::Bessel { s: num(arg)? },
            "bessel_mu" => Symbol::BesselMu { s: num(arg)?, mu },
            "abs" => Symbol::HomogeneousAbs {
                s: num(arg)?,
                zero_mode_value: 0.0,
            },
            "riesz" => Symbol::RieszComponent { j: index(arg)? },
            "dx" => Symbol::Derivative { j: index(arg)? },
            "lp" => Symbol::LpBand { lambda: num(arg)? },
            "lp_low" => Symbol::LpLow { alpha: num(arg)? },
            _ => return Err(Error::UnknownSymbol(name.to_string())),
        };
        sym.validate()?;
        Ok(sym)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Symbol::TMu { mu }
            | Symbol::SqrtTMu { mu }
            | Symbol::InvSqrtTMu { mu }
            | Symbol::BesselMu { mu, .. } => check_mu(*mu),
            Symbol::LpBand { lambda } if *lambda <= 0.0 => Err(Error::param("lambda", "must be positive")),
            Symbol::LpLow { alpha } if *alpha <= 0.0 => Err(Error::param("alpha", "must be positive")),
            Symbol::Product(items) => items.iter().try_for_each(Symbol::validate),
            _ => Ok(()),
        }
    }

    /// Evaluates the symbol at `xi` (length = dimension).
    pub fn evaluate(&self, xi: &[f64]) -> Complex64 {
        let r = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        let real = |v: f64| Complex64::new(v, 0.0);
        match self {
            Symbol::Identity => real(1.0),
            Symbol::TMu { mu } => real(t_mu(r, *mu)),
            Symbol::SqrtTMu { mu } => real(t_mu(r, *mu).sqrt()),
            Symbol::InvSqrtTMu { mu } => real(1.0 / t_mu(r, *mu).sqrt()),
            Symbol::MSymbol => real(eval_m(xi)),
            Symbol::Bessel { s } => real(japanese(r).powf(*s)),
            Symbol::BesselMu { s, mu } => real(japanese(mu.sqrt() * r).powf(*s)),
            Symbol::HomogeneousAbs { s, zero_mode_value } => {
                if r == 0.0 {
                    real(*zero_mode_value)
                } else {
                    real(r.powf(*s))
                }
            }
            Symbol::RieszComponent { j } => {
                if r == 0.0 {
                    real(0.0)
                } else if xi.len() == 1 {
                    Complex64::new(0.0, -xi[0].signum())
                } else {
                    Complex64::new(0.0, -xi[j - 1] / r)
                }
            }
            Symbol::Derivative { j } => Complex64::new(0.0, xi.get(j - 1).copied().unwrap_or(0.0)),
            Symbol::LpBand { lambda } => real(beta_lambda(r, *lambda)),
            Symbol::LpLow { alpha } => real(chi(r / alpha)),
            Symbol::Product(items) => items.iter().map(|s| s.evaluate(xi)).product(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Identity => write!(f, "identity"),
            Symbol::TMu { .. } => write!(f, "tmu"),
            Symbol::SqrtTMu { .. } => write!(f, "sqrt_tmu"),
            Symbol::InvSqrtTMu { .. } => write!(f, "inv_sqrt_tmu"),
            Symbol::MSymbol => write!(f, "m"),
            Symbol::Bessel { s } => write!(f, "bessel:{s}"),
            Symbol::BesselMu { s, .. } => write!(f, "bessel_mu:{s}"),
            Symbol::HomogeneousAbs { s, .. } => write!(f, "abs:{s}"),
            Symbol::RieszComponent { j } => write!(f, "riesz:{j}"),
            Symbol::Derivative { j } => write!(f, "dx:{j}"),
            Symbol::LpBand { lambda } => write!(f, "lp:{lambda}"),
            Symbol::LpLow { alpha } => write!(f, "lp_low:{alpha}"),
            Symbol::Product(items) => {
                let names: Vec<String> = items.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", names.join("*"))
            }
        }
    }
}

impl Multiplier for Symbol {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        self.evaluate(xi)
    }

    fn label(&self) -> String {
        self.to_string()
    }
}
