use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Lebesgue exponent in `[1, ∞]`, stored through its reciprocal so that
/// `∞` is exactly `0` and admissibility is decided in rational arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Exponent {
    recip: Ratio<i64>,
}

impl Exponent {
    pub const INFINITY: Exponent = Exponent {
        recip: Ratio::new_raw(0, 1),
    };

    /// The exponent `num/den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if num <= 0 || den <= 0 || num < den {
            return Err(Error::param("exponent", format!("{num}/{den} is not in [1, inf]")));
        }
        Ok(Exponent {
            recip: Ratio::new(den, num),
        })
    }

    pub fn integer(p: i64) -> Result<Self> {
        Self::ratio(p, 1)
    }

    pub fn reciprocal(&self) -> Ratio<i64> {
        self.recip
    }

    pub fn is_infinite(&self) -> bool {
        *self.recip.numer() == 0
    }

    pub fn value(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            *self.recip.denom() as f64 / *self.recip.numer() as f64
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            let p = self.recip.recip();
            if *p.denom() == 1 {
                write!(f, "{}", p.numer())
            } else {
                write!(f, "{}/{}", p.numer(), p.denom())
            }
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `inf`, an integer such as `4`, or a fraction such as `8/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(Exponent::INFINITY);
        }
        let bad = || Error::param("exponent", format!("cannot parse `{s}`"));
        match s.split_once('/') {
            Some((a, b)) => Exponent::ratio(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => Exponent::integer(s.parse().map_err(|_| bad())?),
        }
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Exponent> for String {
    fn from(e: Exponent) -> String {
        e.to_string()
    }
}

/// True iff `2/q = d(1/2 - 1/r)` with `q > 2` and `r ≥ 2`.
pub fn check_admissible(q: Exponent, r: Exponent, d: usize) -> bool {
    let half = Ratio::new(1, 2);
    let lhs = q.recip * 2;
    let rhs = (half - r.recip) * d as i64;
    q.recip < half && r.recip <= half && lhs == rhs
}

/// A Strichartz-admissible pair `(q, r)` in dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePair {
    q: Exponent,
    r: Exponent,
    d: usize,
}

impl AdmissiblePair {
    pub fn new(q: Exponent, r: Exponent, d: usize) -> Result<Self> {
        if check_admissible(q, r, d) {
            Ok(AdmissiblePair { q, r, d })
        } else {
            Err(Error::NotAdmissible {
                q: q.to_string(),
                r: r.to_string(),
                d,
            })
        }
    }

    pub fn q(&self) -> Exponent {
        self.q
    }

    pub fn r(&self) -> Exponent {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `1/2 - 1/r`, the power of `A(λ)` in the frequency-localized estimate.
    pub fn gain_exponent(&self) -> f64 {
        let g = Ratio::new(1, 2) - self.r.recip;
        *g.numer() as f64 / *g.denom() as f64
    }
}
