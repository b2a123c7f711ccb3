//! Error type shared by every module of the crate.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("symbol `{symbol}` is not finite at frequency {xi:?}")]
    SymbolNotFinite { symbol: String, xi: Vec<f64> },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid initial data `{spec}`: {reason}")]
    InvalidData { spec: String, reason: String },

    #[error("velocity field is not curl-free: residual {residual:.3e} exceeds {threshold:.3e}")]
    NotCurlFree { residual: f64, threshold: f64 },

    #[error("state is inconsistent: {0}")]
    Inconsistent(String),

    #[error("energy is not coercive: min(1 + eps*eta) = {h_min:.6} <= 0")]
    NonCoercive { h_min: f64 },

    #[error("pair (q, r) = ({q}, {r}) is not admissible in dimension {d}")]
    NotAdmissible { q: String, r: String, d: usize },

    #[error(
        "time window ends at t = {t_end} but waves reach the periodic image at t = {horizon:.3}; \
         length must be at least {required_length:.3}"
    )]
    WrapAround {
        t_end: f64,
        horizon: f64,
        required_length: f64,
    },

    #[error("band at lambda = {lambda} is not resolved: {reason}")]
    Unresolved { lambda: f64, reason: String },

    #[error("trajectory has no stored snapshots")]
    MissingSnapshots,

    #[error("config error at `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file {path}: {reason}")]
    Format { path: PathBuf, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn config(key: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.to_string(),
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
