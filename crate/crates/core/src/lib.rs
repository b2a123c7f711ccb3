//! Pseudospectral laboratory for the Whitham equation and the
//! Whitham–Boussinesq systems in one and two space dimensions.
//!
//! The crate is organized bottom-up:
//!
//! * [`spectral`]: periodic grids, transforms, multipliers, dealiasing and
//!   the rescaling operator `σ_α`;
//! * [`symbols`]: every Fourier symbol used by the models and estimates,
//!   Littlewood–Paley cutoffs and Strichartz admissibility;
//! * [`models`]: model parameters, right-hand sides, linear propagators,
//!   diagonalization and curl-free projection;
//! * [`integrator`]: integrating-factor RK4 time stepping with event detection;
//! * [`functionals`]: Sobolev norms, `V^s_μ`, energies and pointwise quantities;
//! * [`experiments`]: numerical verification of decay, Strichartz, energy,
//!   commutator and lifespan statements;
//! * [`io`]: configuration, CSV/JSON/snapshot persistence and pinned constants.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod experiments;
pub mod functionals;
pub mod integrator;
pub mod io;
pub mod models;
pub mod spectral;
pub mod symbols;

pub use error::{Error, Result};
pub use functionals::NormReport;
pub use integrator::{StepConfig, Termination, Trajectory};
pub use models::{DiagState, ModelKind, ModelParams, State};
pub use spectral::{Field, Grid, SpectralField};
pub use symbols::{AdmissiblePair, Symbol};
