//! The three evolution systems and their linear and diagonal structure.
//!
//! * Whitham: `η_t + √T_μ(D)∂_x η + (ε/2)∂_x(η²) = 0`;
//! * Whitham–Boussinesq (d = 1, 2):
//!   `η_t = -∇·v - ε∇·(ηv)`, `v_t = -T_μ(D)∇η - (ε/2)∇|v|²`.
//!
//! Evolution happens on [`SpectralState`]s, Fourier coefficients of the
//! unknowns in the fixed order `[η, v_1, v_2]`.

mod curl;
mod diag;
mod init;
mod params;
mod propagate;
mod rhs;
mod state;

pub use curl::{curl_residual, project_curl_free, project_curl_free_spectral, velocity_gradient_norm};
pub use diag::{diag_linear_propagate, diag_nonlinear, diag_rhs, diagonalize, reconstruct, DiagState};
pub use init::{DataSpec, InitialData};
pub use params::{ModelKind, ModelParams};
pub use propagate::{linear_propagate, propagate_linear, PropagatorTable, StepFactors};
pub use rhs::{linear_terms, nonlinear_terms, wb_rhs, whitham_rhs};
pub use state::{SpectralState, State};
