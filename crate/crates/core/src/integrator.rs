//! Integrating-factor RK4.
//!
//! The linear part is solved exactly by [`PropagatorTable`]; classical RK4
//! is applied to the quadratic remainder in the frame of that flow. State
//! is kept in Fourier variables throughout, so the zero mode of `η` (the
//! mass) is never touched by the divergence-form nonlinearity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::NormReport;
use crate::models::{
    curl_residual, diag_nonlinear, nonlinear_terms, project_curl_free_spectral, velocity_gradient_norm,
    DiagState, ModelKind, ModelParams, PropagatorTable, SpectralState, State, StepFactors,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StepConfig {
    /// Upper bound on the step; the transport CFL may shrink it.
    pub dt: f64,
    pub t_end: f64,
    pub cfl_safety: f64,
    /// Blow-up when the sup norm exceeds this multiple of its initial value.
    pub blowup_threshold: f64,
    /// Doubling is the first time the monitored norm exceeds this multiple.
    pub doubling_factor: f64,
    /// Store a state every this many steps (0: never).
    pub snapshot_every: usize,
    /// Record a [`NormReport`] every this many steps.
    pub record_every: usize,
    pub stop_at_doubling: bool,
    /// Steps between re-evaluations of the CFL step.
    pub adapt_every: usize,
}

impl Default for StepConfig {
    fn default() -> Self {
        StepConfig {
            dt: 0.01,
            t_end: 1.0,
            cfl_safety: 0.5,
            blowup_threshold: 1e3,
            doubling_factor: 2.0,
            snapshot_every: 0,
            record_every: 10,
            stop_at_doubling: true,
            adapt_every: 50,
        }
    }
}

impl StepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::param("dt", "must be positive"));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::param("t_end", "must be positive"));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::param("cfl_safety", "must lie in (0, 1]"));
        }
        if !(self.doubling_factor > 1.0) {
            return Err(Error::param("doubling_factor", "must exceed 1"));
        }
        if !(self.blowup_threshold > 1.0) {
            return Err(Error::param("blowup_threshold", "must exceed 1"));
        }
        if self.record_every == 0 || self.adapt_every == 0 {
            return Err(Error::param("record_every", "step counts must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "t")]
pub enum Termination {
    HorizonReached,
    Doubled(f64),
    BlownUp(f64),
    NonFinite(f64),
}

impl Termination {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::HorizonReached => "horizon",
            Termination::Doubled(_) => "doubled",
            Termination::BlownUp(_) => "blown_up",
            Termination::NonFinite(_) => "non_finite",
        }
    }

    pub fn time(&self) -> Option<f64> {
        match *self {
            Termination::HorizonReached => None,
            Termination::Doubled(t) | Termination::BlownUp(t) | Termination::NonFinite(t) => Some(t),
        }
    }
}

/// Which recorded norm a doubling time refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    Hs,
    Vsmu,
    LinfEta,
}

impl NormKind {
    /// `H^s` for the Whitham equation, `V^s_μ` for the systems.
    pub fn for_model(model: ModelKind) -> Self {
        if model.is_boussinesq() {
            NormKind::Vsmu
        } else {
            NormKind::Hs
        }
    }

    pub fn pick(&self, r: &NormReport) -> f64 {
        match self {
            NormKind::Hs => r.hs,
            NormKind::Vsmu => r.vsmu,
            NormKind::LinfEta => r.linf_eta,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: ModelParams,
    pub times: Vec<f64>,
    pub records: Vec<NormReport>,
    pub snapshots: Vec<State>,
    pub termination: Termination,
    pub steps: usize,
}

/// First time the chosen norm exceeds `factor` times its initial value,
/// interpolated linearly in log-norm between records.
pub fn doubling_time(traj: &Trajectory, kind: NormKind, factor: f64) -> Option<f64> {
    doubling_time_of(&traj.times, &traj.records.iter().map(|r| kind.pick(r)).collect::<Vec<_>>(), factor)
}

pub fn doubling_time_of(times: &[f64], norms: &[f64], factor: f64) -> Option<f64> {
    let n0 = *norms.first()?;
    let target = factor * n0;
    for i in 1..norms.len() {
        if norms[i] > target {
            let (a, b) = (norms[i - 1].ln(), norms[i].ln());
            let s = (target.ln() - a) / (b - a);
            return Some(times[i - 1] + s * (times[i] - times[i - 1]));
        }
    }
    None
}

/// Primitive `(η, v)` variables or the diagonal pair `(u⁺, u⁻)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Formulation {
    Primitive,
    Diagonal { v_mean: [f64; 2] },
}

/// Reusable IF-RK4 stepper; caches `e^{Lh/2}` and `e^{Lh}` for the last `h`.
pub struct Stepper {
    params: ModelParams,
    table: PropagatorTable,
    formulation: Formulation,
    cache: Option<(f64, StepFactors, StepFactors)>,
}

impl Stepper {
    pub fn new(params: ModelParams, grid: &crate::spectral::Grid) -> Self {
        Self::with_formulation(params, grid, Formulation::Primitive)
    }

    pub fn with_formulation(params: ModelParams, grid: &crate::spectral::Grid, formulation: Formulation) -> Self {
        Stepper {
            params,
            table: PropagatorTable::new(&params, grid),
            formulation,
            cache: None,
        }
    }

    fn factors(&self, h: f64) -> StepFactors {
        match self.formulation {
            Formulation::Primitive => self.table.factors(h),
            Formulation::Diagonal { .. } => self.table.diagonal_factors(h),
        }
    }

    fn nonlinear(&self, u: &SpectralState) -> Result<SpectralState> {
        match self.formulation {
            Formulation::Primitive => nonlinear_terms(&self.params, u),
            Formulation::Diagonal { v_mean } => {
                let d = DiagState::from_spectral(u, self.params.mu, v_mean)?;
                Ok(diag_nonlinear(&d, &self.params)?.to_spectral())
            }
        }
    }

    /// One IF-RK4 step of size `h`.
    pub fn step(&mut self, u: &SpectralState, h: f64) -> Result<SpectralState> {
        if h == 0.0 {
            return Ok(u.clone());
        }
        if self.cache.as_ref().map(|c| c.0) != Some(h) {
            self.cache = Some((h, self.factors(0.5 * h), self.factors(h)));
        }
        let (half, full) = {
            let c = self.cache.as_ref().expect("just filled");
            (&c.1, &c.2)
        };
        let k1 = self.nonlinear(u)?;

        let mut a = u.clone();
        a.axpy(0.5 * h, &k1);
        half.apply(&mut a);
        let k2 = self.nonlinear(&a)?;

        let mut eu_half = u.clone();
        half.apply(&mut eu_half);
        let mut b = eu_half;
        b.axpy(0.5 * h, &k2);
        let k3 = self.nonlinear(&b)?;

        let mut eu = u.clone();
        full.apply(&mut eu);
        let mut ek3 = k3.clone();
        half.apply(&mut ek3);
        let mut c = eu.clone();
        c.axpy(h, &ek3);
        let k4 = self.nonlinear(&c)?;

        let mut ek1 = k1;
        full.apply(&mut ek1);
        let mut k23 = k2;
        k23.axpy(1.0, &k3);
        half.apply(&mut k23);

        let mut out = eu;
        out.axpy(h / 6.0, &ek1);
        out.axpy(h / 3.0, &k23);
        out.axpy(h / 6.0, &k4);
        if self.params.model == ModelKind::WB2D && self.formulation == Formulation::Primitive {
            project_curl_free_spectral(&mut out);
        }
        if !out.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        Ok(out)
    }
}

/// One step on a physical state.
pub fn if_rk4_step(state: &State, dt: f64, p: &ModelParams) -> Result<State> {
    if dt < 0.0 {
        return Err(Error::param("dt", "must be non-negative"));
    }
    let u = SpectralState::from_state(state)?;
    let out = Stepper::new(*p, state.grid()).step(&u, dt)?;
    Ok(out.to_state(state.t + dt))
}

fn transport_dt(cfg: &StepConfig, p: &ModelParams, u: &SpectralState) -> f64 {
    let st = u.to_state(0.0);
    let speed = st.eta.max_abs().max(st.v_max_abs());
    cfg.dt.min(cfg.cfl_safety * u.grid.dx() / (p.eps * speed).max(1.0))
}

fn watch_norm(kind: NormKind, u: &SpectralState, p: &ModelParams) -> f64 {
    match kind {
        NormKind::Hs => crate::functionals::sobolev_norm_spectral(&u.component(0), p.s),
        NormKind::Vsmu => crate::functionals::v_mu_norm_spectral(u, p.s, p.mu),
        NormKind::LinfEta => u.to_state(0.0).eta.max_abs(),
    }
}

fn sup_norm(u: &SpectralState) -> f64 {
    let st = u.to_state(0.0);
    st.eta.max_abs().max(st.v_max_abs())
}

/// Checks the preconditions of [`evolve`]: model/grid agreement, a
/// curl-free 2D velocity and non-cavitation `1 + εη ≥ h0`.
pub fn check_initial(initial: &State, p: &ModelParams) -> Result<()> {
    initial.check_finite()?;
    if initial.grid().dim() != p.dim() || initial.v.len() != p.model.components() - 1 {
        return Err(Error::GridMismatch(format!("initial state does not match {}", p.model)));
    }
    if p.model == ModelKind::WB2D {
        let residual = curl_residual(&initial.v)?;
        let threshold = 1e-8 * velocity_gradient_norm(&initial.v)? + 1e-300;
        if residual > threshold {
            return Err(Error::NotCurlFree { residual, threshold });
        }
    }
    if p.model.is_boussinesq() {
        let hmin = crate::functionals::h_min(initial, p.eps);
        if hmin < p.h0 {
            return Err(Error::param("h0", format!("initial data violate 1 + eps*eta >= h0: min is {hmin}")));
        }
    }
    Ok(())
}

/// Runs to `t_end` or the first termination event. Step failures become
/// [`Termination`] records; only invalid input is an `Err`.
pub fn evolve(initial: &State, p: &ModelParams, cfg: &StepConfig) -> Result<Trajectory> {
    evolve_with(initial, p, cfg, Formulation::Primitive)
}

pub fn evolve_with(initial: &State, p: &ModelParams, cfg: &StepConfig, formulation: Formulation) -> Result<Trajectory> {
    cfg.validate()?;
    check_initial(initial, p)?;
    let grid = *initial.grid();
    let mut u = SpectralState::from_state(initial)?;
    let watch = NormKind::for_model(p.model);

    let mut traj = Trajectory {
        params: *p,
        times: vec![initial.t],
        records: vec![NormReport::from_spectral(&u, p)],
        snapshots: Vec::new(),
        termination: Termination::HorizonReached,
        steps: 0,
    };
    if cfg.snapshot_every > 0 {
        traj.snapshots.push(u.to_state(initial.t));
    }
    let n0 = watch.pick(&traj.records[0]);
    let sup0 = sup_norm(&u).max(f64::MIN_POSITIVE);

    // the diagonal variables are stepped, everything else is reported in (η, v)
    let (mut w, formulation) = match formulation {
        Formulation::Primitive => (u.clone(), Formulation::Primitive),
        Formulation::Diagonal { .. } => {
            let d = crate::models::diagonalize(initial, p.mu)?;
            (d.to_spectral(), Formulation::Diagonal { v_mean: d.v_mean })
        }
    };
    let to_primitive = |x: &SpectralState| -> SpectralState {
        match formulation {
            Formulation::Primitive => x.clone(),
            Formulation::Diagonal { v_mean } => DiagState::from_spectral(x, p.mu, v_mean)
                .expect("grid-consistent")
                .to_primitive_spectral(),
        }
    };
    let mut stepper = Stepper::with_formulation(*p, &grid, formulation);

    let mut t = initial.t;
    let t_end = initial.t + cfg.t_end;
    let mut dt = transport_dt(cfg, p, &u);
    let mut prev_norm = n0;
    let mut step = 0usize;
    while t < t_end - 1e-12 * cfg.t_end {
        if step > 0 && step.is_multiple_of(cfg.adapt_every) {
            dt = transport_dt(cfg, p, &u);
        }
        let h = dt.min(t_end - t);
        let next = match stepper.step(&w, h) {
            Ok(x) => x,
            Err(_) => {
                traj.termination = Termination::NonFinite(t + h);
                break;
            }
        };
        w = next;
        u = to_primitive(&w);
        t += h;
        step += 1;
        traj.steps = step;

        let norm = watch_norm(watch, &u, p);
        let sup = sup_norm(&u);
        let last = t >= t_end - 1e-12 * cfg.t_end;
        let mut stop = None;
        if !norm.is_finite() || !sup.is_finite() {
            stop = Some(Termination::NonFinite(t));
        } else if sup > cfg.blowup_threshold * sup0 {
            stop = Some(Termination::BlownUp(t));
        } else if norm > cfg.doubling_factor * n0 && traj.termination == Termination::HorizonReached {
            let s = (cfg.doubling_factor * n0 / prev_norm).ln() / (norm / prev_norm).ln();
            let crossing = t - h + s * h;
            if cfg.stop_at_doubling {
                stop = Some(Termination::Doubled(crossing));
            } else {
                traj.termination = Termination::Doubled(crossing);
            }
        }
        prev_norm = norm;

        if step.is_multiple_of(cfg.record_every) || last || stop.is_some() {
            traj.times.push(t);
            traj.records.push(NormReport::from_spectral(&u, p));
        }
        if cfg.snapshot_every > 0 && (step.is_multiple_of(cfg.snapshot_every) || last || stop.is_some()) {
            traj.snapshots.push(u.to_state(t));
        }
        if let Some(s) = stop {
            traj.termination = s;
            break;
        }
    }
    Ok(traj)
}
