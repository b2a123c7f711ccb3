use std::path::Path;

use serde_json::json;
use whitham_core::experiments::{
    calibrate, commutator_ensemble, commutator_probe, decay_experiment, gronwall_ensemble, lifespan_sweep,
    refined_strichartz_check, scaling_identity_test, strichartz_experiment, CalibrationOptions, Check,
    CommutatorKind, DecompositionParams, EnsembleSetup, ExperimentReport, LifespanConfig, Provenance,
    StrichartzOptions, RATIO_ROUNDOFF,
};
use whitham_core::integrator::{evolve, StepConfig, Trajectory};
use whitham_core::io::{
    emit_plot_data, fmt_f64, write_csv, write_decay_csv, write_snapshot, write_sweep_csv, write_trajectory_csv,
    PinnedConstants, PlotSidecar, RunConfig,
};
use whitham_core::{Error, ModelKind, NormReport, Result, State};

use crate::{constants, Command, Outcome};

/// Accepted decay slopes, `-d/2 ± 0.1` in 1D and `± 0.15` in 2D.
const DECAY_SLOPES: [(f64, f64); 2] = [(-0.6, -0.4), (-1.15, -0.85)];
const SCALING_TOL: f64 = 1e-10;

/// Runs one subcommand; files go to `cfg.output`.
pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Outcome> {
    let dir = cfg.output.as_path();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = Writer { dir, files: Vec::new() };
    let report = match cmd {
        Command::Simulate => simulate(cfg, &mut out)?,
        Command::Norms => norms(cfg, &mut out)?,
        Command::DecayTest => decay(cfg, &mut out)?,
        Command::StrichartzTest => strichartz(cfg, &mut out)?,
        Command::ScalingTest => scaling(cfg, &mut out)?,
        Command::RefinedCheck => refined(cfg, &mut out)?,
        Command::CommutatorProbe => commutator(cfg, &mut out)?,
        Command::GronwallCheck => gronwall(cfg, &mut out)?,
        Command::LifespanSweep => lifespan(cfg, &mut out)?,
        Command::Calibrate => calibration(cfg, &mut out)?,
    };
    Ok(Outcome { report, outputs: out.files })
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Writer<'_> {
    fn file(&mut self, name: &str, write: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
        write(&self.dir.join(name))?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn plot(&mut self, name: &str, x: &str, y: &[&str], log: (bool, bool), rows: &[Vec<f64>]) -> Result<()> {
        let plots = self.dir.join("plots");
        std::fs::create_dir_all(&plots).map_err(|e| Error::io(&plots, e))?;
        let mut columns = vec![x.to_string()];
        columns.extend(y.iter().map(|s| s.to_string()));
        let sidecar = PlotSidecar {
            figure: name.to_string(),
            columns,
            x: x.to_string(),
            y: y.iter().map(|s| s.to_string()).collect(),
            log_x: log.0,
            log_y: log.1,
        };
        emit_plot_data(&plots, name, &sidecar, rows)?;
        self.files.push(format!("plots/{name}.csv"));
        self.files.push(format!("plots/{name}.json"));
        Ok(())
    }
}

fn provenance(cfg: &RunConfig, pinned: Option<&PinnedConstants>) -> Result<Provenance> {
    Ok(Provenance::new(cfg.seed, Some(cfg.grid()?), pinned.map_or(0, |c| c.version)))
}

fn initial_state(cfg: &RunConfig) -> Result<State> {
    cfg.initial_data().reseeded(cfg.seed).state(cfg.model.kind, &cfg.grid()?)
}

fn write_trajectory(out: &mut Writer, traj: &Trajectory) -> Result<()> {
    out.file("trajectory.csv", |p| write_trajectory_csv(p, traj))?;
    let rows: Vec<Vec<f64>> = traj
        .times
        .iter()
        .zip(&traj.records)
        .map(|(t, r)| vec![*t, r.hs, r.vsmu])
        .collect();
    out.plot("norms", "t", &["hs_norm", "vsmu_norm"], (false, true), &rows)
}

fn simulate(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let p = cfg.params()?;
    let traj = evolve(&initial_state(cfg)?, &p, &cfg.step)?;
    write_trajectory(out, &traj)?;
    if !traj.snapshots.is_empty() {
        let dir = out.dir.join("snapshots");
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        for (i, s) in traj.snapshots.iter().enumerate() {
            out.file(&format!("snapshots/snap_{i:05}.bin"), |path| write_snapshot(path, s, &p))?;
        }
    }
    let last = traj.records.last().expect("initial record");
    let report = ExperimentReport::new("simulate", json!({ "params": p, "step": cfg.step }), provenance(cfg, None)?)
        .measurements(json!({
            "termination": traj.termination,
            "steps": traj.steps,
            "initial": traj.records[0],
            "final": last,
            "mass_drift": (last.mass - traj.records[0].mass).abs(),
        }));
    Ok(report)
}

fn norms(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let p = cfg.params()?;
    let st = initial_state(cfg)?;
    let r = NormReport::compute(&st, &p)?;
    out.file("norms.csv", |path| {
        let row = [st.t, r.hs, r.vsmu, r.linf_eta, r.linf_v, r.p_of_t, r.h_of_t, r.h_min, r.mass, r.energy];
        write_csv(path, "trajectory", &whitham_core::io::TRAJECTORY_COLUMNS, &[row.iter().map(|v| fmt_f64(*v)).collect()])
    })?;
    Ok(ExperimentReport::new("norms", json!({ "params": p, "data": cfg.data }), provenance(cfg, None)?).measurements(r))
}

fn decay(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let b = &cfg.decay;
    let grid = cfg.grid()?;
    let rep = decay_experiment(&grid, cfg.model.mu, b.lambda, (b.t_min, b.t_max), b.samples)?;
    out.file("decay.csv", |p| write_decay_csv(p, &rep))?;
    let rows: Vec<Vec<f64>> = rep.samples.iter().map(|s| vec![s.t, s.linf]).collect();
    out.plot("decay", "t", &["linf"], (true, true), &rows)?;

    let (lo, hi) = DECAY_SLOPES[grid.dim() - 1];
    let mut report = ExperimentReport::new("decay-test", json!({ "mu": cfg.model.mu, "decay": b }), provenance(cfg, None)?);
    report.fit("log linf vs log t", rep.fit.clone());
    report.check(Check::at_least("slope lower", rep.fit.exponent, lo));
    report.check(Check::at_most("slope upper", rep.fit.exponent, hi));
    Ok(report.measurements(json!({
        "horizon": rep.horizon,
        "max_bound_ratio": rep.max_bound_ratio,
        "initial_linf": rep.initial_linf,
    })))
}

fn strichartz(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let b = &cfg.strichartz;
    let pair = b.pair(cfg.model.kind.dim())?;
    let pinned = constants(cfg)?;
    let bound = pinned.strichartz_for(&pair)?;
    let opts = StrichartzOptions {
        horizon_factor: b.horizon_factor,
        samples: b.samples,
        ..StrichartzOptions::default()
    };
    let rep = strichartz_experiment(&pair, &b.mus, &b.lambdas, &opts)?;
    let rows: Vec<Vec<f64>> = rep.points.iter().map(|p| vec![p.lambda, p.mu, p.ratio]).collect();
    out.plot("strichartz", "lambda", &["mu", "ratio"], (true, false), &rows)?;

    let mut report = ExperimentReport::new("strichartz-test", json!({ "strichartz": b }), provenance(cfg, Some(&pinned))?);
    report.check(Check::at_most("max ratio", rep.max_ratio, bound));
    report.check(Check::at_most("max/min spread", rep.spread, b.max_spread));
    Ok(report.measurements(&rep))
}

fn scaling(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let b = &cfg.scaling;
    let f = initial_state(cfg)?.eta;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &mu in &b.mus {
        for &lambda in &b.lambdas {
            let r = scaling_identity_test(mu, lambda, b.t, &f)?;
            rows.push(vec![mu, lambda, r.max_error]);
            results.push(r);
        }
    }
    out.plot("scaling", "mu", &["lambda", "max_error"], (true, true), &rows)?;
    let f_sup = f.max_abs();
    let worst = results.iter().map(|r| r.max_error).fold(0.0, f64::max);
    let mut report = ExperimentReport::new("scaling-test", json!({ "scaling": b }), provenance(cfg, None)?);
    report.check(Check::at_most("max error / sup f", worst / f_sup.max(f64::MIN_POSITIVE), SCALING_TOL));
    Ok(report.measurements(&results))
}

fn refined(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let p = cfg.params()?;
    if p.model != ModelKind::Whitham1D {
        return Err(Error::Config {
            key: "model.kind".into(),
            reason: "refined-check needs whitham1d".into(),
        });
    }
    let pinned = constants(cfg)?;
    let step = StepConfig { snapshot_every: cfg.refined.snapshot_every.max(1), ..cfg.step.clone() };
    let traj = evolve(&initial_state(cfg)?, &p, &step)?;
    write_trajectory(out, &traj)?;
    let t_end = traj.times.last().copied().unwrap_or(0.0) - traj.times[0];
    let mut dp = DecompositionParams::preset(1, p.mu, t_end.max(f64::MIN_POSITIVE))?;
    dp.theta = cfg.refined.theta;
    let rep = refined_strichartz_check(&traj, &dp)?;
    let mut report = ExperimentReport::new("refined-check", json!({ "params": p, "refined": cfg.refined }), provenance(cfg, Some(&pinned))?);
    report.check(Check::at_most("ratio", rep.ratio, pinned.refined));
    Ok(report.measurements(&rep))
}

fn commutator(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let b = &cfg.commutator;
    let pinned = constants(cfg)?;
    let s = b.s.unwrap_or(cfg.model.kind.default_s());
    let ensemble = commutator_ensemble(&cfg.grid()?, b.ensemble_size, cfg.seed)?;
    let rep = commutator_probe(s, &b.mus, &ensemble)?;
    let rows: Vec<Vec<f64>> = rep
        .rows
        .iter()
        .map(|r| vec![r.mu, if r.kind == CommutatorKind::SqrtT { 0.0 } else { 1.0 }, r.max_ratio])
        .collect();
    out.plot("commutator", "mu", &["kind", "max_ratio"], (true, false), &rows)?;

    let mut report = ExperimentReport::new("commutator-probe", json!({ "commutator": b }), provenance(cfg, Some(&pinned))?);
    for kind in CommutatorKind::ALL {
        let key = kind.key();
        report.check(Check::at_most(format!("{key} max ratio"), rep.max_ratio(kind), pinned.commutator_bound(key)?));
        report.check(Check::at_most(format!("{key} spread over mu"), rep.mu_spread(kind), b.max_mu_spread));
    }
    Ok(report.measurements(&rep))
}

fn gronwall(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let b = &cfg.gronwall;
    let pinned = constants(cfg)?;
    let p = cfg.params()?;
    let c = match b.c {
        Some(c) => c,
        None => pinned.gronwall(p.model)?,
    };
    let setup = EnsembleSetup {
        grid: cfg.grid()?,
        params: p,
        data: cfg.initial_data(),
        step: StepConfig { record_every: 1, ..cfg.step.clone() },
    };
    let seeds: Vec<u64> = (cfg.seed..cfg.seed + b.members as u64).collect();
    let trajs = setup.run_members(cfg.seed, b.members)?;
    let rep = gronwall_ensemble(&trajs, &seeds, c);
    let control = gronwall_ensemble(&trajs, &seeds, 0.5 * c);

    let rows: Vec<Vec<String>> = seeds
        .iter()
        .zip(rep.members.iter().zip(&control.members))
        .map(|(s, (m, h))| vec![s.to_string(), fmt_f64(m.max_ratio), fmt_f64(m.required_c), fmt_f64(h.max_ratio)])
        .collect();
    out.file("gronwall.csv", |path| {
        write_csv(path, "gronwall", &["seed", "max_ratio", "required_c", "max_ratio_half_c"], &rows)
    })?;

    let mut report = ExperimentReport::new(
        "gronwall-check",
        json!({ "params": p, "data": cfg.data, "step": setup.step, "gronwall": b }),
        provenance(cfg, Some(&pinned))?,
    );
    report.check(Check::at_most("max ratio", rep.max_ratio, 1.0 + RATIO_ROUNDOFF));
    report.check(Check::at_least("max ratio with c/2", control.max_ratio, 1.0 + RATIO_ROUNDOFF));
    let mut coercivity = None;
    if p.model.is_boussinesq() {
        // the energy sandwich along every recorded state
        let (c1, c2) = (pinned.coercivity_c1, pinned.coercivity_c2);
        let (mut lower, mut upper) = (0.0f64, 0.0f64);
        for r in trajs.iter().flat_map(|t| &t.records) {
            let v2 = r.vsmu * r.vsmu;
            lower = lower.max(r.h_min * v2 / (c1 * r.energy));
            upper = upper.max(r.energy / (c2 * r.h_of_t * v2));
        }
        report.check(Check::at_most("h0 |U|^2 / (C1 E)", lower, 1.0));
        report.check(Check::at_most("E / (C2 H |U|^2)", upper, 1.0));
        coercivity = Some(json!({ "max_lower": lower, "max_upper": upper }));
    }
    Ok(report.measurements(json!({
        "c": c,
        "max_ratio": rep.max_ratio,
        "max_required_c": rep.max_required_c,
        "control_max_ratio": control.max_ratio,
        "members": rep.members.iter().map(|m| json!({ "max_ratio": m.max_ratio, "required_c": m.required_c, "h0": m.h0 })).collect::<Vec<_>>(),
        "terminations": trajs.iter().map(|t| t.termination).collect::<Vec<_>>(),
        "coercivity": coercivity,
    })))
}

fn lifespan(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let pinned = constants(cfg)?;
    let p = cfg.params()?;
    let lc = LifespanConfig {
        model: p.model,
        grid: cfg.grid()?,
        data: cfg.initial_data().reseeded(cfg.seed),
        eps_grid: cfg.lifespan.eps.clone(),
        mu_grid: cfg.lifespan.mu.clone(),
        s: p.s,
        h0: p.h0,
        step: cfg.step.clone(),
    };
    let rep = lifespan_sweep(&lc)?;
    out.file("sweep.csv", |path| write_sweep_csv(path, &rep))?;
    let rows: Vec<Vec<f64>> = rep
        .points
        .iter()
        .filter_map(|q| q.t_double.map(|t| vec![q.eps, q.mu, t, q.formula]))
        .collect();
    out.plot("lifespan", "eps", &["mu", "t_double", "formula"], (true, true), &rows)?;

    let kappa = pinned.kappa(p.model)?;
    let mut report = ExperimentReport::new(
        "lifespan-sweep",
        json!({ "params": p, "data": cfg.data, "step": cfg.step, "lifespan": cfg.lifespan }),
        provenance(cfg, Some(&pinned))?,
    );
    for (mu, fit) in &rep.eps_fits {
        if let Some(f) = fit {
            report.fit(format!("log t_double vs log eps at mu = {mu}"), f.clone());
        }
    }
    for (eps, fit) in &rep.mu_fits {
        if let Some(f) = fit {
            report.fit(format!("log t_double vs log mu at eps = {eps}"), f.clone());
        }
    }
    report.check(Check::at_most("monotonicity violations", rep.monotonicity.len() as f64, 0.0));
    report.check(Check::holds(format!("t_double >= {kappa:.4} x formula"), rep.lower_bound_holds(kappa)));
    if p.model == ModelKind::Whitham1D && lc.mu_grid.contains(&1.0) {
        report.check(Check::at_least("eps exponent at mu = 1", rep.eps_exponent(1.0).unwrap_or(f64::NAN), 1.0));
    }
    Ok(report.measurements(json!({
        "points": rep.points,
        "excluded": rep.excluded,
        "violations": rep.monotonicity,
        "min_formula_ratio": rep.min_formula_ratio,
        "note": "the existence-time estimates are lower bounds; long measured lifespans cannot contradict them",
    })))
}

fn calibration(cfg: &RunConfig, out: &mut Writer) -> Result<ExperimentReport> {
    let b = &cfg.calibrate;
    let opts = CalibrationOptions {
        seed_offset: b.seed_offset,
        members: b.members,
        margin: b.margin,
    };
    let rep = calibrate(&opts)?;
    out.file("constants.json", |path| rep.constants.save(path))?;
    let report = ExperimentReport::new("calibrate", json!({ "calibrate": b }), provenance(cfg, Some(&rep.constants))?);
    Ok(report.measurements(json!({ "observed": rep.observed, "constants": rep.constants })))
}
