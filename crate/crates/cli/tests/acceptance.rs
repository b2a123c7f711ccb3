//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitham_core::experiments::{
    coercivity_check, commutator_ensemble, commutator_probe, decay_experiment, fit_power_law_raw,
    gronwall_ensemble, lifespan_sweep, presets, scaling_identity_test, strichartz_experiment, CommutatorKind,
    EnsembleSetup, ENSEMBLE_SIZE, MONOTONE_TOL,
};
use whitham_core::functionals::sobolev_norm_spectral;
use whitham_core::integrator::{evolve, if_rk4_step, StepConfig};
use whitham_core::io::{parse_config, PinnedConstants};
use whitham_core::models::{
    diag_rhs, diagonalize, linear_propagate, reconstruct, wb_rhs, DataSpec, InitialData, ModelKind, ModelParams, State,
};
use whitham_core::spectral::{forward_field, ComplexField, Field, Grid};
use whitham_lab::Command;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Criterion = (&'static str, fn(&PinnedConstants) -> Outcome);

fn random_field(grid: Grid, seed: u64, lo: f64, hi: f64) -> Field {
    DataSpec::RandomBand { lambda_min: lo, lambda_max: hi, seed, amp: 1.0 }.sample_scalar(&grid).unwrap()
}

fn unitarity(_: &PinnedConstants) -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..50u64 {
        let grid = if k % 2 == 0 { Grid::new(1, 256, 40.0) } else { Grid::new(2, 32, 20.0) }.unwrap();
        let f = ComplexField::from(&random_field(grid, k, 0.0, 4.0));
        let f_hat = forward_field(&f).unwrap();
        for mu in [0.01, 0.1, 1.0] {
            for t in [1.0, 10.0, 100.0] {
                let g_hat = forward_field(&linear_propagate(&f, t, mu, grid.dim(), -1.0).unwrap()).unwrap();
                for s in [0.0, 1.7, 2.25] {
                    let (a, b) = (sobolev_norm_spectral(&f_hat, s), sobolev_norm_spectral(&g_hat, s));
                    worst = worst.max((a - b).abs() / a);
                }
            }
        }
    }
    outcome(worst < 1e-12, format!("max relative H^s change {worst:.2e} (< 1e-12)"))
}

fn scaling(_: &PinnedConstants) -> Outcome {
    let grid = Grid::new(1, 1024, 16.0 * std::f64::consts::PI).unwrap();
    let f = random_field(grid, 3, 0.0, 20.0);
    let mut worst = 0.0f64;
    for mu in [0.04, 0.25] {
        for lambda in [2.0, 8.0] {
            let r = scaling_identity_test(mu, lambda, 10.0, &f).unwrap();
            worst = worst.max(r.max_error / f.max_abs());
        }
    }
    outcome(worst < 1e-10, format!("max error / sup f = {worst:.2e} (< 1e-10)"))
}

fn decay(_: &PinnedConstants) -> Outcome {
    let r1 = decay_experiment(&Grid::new(1, 4096, 400.0).unwrap(), 1.0, 8.0, (50.0, 600.0), 24).unwrap();
    let r2 = decay_experiment(&Grid::new(2, 512, 80.0).unwrap(), 1.0, 8.0, (20.0, 140.0), 16).unwrap();
    let (a, b) = (r1.fit.exponent, r2.fit.exponent);
    outcome(
        (-0.6..=-0.4).contains(&a) && (-1.15..=-0.85).contains(&b),
        format!("slopes 1D {a:.3} (r2 {:.4}), 2D {b:.3} (r2 {:.4})", r1.fit.r_squared, r2.fit.r_squared),
    )
}

fn strichartz(c: &PinnedConstants) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for d in [1, 2] {
        let pair = presets::strichartz_pair(d).unwrap();
        let rep = strichartz_experiment(&pair, &presets::STRICHARTZ_MUS, &presets::STRICHARTZ_LAMBDAS, &presets::strichartz_options())
            .unwrap();
        let bound = c.strichartz_for(&pair).unwrap();
        pass &= rep.max_ratio <= bound && rep.spread < 4.0;
        detail.push(format!(
            "{d}D ({},{}) max {:.3} <= {bound:.3}, spread {:.2}",
            pair.q(),
            pair.r(),
            rep.max_ratio,
            rep.spread
        ));
    }
    outcome(pass, detail.join("; "))
}

fn diagonalization(_: &PinnedConstants) -> Outcome {
    let (mut rhs_err, mut trip_err) = (0.0f64, 0.0f64);
    for k in 0..20u64 {
        let (model, grid) = if k < 10 {
            (ModelKind::WB1D, Grid::new(1, 128, 30.0).unwrap())
        } else {
            (ModelKind::WB2D, Grid::new(2, 32, 15.0).unwrap())
        };
        let data = InitialData::new(
            DataSpec::RandomBand { lambda_min: 0.0, lambda_max: 3.0, seed: k, amp: 0.5 },
            if model == ModelKind::WB1D {
                DataSpec::RandomBand { lambda_min: 0.0, lambda_max: 3.0, seed: 100 + k, amp: 0.5 }
            } else {
                DataSpec::PotentialGradient { seed: 100 + k, lambda_min: 0.5, lambda_max: 3.0, amp: 0.5 }
            },
        );
        let st = data.state(model, &grid).unwrap();
        for mu in [0.1, 1.0] {
            let p = ModelParams::new(model, 0.5, mu, model.default_s(), 0.5).unwrap();
            let dg = diagonalize(&st, mu).unwrap();
            trip_err = trip_err.max(reconstruct(&dg).unwrap().max_diff(&st));
            let lhs = diagonalize(&wb_rhs(&st, &p).unwrap(), mu).unwrap();
            rhs_err = rhs_err.max(lhs.max_diff(&diag_rhs(&dg, &p).unwrap()));
        }
    }
    outcome(
        rhs_err < 1e-10 && trip_err < 1e-11,
        format!("rhs mismatch {rhs_err:.2e} (< 1e-10), round trip {trip_err:.2e} (< 1e-11)"),
    )
}

fn rk4_order(_: &PinnedConstants) -> Outcome {
    let grid = Grid::new(1, 256, 40.0).unwrap();
    let p = ModelParams::new(ModelKind::Whitham1D, 0.5, 1.0, 1.7, 0.5).unwrap();
    let eta = DataSpec::Gaussian { a: 0.5, w: 2.0 }.sample_scalar(&grid).unwrap();
    let t_end = 2.0;
    let solve = |dt: f64| {
        let mut st = State::scalar(eta.clone());
        for _ in 0..(t_end / dt).round() as usize {
            st = if_rk4_step(&st, dt, &p).unwrap();
        }
        st.eta
    };
    let reference = solve(0.00125);
    let dts = [0.08, 0.04, 0.02, 0.01];
    let errs: Vec<f64> = dts.iter().map(|&dt| solve(dt).max_diff(&reference)).collect();
    let fit = fit_power_law_raw(&dts, &errs).unwrap();
    outcome(
        (3.8..=4.2).contains(&fit.exponent),
        format!("slope {:.3} from errors {}", fit.exponent, errs.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(", ")),
    )
}

fn conservation(_: &PinnedConstants) -> Outcome {
    let (mut mass, mut norm) = (0.0f64, 0.0f64);
    for model in [ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D] {
        let setup = EnsembleSetup::standard(model);
        let st = setup.data.state(model, &setup.grid).unwrap();
        for eps in [setup.params.eps, 0.0] {
            let p = ModelParams { eps, ..setup.params };
            let cfg = StepConfig {
                dt: 0.002,
                t_end: 2.0,
                record_every: 100,
                stop_at_doubling: false,
                ..StepConfig::default()
            };
            let traj = evolve(&st, &p, &cfg).unwrap();
            assert_eq!(traj.steps, 1000);
            let r0 = &traj.records[0];
            for r in &traj.records {
                mass = mass.max((r.mass - r0.mass).abs());
                if eps == 0.0 {
                    // For the systems the conserved H^s-level quantity is E_s, which at
                    // eps = 0 is the T_mu-weighted H^s norm.
                    let (a, b) = if model.is_boussinesq() { (r.energy, r0.energy) } else { (r.hs, r0.hs) };
                    norm = norm.max((a - b).abs() / b);
                }
            }
        }
    }
    outcome(
        mass < 1e-10 && norm < 1e-11,
        format!("mass drift {mass:.2e} (< 1e-10), eps = 0 norm drift {norm:.2e} (< 1e-11)"),
    )
}

fn gronwall(c: &PinnedConstants) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for model in [ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D] {
        let cval = c.gronwall(model).unwrap();
        let trajs = EnsembleSetup::standard(model).run_members(0, ENSEMBLE_SIZE).unwrap();
        let seeds: Vec<u64> = (0..ENSEMBLE_SIZE as u64).collect();
        let rep = gronwall_ensemble(&trajs, &seeds, cval);
        let control = gronwall_ensemble(&trajs, &seeds, 0.5 * cval);
        pass &= rep.pass && !control.pass;
        detail.push(format!("{model} max {:.4} (c/2: {:.3})", rep.max_ratio, control.max_ratio));
    }
    outcome(pass, detail.join("; "))
}

fn coercivity(c: &PinnedConstants) -> Outcome {
    let seeds: Vec<u64> = (0..presets::COERCIVITY_SEEDS as u64).collect();
    let mut pass = true;
    let mut detail = Vec::new();
    for model in [ModelKind::WB1D, ModelKind::WB2D] {
        let rep = coercivity_check(
            model,
            &presets::coercivity_grid(model),
            &presets::PROBE_MUS,
            &presets::COERCIVITY_EPS,
            &seeds,
            c.coercivity_c1,
            c.coercivity_c2,
        )
        .unwrap();
        pass &= rep.pass;
        detail.push(format!("{model} lower {:.3} upper {:.3}", rep.max_lower, rep.max_upper));
    }
    outcome(pass, detail.join("; "))
}

fn commutator(c: &PinnedConstants) -> Outcome {
    let ensemble = commutator_ensemble(&presets::commutator_grid(), presets::COMMUTATOR_ENSEMBLE, 0).unwrap();
    let rep = commutator_probe(presets::commutator_s(), &presets::PROBE_MUS, &ensemble).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for kind in CommutatorKind::ALL {
        let bound = c.commutator_bound(kind.key()).unwrap();
        let (max, spread) = (rep.max_ratio(kind), rep.mu_spread(kind));
        pass &= max.is_finite() && max <= bound && spread < 2.0;
        detail.push(format!("{} max {max:.3} <= {bound:.3}, spread {spread:.2}", kind.key()));
    }
    outcome(pass, detail.join("; "))
}

fn lifespan(c: &PinnedConstants) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for model in [ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D] {
        let rep = lifespan_sweep(&presets::lifespan_config(model)).unwrap();
        let kappa = c.kappa(model).unwrap();
        let monotone = rep.monotonicity.is_empty();
        let lower = rep.lower_bound_holds(kappa);
        pass &= monotone && lower;
        let doubled = rep.points.iter().filter(|p| p.t_double.is_some()).count();
        let mut line = format!("{model}: {doubled}/12 doubled, monotone(5%) {monotone}, >= kappa*formula {lower}");
        if model == ModelKind::Whitham1D {
            let a = rep.eps_exponent(1.0);
            pass &= a.is_some_and(|a| a >= 1.0);
            line += &format!(", a(mu=1) = {}", a.map_or("none".into(), |a| format!("{a:.3}")));
        }
        detail.push(line);
    }
    assert_eq!(MONOTONE_TOL, 0.05);
    outcome(pass, detail.join("; "))
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn csv_files(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|x| x == "csv") {
                out.push((p.strip_prefix(dir).unwrap().to_path_buf(), std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn determinism(_: &PinnedConstants) -> Outcome {
    let runs = [
        (Command::Simulate, "simulate"),
        (Command::Norms, "norms"),
        (Command::DecayTest, "decay_2d"),
        (Command::ScalingTest, "scaling"),
        (Command::StrichartzTest, "strichartz_1d"),
        (Command::RefinedCheck, "refined"),
        (Command::CommutatorProbe, "commutator"),
        (Command::GronwallCheck, "gronwall_wb1d"),
        (Command::LifespanSweep, "lifespan_whitham1d"),
    ];
    let tmp = tempfile::tempdir().unwrap();
    let mut compared = 0;
    let mut seed = ChaCha8Rng::seed_from_u64(12);
    for (cmd, name) in runs {
        let mut cfg = parse_config(&configs_dir().join(format!("{name}.toml"))).unwrap();
        cfg.seed = seed.random_range(0..1000);
        let mut files = Vec::new();
        for rep in 0..2 {
            cfg.output = tmp.path().join(format!("{name}-{rep}"));
            whitham_lab::run(cmd, &cfg).unwrap();
            files.push(csv_files(&cfg.output));
        }
        if files[0].is_empty() || files[0] != files[1] {
            return outcome(false, format!("{} outputs differ between identical runs", cmd.name()));
        }
        compared += files[0].len();
    }
    outcome(true, format!("{compared} CSV files bit-identical across {} commands", runs.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("unitarity", unitarity),
        ("scaling identity", scaling),
        ("dispersive decay", decay),
        ("frequency-localized Strichartz", strichartz),
        ("diagonalization", diagonalization),
        ("integrator order", rk4_order),
        ("conservation", conservation),
        ("Gronwall consistency", gronwall),
        ("energy coercivity", coercivity),
        ("commutator probes", commutator),
        ("lifespan scaling", lifespan),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let constants = PinnedConstants::bundled();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let r = check(&constants);
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name}: {} [{:.1}s]", i + 1, r.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!r.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
