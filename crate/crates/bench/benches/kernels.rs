use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use whitham_core::integrator::Stepper;
use whitham_core::models::{nonlinear_terms, DataSpec, InitialData, ModelKind, ModelParams, SpectralState};
use whitham_core::spectral::{forward_field, ComplexField, Grid};

fn band(seed: u64) -> DataSpec {
    DataSpec::RandomBand { lambda_min: 0.0, lambda_max: 4.0, seed, amp: 0.5 }
}

fn setup(model: ModelKind, grid: Grid) -> (ModelParams, SpectralState) {
    let data = if model == ModelKind::WB2D {
        InitialData::new(band(0), DataSpec::PotentialGradient { seed: 1, lambda_min: 0.0, lambda_max: 4.0, amp: 0.5 })
    } else {
        InitialData::new(band(0), band(1))
    };
    let st = data.state(model, &grid).unwrap();
    let p = ModelParams::with_defaults(model, 0.3, 1.0).unwrap();
    (p, SpectralState::from_state(&st).unwrap())
}

fn cases() -> Vec<(ModelKind, Grid)> {
    vec![
        (ModelKind::Whitham1D, Grid::new(1, 1024, 100.0).unwrap()),
        (ModelKind::WB1D, Grid::new(1, 1024, 100.0).unwrap()),
        (ModelKind::WB2D, Grid::new(2, 128, 25.0).unwrap()),
    ]
}

fn fft(c: &mut Criterion) {
    let mut g = c.benchmark_group("fft");
    for grid in [Grid::new(1, 4096, 100.0).unwrap(), Grid::new(2, 256, 25.0).unwrap()] {
        let f = ComplexField::from(&band(0).sample_scalar(&grid).unwrap());
        g.bench_with_input(BenchmarkId::from_parameter(format!("{}d_{}", grid.dim(), grid.n())), &f, |b, f| {
            b.iter(|| forward_field(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn rhs(c: &mut Criterion) {
    let mut g = c.benchmark_group("nonlinear_rhs");
    for (model, grid) in cases() {
        let (p, u) = setup(model, grid);
        g.bench_function(model.to_string(), |b| b.iter(|| nonlinear_terms(&p, black_box(&u)).unwrap()));
    }
    g.finish();
}

fn step(c: &mut Criterion) {
    let mut g = c.benchmark_group("if_rk4_step");
    for (model, grid) in cases() {
        let (p, u) = setup(model, grid);
        let mut stepper = Stepper::new(p, &grid);
        g.bench_function(model.to_string(), |b| b.iter(|| stepper.step(black_box(&u), 1e-3).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, fft, rhs, step);
criterion_main!(benches);
