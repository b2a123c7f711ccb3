use num_complex::Complex64;
use proptest::prelude::*;
use whitham_core::models::DataSpec;
use whitham_core::spectral::{apply_multiplier, forward, inverse, rescale_sigma, Field, Grid};
use whitham_core::symbols::Symbol;

fn grid_strategy() -> impl Strategy<Value = Grid> {
    prop_oneof![
        (5u32..10, 10.0..200.0f64).prop_map(|(p, l)| Grid::new(1, 1 << p, l).unwrap()),
        (3u32..6, 5.0..50.0f64).prop_map(|(p, l)| Grid::new(2, 1 << p, l).unwrap()),
    ]
}

fn random_field(grid: Grid, seed: u64) -> Field {
    let hi = grid.nyquist() * 0.6;
    DataSpec::RandomBand { lambda_min: 0.0, lambda_max: hi, seed, amp: 1.0 }.sample_scalar(&grid).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn round_trip_is_identity(grid in grid_strategy(), seed in any::<u64>()) {
        let f = random_field(grid, seed);
        let back = inverse(&forward(&f).unwrap());
        prop_assert!(back.max_diff(&f) <= 1e-12 * f.max_abs());
    }

    #[test]
    fn parseval(grid in grid_strategy(), seed in any::<u64>()) {
        let f = random_field(grid, seed);
        let sf = forward(&f).unwrap();
        let physical = f.l2_norm().powi(2);
        prop_assert!(rel(physical, sf.l2_norm_sq()) < 1e-10, "{} vs {}", physical, sf.l2_norm_sq());
    }

    #[test]
    fn multipliers_are_linear(
        grid in grid_strategy(),
        seeds in (any::<u64>(), any::<u64>()),
        a in -3.0..3.0f64,
        b in -3.0..3.0f64,
        s in 0.0..3.0f64,
    ) {
        let (f, g) = (random_field(grid, seeds.0), random_field(grid, seeds.1));
        let m = Symbol::Product(vec![Symbol::Bessel { s }, Symbol::SqrtTMu { mu: 0.3 }]);
        let combo = f.zip(&g, |x, y| a * x + b * y);
        let lhs = apply_multiplier(&combo, &m).unwrap();
        let (mf, mg) = (apply_multiplier(&f, &m).unwrap(), apply_multiplier(&g, &m).unwrap());
        let rhs = mf.zip(&mg, |x, y| a * x + b * y);
        prop_assert!(lhs.max_diff(&rhs) <= 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn rescaling_law(grid in grid_strategy(), seed in any::<u64>(), alpha in 0.25..4.0f64) {
        let f = random_field(grid, seed);
        let g = rescale_sigma(&f, alpha).unwrap();
        let d = grid.dim() as f64;
        for p in [1.0, 2.0, f64::INFINITY] {
            let expected = alpha.powf(d - d / p) * f.lp_norm(p);
            prop_assert!(rel(g.lp_norm(p), expected) < 1e-10, "p = {}", p);
        }
    }
}

#[test]
fn unit_cosine_has_half_coefficients() {
    let grid = Grid::new(1, 64, 2.0 * std::f64::consts::PI).unwrap();
    let f = Field::from_fn(grid, |x| (3.0 * x[0]).cos());
    let c = forward(&f).unwrap();
    assert!((c.coeffs()[3] - Complex64::new(0.5, 0.0)).norm() < 1e-14);
    assert!((c.coeffs()[61] - Complex64::new(0.5, 0.0)).norm() < 1e-14);
}

#[test]
fn sigma_two_preserves_unit_l1_mass() {
    let grid = Grid::new(1, 1024, 100.0).unwrap();
    let w: f64 = 2.0;
    let a = 3.0 / (w * (2.0 * std::f64::consts::PI).sqrt());
    let f = DataSpec::Gaussian { a, w }.sample_scalar(&grid).unwrap();
    assert!((f.lp_norm(1.0) - 3.0).abs() < 1e-10);
    assert!((rescale_sigma(&f, 2.0).unwrap().lp_norm(1.0) - 3.0).abs() < 1e-10);
}
