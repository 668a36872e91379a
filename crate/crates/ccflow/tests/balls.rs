//! Ball sampling and occupancy volume checks: degenerate radii, the
//! commuting closed form, extent scaling, drop accounting, determinism,
//! and the estimator examples.

mod common;

use ccflow::{
    estimate_volume, sample_ball, suggest_cell, BallSpec, CcError, CompiledField, FlowConfig,
    OccupancyGrid, PointCloud,
};
use common::{base_f64, commuting, convolution, letters, table_for};
use polyalg::{MultiPoly, RationalFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vfcalc::VectorField;

#[test]
fn zero_radii_collapse_to_the_center() {
    let (table, _) = table_for(&commuting(), 4);
    let (x1, x2) = letters(&table);
    let spec = BallSpec::new(vec![0.25, -0.5], 0.0, 0.0, 6, 50, 1).unwrap();
    let cloud = sample_ball(&spec, &x1, &x2, &FlowConfig::default()).unwrap();
    assert_eq!(cloud.len(), 50);
    for p in cloud.points() {
        assert_eq!(p, &[0.25, -0.5]);
    }
}

#[test]
fn commuting_ball_fills_the_scaled_diamond() {
    let (table, data) = table_for(&commuting(), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let delta = 0.5;
    let spec = BallSpec::new(base, delta, delta, 6, 100_000, 2).unwrap();
    let cloud = sample_ball(&spec, &x1, &x2, &FlowConfig::default()).unwrap();

    // translations through ℓ¹ leg budgets reach exactly the diamond
    // |x₁|/δ + |x₂|/δ ≤ 1
    for p in cloud.points() {
        assert!(p[0].abs() / delta + p[1].abs() / delta <= 1.0 + 1e-9);
    }
    let estimate = estimate_volume(&cloud, 0.01).unwrap();
    let diamond = 2.0 * delta * delta;
    assert!(
        (estimate.volume - diamond).abs() < 0.05 * diamond,
        "measured {} against diamond area {diamond}",
        estimate.volume
    );
}

#[test]
fn parabola_ball_extents_scale_with_the_radii() {
    let (table, data) = table_for(&convolution(3), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let delta = 2f64.powi(-5);
    let spec = BallSpec::new(base, delta, delta, 6, 30_000, 3).unwrap();
    let cloud = sample_ball(&spec, &x1, &x2, &FlowConfig::default()).unwrap();

    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in cloud.points() {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let extent: Vec<f64> = hi.iter().zip(&lo).map(|(h, l)| h - l).collect();
    // the curve parameter moves by at most δ per unit leg budget
    assert!(extent[2] <= 2.0 * delta * (1.0 + 1e-9) && extent[2] >= 0.6 * delta);
    // x₁ moves only during X₂ legs
    assert!(extent[0] <= 2.0 * delta * (1.0 + 1e-9) && extent[0] >= 0.3 * delta);
    // x₂ is quadratic in the radius
    assert!(extent[1] <= 4.0 * delta * delta * (1.0 + 1e-9) && extent[1] >= 0.1 * delta * delta);
}

#[test]
fn diverging_flows_abort_after_one_percent_drops() {
    let square = VectorField::new(vec![RationalFn::from_poly(
        &MultiPoly::var(1, 0) * &MultiPoly::var(1, 0),
    )])
    .unwrap();
    let field = CompiledField::compile(&square).unwrap();
    let spec = BallSpec::new(vec![0.9], 0.9, 0.9, 4, 200, 3).unwrap();
    let cfg = FlowConfig { guard_radius: 1.0, ..FlowConfig::default() };
    let result = sample_ball(&spec, &field, &field, &cfg);
    assert!(matches!(result, Err(CcError::ExcessiveDrops { .. })));
}

#[test]
fn clouds_are_bitwise_deterministic() {
    let (table, data) = table_for(&convolution(3), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let delta = 2f64.powi(-4);
    let spec = BallSpec::new(base, delta, delta, 6, 2000, 9).unwrap();
    let cfg = FlowConfig::default();

    let first = sample_ball(&spec, &x1, &x2, &cfg).unwrap();
    let second = sample_ball(&spec, &x1, &x2, &cfg).unwrap();
    assert_eq!(first.len(), second.len());
    for (p, q) in first.points().zip(second.points()) {
        assert_eq!(p, q);
    }

    // worker count must not change the draw
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| sample_ball(&spec, &x1, &x2, &cfg)).unwrap();
    for (p, q) in first.points().zip(serial.points()) {
        assert_eq!(p, q);
    }

    let cell = suggest_cell(&first).unwrap();
    let va = estimate_volume(&first, cell).unwrap();
    let vb = estimate_volume(&serial, cell).unwrap();
    assert_eq!(va.volume, vb.volume);
    assert_eq!(va.occupied, vb.occupied);
}

#[test]
fn uniform_square_volume_is_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut data = Vec::with_capacity(2_000_000);
    for _ in 0..1_000_000 {
        data.push(rng.gen::<f64>());
        data.push(rng.gen::<f64>());
    }
    let cloud = PointCloud::new(2, data).unwrap();
    let estimate = estimate_volume(&cloud, 0.05).unwrap();
    assert!((estimate.volume - 1.0).abs() <= 0.05, "measured {}", estimate.volume);
}

#[test]
fn parabola_volume_follows_the_degree_prediction() {
    let (table, data) = table_for(&convolution(3), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let cfg = FlowConfig::default();

    let coarse_delta = 2f64.powi(-3);
    let fine_delta = 2f64.powi(-4);
    let coarse_spec = BallSpec::new(base.clone(), coarse_delta, coarse_delta, 6, 60_000, 5).unwrap();
    let fine_spec = BallSpec::new(base, fine_delta, fine_delta, 6, 60_000, 5).unwrap();
    let coarse = sample_ball(&coarse_spec, &x1, &x2, &cfg).unwrap();
    let fine = sample_ball(&fine_spec, &x1, &x2, &cfg).unwrap();

    let coarse_volume = estimate_volume(&coarse, suggest_cell(&coarse).unwrap()).unwrap().volume;
    let fine_volume = estimate_volume(&fine, suggest_cell(&fine).unwrap()).unwrap().volume;

    // calibrate the constant in volume ≈ c·δ⁴ at the coarse radius
    let constant = coarse_volume / coarse_delta.powi(4);
    let predicted = constant * fine_delta.powi(4);
    let ratio = fine_volume / predicted;
    assert!((1.0 / 3.0..=3.0).contains(&ratio), "volume off prediction by {ratio}");
}

#[test]
fn volume_is_monotone_in_samples() {
    let (table, data) = table_for(&convolution(3), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let delta = 2f64.powi(-4);
    let cfg = FlowConfig::default();

    let small_spec = BallSpec::new(base.clone(), delta, delta, 6, 2000, 11).unwrap();
    let big_spec = BallSpec::new(base, delta, delta, 6, 6000, 11).unwrap();
    let small = sample_ball(&small_spec, &x1, &x2, &cfg).unwrap();
    let big = sample_ball(&big_spec, &x1, &x2, &cfg).unwrap();

    let cell = suggest_cell(&big).unwrap();
    let v_small = estimate_volume(&small, cell).unwrap();
    let v_big = estimate_volume(&big, cell).unwrap();
    assert!(v_big.volume >= v_small.volume);
    assert!(v_big.occupied >= v_small.occupied);
}

#[test]
fn doubled_radii_cover_the_smaller_ball() {
    let (table, data) = table_for(&convolution(3), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let delta = 2f64.powi(-4);
    let cfg = FlowConfig::default();

    let small_spec = BallSpec::new(base.clone(), delta, delta, 6, 5000, 9).unwrap();
    let big_spec = BallSpec::new(base, 2.0 * delta, 2.0 * delta, 6, 60_000, 9).unwrap();
    let small = sample_ball(&small_spec, &x1, &x2, &cfg).unwrap();
    let big = sample_ball(&big_spec, &x1, &x2, &cfg).unwrap();

    let cell = 4.0 * suggest_cell(&big).unwrap();
    let grid = OccupancyGrid::from_points(3, cell, big.points()).unwrap();
    let covered = small.points().filter(|p| grid.contains(p)).count();
    let fraction = covered as f64 / small.len() as f64;
    assert!(fraction >= 0.99, "only {fraction} of the smaller ball is covered");
}
