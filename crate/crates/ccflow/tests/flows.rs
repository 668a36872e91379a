//! Flow integrator checks against closed forms, the group law, and the
//! finite-commutator defect against the symbolic bracket fields.

mod common;

use ccflow::{commutator_defect, flow, CompiledField, FieldEval, FlowConfig};
use common::{base_f64, commuting, convolution, cubic_family, letters, table_for};
use polyalg::{rat, MultiPoly, RationalFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vfcalc::{VectorField, Word};

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn parabola_flow_matches_the_closed_form() {
    let (table, data) = table_for(&convolution(3), 4);
    let (_, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let cfg = FlowConfig::default();

    let end = flow(&x2, &base, 0.3, &cfg).unwrap();
    assert!(max_abs_diff(&end, &[-0.3, -0.09, 0.3]) < 1e-8);

    let back = flow(&x2, &end, -0.3, &cfg).unwrap();
    assert!(max_abs_diff(&back, &base) < 1e-8);
}

fn random_polynomial_field(rng: &mut ChaCha8Rng) -> VectorField {
    let comps = (0..2)
        .map(|_| {
            let mut p = MultiPoly::zero(2);
            for i in 0..=3u32 {
                for j in 0..=(3 - i) {
                    let c = rng.gen_range(-30..=30i64);
                    if c != 0 {
                        p = &p + &MultiPoly::monomial(2, vec![i, j], rat(c, 100));
                    }
                }
            }
            RationalFn::from_poly(p)
        })
        .collect();
    VectorField::new(comps).unwrap()
}

#[test]
fn flows_compose_along_the_group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = FlowConfig::default();
    let mut checked = 0;
    for _ in 0..100 {
        let field = CompiledField::compile(&random_polynomial_field(&mut rng)).unwrap();
        let x = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
        let s = rng.gen_range(-1.0..1.0);
        let t = rng.gen_range(-1.0..1.0);
        let Ok(once) = flow(&field, &x, s, &cfg) else { continue };
        let Ok(twice) = flow(&field, &once, t, &cfg) else { continue };
        let Ok(direct) = flow(&field, &x, s + t, &cfg) else { continue };
        assert!(
            max_abs_diff(&twice, &direct) < 1e-7,
            "group law violated by {:e}",
            max_abs_diff(&twice, &direct)
        );
        checked += 1;
    }
    assert!(checked >= 80, "only {checked} of 100 random flows stayed within the guard");
}

#[test]
fn halving_the_step_shows_fourth_order_convergence() {
    // y' = y² from y(0) = 1 reaches exactly 2 at t = 1/2
    let square = VectorField::new(vec![RationalFn::from_poly(
        &MultiPoly::var(1, 0) * &MultiPoly::var(1, 0),
    )])
    .unwrap();
    let field = CompiledField::compile(&square).unwrap();
    let coarse_cfg = FlowConfig { step: 1e-2, ..FlowConfig::default() };
    let fine_cfg = FlowConfig { step: 5e-3, ..FlowConfig::default() };
    let coarse = (flow(&field, &[1.0], 0.5, &coarse_cfg).unwrap()[0] - 2.0).abs();
    let fine = (flow(&field, &[1.0], 0.5, &fine_cfg).unwrap()[0] - 2.0).abs();
    assert!(coarse > 0.0 && fine > 0.0);
    assert!(
        coarse / fine >= 12.0,
        "halving the step only improved the error by {:.2}x",
        coarse / fine
    );
}

/// Relative defect error against the symbolic bracket at the base point.
fn defect_error(
    x1: &CompiledField,
    x2: &CompiledField,
    base: &[f64],
    expected: &[f64],
    t: f64,
) -> f64 {
    let cfg = FlowConfig::default();
    let defect = commutator_defect(x1, x2, base, t, t, &cfg).unwrap();
    let norm = expected.iter().map(|v| v * v).sum::<f64>().sqrt();
    max_abs_diff(&defect, expected) / norm
}

#[test]
fn commutator_defect_matches_the_parabola_bracket() {
    let (table, data) = table_for(&convolution(3), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);

    // symbolic [X₁, X₂] at the origin
    let bracket = table.get(&Word::parse("12").unwrap()).unwrap();
    let compiled = CompiledField::compile(bracket).unwrap();
    let mut expected = vec![0.0; 3];
    compiled.eval_into(&base, &mut expected).unwrap();
    assert!(max_abs_diff(&expected, &[0.0, -2.0, 0.0]) < 1e-12);

    let coarse = defect_error(&x1, &x2, &base, &expected, 1e-3);
    let fine = defect_error(&x1, &x2, &base, &expected, 5e-4);
    assert!(coarse < 0.01, "defect error {coarse:e} at t = 1e-3");
    // the parabola defect is exact at every t, so halving can only improve
    // the error until it reaches integrator noise
    assert!(
        fine < coarse || fine < 1e-9,
        "halving t did not reduce the defect error ({coarse:e} -> {fine:e})"
    );
}

#[test]
fn commuting_fields_have_vanishing_defect() {
    let (table, data) = table_for(&commuting(), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);
    let defect =
        commutator_defect(&x1, &x2, &base, 1e-3, 1e-3, &FlowConfig::default()).unwrap();
    assert!(defect.iter().all(|v| v.abs() < 1e-8));
}

#[test]
fn cubic_family_defect_matches_the_table() {
    let (table, data) = table_for(&cubic_family(rat(0, 1)), 4);
    let (x1, x2) = letters(&table);
    let base = base_f64(&data.base_point);

    let bracket = table.get(&Word::parse("12").unwrap()).unwrap();
    let compiled = CompiledField::compile(bracket).unwrap();
    let mut expected = vec![0.0; 4];
    compiled.eval_into(&base, &mut expected).unwrap();
    assert!(max_abs_diff(&expected, &[0.0, 2.0, 0.0, 0.0]) < 1e-12);

    let error = defect_error(&x1, &x2, &base, &expected, 1e-3);
    let fine = defect_error(&x1, &x2, &base, &expected, 5e-4);
    assert!(error < 0.01, "defect error {error:e} at t = 1e-3");
    assert!(
        fine < error || fine < 1e-9,
        "halving t did not reduce the defect error ({error:e} -> {fine:e})"
    );
}
