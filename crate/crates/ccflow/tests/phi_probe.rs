//! The model map Φ, its Monte Carlo volume check, and the sharpness probe
//! over exterior and interior exponent pairs.

mod common;

use ccflow::{
    phi_map, phi_volume_check, sharpness_probe, CcError, CompiledField, PhiConfig, ProbeConfig,
    ProbeTarget, PHI_BAND,
};
use common::{base_f64, commuting, convolution, table_for};
use polyalg::rat;
use polytope::{generators, newton_polytope, LebesguePair, Membership, NewtonPolytope};
use vfcalc::{Degree, GeneratorWitness, OperatorData, WordTable};

fn compile_witness(table: &WordTable, witness: &GeneratorWitness) -> (Vec<CompiledField>, Vec<Degree>) {
    let fields = witness
        .words
        .iter()
        .map(|w| CompiledField::compile(table.get(w).unwrap()).unwrap())
        .collect();
    let degrees = witness.words.iter().map(|w| w.degree()).collect();
    (fields, degrees)
}

fn parabola_setup() -> (WordTable, OperatorData, NewtonPolytope) {
    let (table, data) = table_for(&convolution(3), 4);
    let (gens, _) = generators(&table, &data.base_point, None).unwrap();
    let polytope = newton_polytope(&gens).unwrap();
    (table, data, polytope)
}

#[test]
fn phi_fixes_the_base_point_at_zero_times() {
    let (table, data, polytope) = parabola_setup();
    let witness = &polytope.generators()[0];
    let (fields, degrees) = compile_witness(&table, witness);
    let base = base_f64(&data.base_point);
    let cfg = PhiConfig::default();
    let image = phi_map(
        &fields,
        &degrees,
        &base,
        (2f64.powi(-5), 2f64.powi(-5)),
        cfg.k,
        &[0.0, 0.0, 0.0],
        &cfg.flow,
    )
    .unwrap();
    assert_eq!(image, base);
}

#[test]
fn commuting_phi_ratio_is_exact() {
    let (table, data) = table_for(&commuting(), 4);
    let (gens, _) = generators(&table, &data.base_point, None).unwrap();
    let polytope = newton_polytope(&gens).unwrap();
    let witness = &polytope.generators()[0];
    let base = base_f64(&data.base_point);
    let delta = 2f64.powi(-5);
    let report =
        phi_volume_check(&table, witness, &base, (delta, delta), &PhiConfig::default()).unwrap();
    assert!((report.ratio - 1.0).abs() < 1e-6, "affine ratio {}", report.ratio);
    assert!(report.in_band);
    assert!(report.warnings.is_empty());
}

#[test]
fn parabola_phi_ratio_is_in_band() {
    let (table, data, polytope) = parabola_setup();
    let witness = &polytope.generators()[0];
    let base = base_f64(&data.base_point);
    let delta = 2f64.powi(-5);
    let report =
        phi_volume_check(&table, witness, &base, (delta, delta), &PhiConfig::default()).unwrap();
    assert!(
        PHI_BAND.0 <= report.ratio && report.ratio <= PHI_BAND.1,
        "ratio {} outside the band",
        report.ratio
    );
    assert!(report.in_band);
    assert!(report.predicted > 0.0 && report.estimate > 0.0);
}

#[test]
fn small_k_is_rejected() {
    let (table, data, polytope) = parabola_setup();
    let witness = &polytope.generators()[0];
    let base = base_f64(&data.base_point);
    let cfg = PhiConfig { k: 4.0, ..PhiConfig::default() };
    let result = phi_volume_check(&table, witness, &base, (0.03125, 0.03125), &cfg);
    assert!(matches!(result, Err(CcError::BadConfig(_))));
}

#[test]
fn probe_refuses_trivially_bounded_pairs() {
    let (table, data, polytope) = parabola_setup();
    let base = base_f64(&data.base_point);
    let target = ProbeTarget {
        table: &table,
        polytope: &polytope,
        pi1: data.pi1.as_deref(),
        pi2: data.pi2.as_deref(),
        base: &base,
    };
    let pair = LebesguePair::from_values(rat(2, 1), rat(2, 1)).unwrap();
    let result = sharpness_probe(&target, &pair, &[0.125], &ProbeConfig::default());
    assert!(matches!(result, Err(CcError::TriviallyBounded)));
}

#[test]
fn probe_requires_projection_maps() {
    let (table, data, polytope) = parabola_setup();
    let base = base_f64(&data.base_point);
    let target = ProbeTarget {
        table: &table,
        polytope: &polytope,
        pi1: None,
        pi2: data.pi2.as_deref(),
        base: &base,
    };
    let pair = LebesguePair::from_values(rat(4, 3), rat(4, 3)).unwrap();
    let result = sharpness_probe(&target, &pair, &[0.125], &ProbeConfig::default());
    assert!(matches!(result, Err(CcError::MissingProjections)));
}

#[test]
fn exterior_pair_ratios_increase() {
    let (table, data, polytope) = parabola_setup();
    let base = base_f64(&data.base_point);
    let target = ProbeTarget {
        table: &table,
        polytope: &polytope,
        pi1: data.pi1.as_deref(),
        pi2: data.pi2.as_deref(),
        base: &base,
    };
    // the pair dual to the L^{4/3} -> L^4 mapping question
    let pair = LebesguePair::from_values(rat(4, 3), rat(4, 3)).unwrap();
    let delta0s: Vec<f64> = (3..=6).map(|k| 2f64.powi(-k)).collect();
    let report = sharpness_probe(&target, &pair, &delta0s, &ProbeConfig::default()).unwrap();

    assert_eq!(report.membership, "exterior");
    assert_eq!(report.halfplane, ("1/4".to_string(), "1/4".to_string()));
    assert_eq!(report.witness, vec!["1", "2", "12"]);
    assert_eq!(report.rows.len(), 4);
    for window in report.rows.windows(2) {
        assert!(
            window[1].ratio > window[0].ratio,
            "ratio fell from {} to {} between radii {} and {}",
            window[0].ratio,
            window[1].ratio,
            window[0].delta0,
            window[1].delta0
        );
    }
    assert_eq!(report.to_csv().lines().count(), 5);
}

#[test]
fn interior_pair_ratios_stay_bounded() {
    let (table, data, polytope) = parabola_setup();
    let base = base_f64(&data.base_point);
    let target = ProbeTarget {
        table: &table,
        polytope: &polytope,
        pi1: data.pi1.as_deref(),
        pi2: data.pi2.as_deref(),
        base: &base,
    };
    let pair = LebesguePair::from_values(rat(3, 2), rat(2, 1)).unwrap();
    let delta0s: Vec<f64> = (3..=6).map(|k| 2f64.powi(-k)).collect();

    let refused = sharpness_probe(&target, &pair, &delta0s, &ProbeConfig::default());
    assert!(matches!(refused, Err(CcError::NotExterior(Membership::Interior))));

    let cfg = ProbeConfig { allow_interior: true, ..ProbeConfig::default() };
    let report = sharpness_probe(&target, &pair, &delta0s, &cfg).unwrap();
    assert_eq!(report.membership, "interior");
    let max = report.rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let min = report.rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    assert!(
        max <= 2.0 * min,
        "interior ratios vary by more than a factor 2: {min} to {max}"
    );
}
