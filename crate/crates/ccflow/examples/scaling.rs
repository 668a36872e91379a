//! Numerical pipeline demo: sample sub-Riemannian balls for the parabola
//! average, fit the volume-scaling slope against the degree prediction, and
//! run the model-map volume check at one radius pair.

use ccflow::{ball_scaling_study, phi_volume_check, DeltaRelation, PhiConfig, StudyConfig};
use polyalg::{parse_poly, rat_to_f64};
use vfcalc::{build_words, spec_to_fields, OperatorKind, OperatorSpec};

fn main() {
    let curve = vec![
        parse_poly("t", &["t"]).unwrap(),
        parse_poly("t^2", &["t"]).unwrap(),
    ];
    let spec = OperatorSpec::new(OperatorKind::Convolution { curve });
    let data = spec_to_fields(&spec).expect("built-in spec is valid");
    let table = build_words(&data.x1, &data.x2, 4).expect("base fields are well formed");
    let (gens, _) = polytope::generators(&table, &data.base_point, None)
        .expect("the parabola frame spans at the origin");
    let base: Vec<f64> = data.base_point.iter().map(rat_to_f64).collect();

    let deltas: Vec<f64> = (4..=6).map(|k| 2f64.powi(-k)).collect();
    let cfg = StudyConfig { samples: 40_000, ..StudyConfig::default() };
    let study = ball_scaling_study(&table, &gens, &base, &deltas, DeltaRelation::Equal, &cfg)
        .expect("the study radii are admissible");
    println!("ball volume scaling for the parabola average");
    println!("  witness ({})", study.witness.join(", "));
    for row in &study.rows {
        println!("  delta {:<10.3e} volume {:.6e}", row.delta1, row.volume);
    }
    println!("  fitted slope {:.3} (predicted {})", study.fitted_slope, study.predicted_slope);

    let polytope = polytope::newton_polytope(&gens).expect("generators are nonempty");
    let witness = &polytope.generators()[0];
    let delta = 2f64.powi(-5);
    let report = phi_volume_check(&table, witness, &base, (delta, delta), &PhiConfig::default())
        .expect("the witness frames the chart");
    println!("model map volume check at delta = 2^-5");
    println!(
        "  predicted {:.6e} estimated {:.6e} ratio {:.3} in band: {}",
        report.predicted, report.estimate, report.ratio, report.in_band
    );
}
