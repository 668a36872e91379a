//! Drives the exponent-region pipeline for two presets and prints the
//! polytope vertices, region corners, and a few classifications.

use polyalg::{parse_poly, rat, rat_to_string, MultiPoly};
use polytope::{
    classify_pair, exponent_region, generators, newton_polytope, LebesguePair,
};
use vfcalc::{build_words, spec_to_fields, OperatorKind, OperatorSpec};

fn run(label: &str, spec: &OperatorSpec) {
    let data = spec_to_fields(spec).unwrap();
    let table = build_words(&data.x1, &data.x2, 8).unwrap();
    let (gens, cap) = generators(&table, &data.base_point, None).unwrap();
    let polytope = newton_polytope(&gens).unwrap();
    let region = exponent_region(&gens).unwrap();

    println!("{label} (tuple-degree cap ({}, {}))", cap.d1, cap.d2);
    for g in polytope.generators() {
        let tuple: Vec<String> = g.words.iter().map(|w| w.to_string()).collect();
        println!("  generator ({}, {}) via ({})", g.degree.d1, g.degree.d2, tuple.join(", "));
    }
    let steps: Vec<String> = polytope
        .vertices()
        .iter()
        .map(|v| format!("({}, {})", v.d1, v.d2))
        .collect();
    println!("  polytope vertices: {}", steps.join(" "));
    let corners: Vec<String> = region
        .vertices()
        .iter()
        .map(|(u, v)| format!("({}, {})", rat_to_string(u), rat_to_string(v)))
        .collect();
    println!("  region corners: {}", corners.join(" "));

    for (p1, p2) in [(rat(3, 2), rat(3, 2)), (rat(3, 2), rat(2, 1)), (rat(1, 1), rat(1, 1))] {
        let pair = LebesguePair::from_values(p1.clone(), p2.clone()).unwrap();
        let verdict = classify_pair(&polytope, &region, &pair).unwrap();
        println!("  L^{} -> L^{}: {}", rat_to_string(&p1), rat_to_string(&p2), verdict);
    }
}

fn main() {
    let curve: Vec<MultiPoly> = vec![
        parse_poly("t", &["t"]).unwrap(),
        parse_poly("t^2", &["t"]).unwrap(),
        parse_poly("t^3", &["t"]).unwrap(),
    ];
    run("quartic convolution", &OperatorSpec::new(OperatorKind::Convolution { curve }));

    let names = ["x1", "x2", "x3", "x4", "t"];
    let gamma = vec![
        parse_poly("x1 + t", &names).unwrap(),
        parse_poly("x2 + t^2", &names).unwrap(),
        parse_poly("x3 + t^3", &names).unwrap(),
        parse_poly("x4 + t^4 + x2*t", &names).unwrap(),
    ];
    run("quintic family", &OperatorSpec::new(OperatorKind::DiffeoFamily { gamma }));
}
