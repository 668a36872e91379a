//! Frozen minimal-degree frames for the built-in operator families.

use polyalg::{parse_poly, rat, MultiPoly};
use vfcalc::{
    analyze_spans, build_words, hormander_check, spec_to_fields, Degree, HormanderVerdict,
    OperatorKind, OperatorSpec, SpanAnalysis, Word,
};

fn poly(s: &str, names: &[&str]) -> MultiPoly {
    parse_poly(s, names).unwrap()
}

fn degrees(pairs: &[(u32, u32)]) -> Vec<Degree> {
    pairs.iter().map(|&(a, b)| Degree::new(a, b)).collect()
}

fn words(ws: &[&str]) -> Vec<Word> {
    ws.iter().map(|s| Word::parse(s).unwrap()).collect()
}

fn analysis_for(spec: &OperatorSpec, cap: u32) -> SpanAnalysis {
    let data = spec_to_fields(spec).unwrap();
    let table = build_words(&data.x1, &data.x2, cap).unwrap();
    analyze_spans(&table, &data.base_point).unwrap()
}

fn moment_curve(n: usize) -> Vec<MultiPoly> {
    (1..n)
        .map(|k| if k == 1 { poly("t", &["t"]) } else { poly(&format!("t^{k}"), &["t"]) })
        .collect()
}

#[test]
fn convolution_moment_curves_realize_antidiagonal_degrees() {
    let cases: [(usize, &[(u32, u32)]); 3] = [
        (3, &[(2, 2)]),
        (4, &[(3, 4), (4, 3)]),
        (5, &[(4, 7), (5, 6), (6, 5), (7, 4)]),
    ];
    for (n, expect) in cases {
        let spec = OperatorSpec::new(OperatorKind::Convolution { curve: moment_curve(n) });
        let analysis = analysis_for(&spec, 8);
        assert_eq!(analysis.achievable_degrees(), degrees(expect), "dimension {n}");
        // antidiagonal degrees are pairwise incomparable, so all are minimal
        let gens = analysis.pareto_generators();
        let got: Vec<Degree> = gens.iter().map(|g| g.degree).collect();
        assert_eq!(got, degrees(expect), "dimension {n}");
    }
}

#[test]
fn convolution_witness_tuples_are_canonical() {
    let spec = OperatorSpec::new(OperatorKind::Convolution { curve: moment_curve(3) });
    let gens = analysis_for(&spec, 8).pareto_generators();
    assert_eq!(gens[0].words, words(&["1", "2", "12"]));

    let spec = OperatorSpec::new(OperatorKind::Convolution { curve: moment_curve(4) });
    let gens = analysis_for(&spec, 8).pareto_generators();
    assert_eq!(gens[0].words, words(&["1", "2", "12", "122"]));
    assert_eq!(gens[1].words, words(&["1", "2", "12", "121"]));
}

#[test]
fn xray_has_one_minimal_frame_per_dimension() {
    for n in 3..=6usize {
        let spec = OperatorSpec::new(OperatorKind::XRay { ambient: n });
        let analysis = analysis_for(&spec, 8);
        let expect = Degree::new(((n * n - 3 * n + 4) / 2) as u32, (n - 1) as u32);
        assert_eq!(analysis.achievable_degrees(), vec![expect], "dimension {n}");

        let mut ladder = vec!["1".to_string(), "2".to_string()];
        let mut rung = "12".to_string();
        for _ in 0..n - 2 {
            ladder.push(rung.clone());
            rung.push('1');
        }
        let expect_words: Vec<Word> =
            ladder.iter().map(|s| Word::parse(s).unwrap()).collect();
        let gens = analysis.pareto_generators();
        assert_eq!(gens.len(), 1, "dimension {n}");
        assert_eq!(gens[0].degree, expect);
        assert_eq!(gens[0].words, expect_words, "dimension {n}");
    }
}

#[test]
fn quintic_family_minimal_degrees_and_frames() {
    let names = ["x1", "x2", "x3", "x4", "t"];
    let gamma = vec![
        poly("x1 + t", &names),
        poly("x2 + t^2", &names),
        poly("x3 + t^3", &names),
        poly("x4 + t^4 + x2*t", &names),
    ];
    let spec = OperatorSpec::new(OperatorKind::DiffeoFamily { gamma });
    let analysis = analysis_for(&spec, 8);
    assert_eq!(
        analysis.achievable_degrees(),
        degrees(&[(5, 5), (4, 7), (5, 6), (6, 5), (7, 4)])
    );
    let gens = analysis.pareto_generators();
    let got: Vec<Degree> = gens.iter().map(|g| g.degree).collect();
    assert_eq!(got, degrees(&[(5, 5), (4, 7), (7, 4)]));
    assert_eq!(gens[0].words, words(&["1", "2", "12", "121", "122"]));
    assert_eq!(gens[1].words, words(&["1", "2", "12", "122", "1222"]));
    assert_eq!(gens[2].words, words(&["1", "2", "12", "121", "1211"]));
}

#[test]
fn cubic_family_degenerates_at_the_critical_parameter() {
    let names = ["x1", "x2", "x3", "t", "a"];
    let gamma = vec![
        poly("x1 + t", &names),
        poly("x2 + t^2", &names),
        poly("x3 + a*t^3 + 1/2*x1*t^2 - 1/2*x2*t", &names),
    ];
    let mut spec = OperatorSpec::new(OperatorKind::DiffeoFamily { gamma });
    spec.param_names = vec!["a".into()];

    let generic = spec.specialize(&[rat(1, 1)]).unwrap();
    let analysis = analysis_for(&generic, 8);
    assert_eq!(analysis.achievable_degrees(), degrees(&[(3, 4), (4, 3)]));

    let critical = spec.specialize(&[rat(1, 6)]).unwrap();
    let analysis = analysis_for(&critical, 8);
    assert_eq!(analysis.achievable_degrees(), degrees(&[(3, 4)]));
    let gens = analysis.pareto_generators();
    assert_eq!(gens[0].words, words(&["1", "2", "12", "122"]));
}

#[test]
fn commuting_raw_fields_frame_immediately() {
    use polyalg::RationalFn;
    let spec = OperatorSpec::new(OperatorKind::RawFields {
        coords: vec!["x1".into(), "x2".into()],
        x1: vec![RationalFn::one(2), RationalFn::zero(2)],
        x2: vec![RationalFn::zero(2), RationalFn::one(2)],
    });
    let analysis = analysis_for(&spec, 8);
    assert_eq!(analysis.achievable_degrees(), degrees(&[(1, 1)]));
    let gens = analysis.pareto_generators();
    assert_eq!(gens[0].words, words(&["1", "2"]));
}

#[test]
fn constant_family_never_spans() {
    let names = ["x1", "x2", "t"];
    let gamma = vec![poly("x1", &names), poly("x2", &names)];
    let spec = OperatorSpec::new(OperatorKind::DiffeoFamily { gamma });
    let data = spec_to_fields(&spec).unwrap();
    let table = build_words(&data.x1, &data.x2, 8).unwrap();
    match hormander_check(&table, &data.base_point).unwrap() {
        HormanderVerdict::FailsUpToCap { cap, spanned, dim } => {
            assert_eq!((cap, spanned, dim), (8, 1, 3));
        }
        v => panic!("expected failure up to the cap, got {v:?}"),
    }
}
