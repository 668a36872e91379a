//! Operator presets shared by the polytope integration tests.

#![allow(dead_code)]

use polyalg::{parse_poly, MultiPoly, Rational, RationalFn};
use vfcalc::{build_words, spec_to_fields, OperatorKind, OperatorSpec, WordTable};

pub fn poly(s: &str, names: &[&str]) -> MultiPoly {
    parse_poly(s, names).unwrap()
}

pub fn table_for(spec: &OperatorSpec, cap: u32) -> (WordTable, Vec<Rational>) {
    let data = spec_to_fields(spec).unwrap();
    let table = build_words(&data.x1, &data.x2, cap).unwrap();
    (table, data.base_point)
}

pub fn convolution(n: usize) -> OperatorSpec {
    let curve = (1..n)
        .map(|k| if k == 1 { poly("t", &["t"]) } else { poly(&format!("t^{k}"), &["t"]) })
        .collect();
    OperatorSpec::new(OperatorKind::Convolution { curve })
}

pub fn xray(ambient: usize) -> OperatorSpec {
    OperatorSpec::new(OperatorKind::XRay { ambient })
}

pub fn quintic_family() -> OperatorSpec {
    let names = ["x1", "x2", "x3", "x4", "t"];
    let gamma = vec![
        poly("x1 + t", &names),
        poly("x2 + t^2", &names),
        poly("x3 + t^3", &names),
        poly("x4 + t^4 + x2*t", &names),
    ];
    OperatorSpec::new(OperatorKind::DiffeoFamily { gamma })
}

pub fn cubic_family(a: Rational) -> OperatorSpec {
    let names = ["x1", "x2", "x3", "t", "a"];
    let gamma = vec![
        poly("x1 + t", &names),
        poly("x2 + t^2", &names),
        poly("x3 + a*t^3 + 1/2*x1*t^2 - 1/2*x2*t", &names),
    ];
    let mut spec = OperatorSpec::new(OperatorKind::DiffeoFamily { gamma });
    spec.param_names = vec!["a".into()];
    spec.specialize(&[a]).unwrap()
}

pub fn commuting() -> OperatorSpec {
    OperatorSpec::new(OperatorKind::RawFields {
        coords: vec!["x1".into(), "x2".into()],
        x1: vec![RationalFn::one(2), RationalFn::zero(2)],
        x2: vec![RationalFn::zero(2), RationalFn::one(2)],
    })
}

pub fn constant_family() -> OperatorSpec {
    let names = ["x1", "x2", "t"];
    let gamma = vec![poly("x1", &names), poly("x2", &names)];
    OperatorSpec::new(OperatorKind::DiffeoFamily { gamma })
}
