//! Operator presets and compilation helpers shared by the ccflow
//! integration tests.

#![allow(dead_code)]

use ccflow::CompiledField;
use polyalg::{parse_poly, rat_to_f64, MultiPoly, Rational, RationalFn};
use vfcalc::{
    build_words, spec_to_fields, OperatorData, OperatorKind, OperatorSpec, Word, WordTable,
};

pub fn poly(s: &str, names: &[&str]) -> MultiPoly {
    parse_poly(s, names).unwrap()
}

pub fn table_for(spec: &OperatorSpec, cap: u32) -> (WordTable, OperatorData) {
    let data = spec_to_fields(spec).unwrap();
    let table = build_words(&data.x1, &data.x2, cap).unwrap();
    (table, data)
}

/// The two letter fields of a table, compiled for flowing.
pub fn letters(table: &WordTable) -> (CompiledField, CompiledField) {
    let x1 = table.get(&Word::parse("1").unwrap()).unwrap();
    let x2 = table.get(&Word::parse("2").unwrap()).unwrap();
    (CompiledField::compile(x1).unwrap(), CompiledField::compile(x2).unwrap())
}

pub fn base_f64(base: &[Rational]) -> Vec<f64> {
    base.iter().map(rat_to_f64).collect()
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
