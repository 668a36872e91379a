//! Vector fields with exact rational-function coefficients on a chart of
//! ℝⁿ: Lie brackets, tables of iterated brackets indexed by words over
//! {1, 2}, spanning determinants, span analysis of the evaluated bracket
//! fields, and builders that realize the supported averaging-operator
//! families (convolution along a curve, restricted x-ray, diffeomorphism
//! family) as field pairs with their projections.

pub mod chart;
pub mod field;
pub mod lambda;
pub mod opspec;
pub mod span;
pub mod table;
pub mod word;

pub use chart::Chart;
pub use field::{lie_bracket, VectorField};
pub use lambda::{lambda_i, lambda_i_symbolic};
pub use opspec::{diffeo_w, spec_to_fields, OperatorData, OperatorKind, OperatorSpec};
pub use span::{
    analyze_spans, hormander_check, DegreeClass, GeneratorWitness, HormanderVerdict, SpanAnalysis,
};
pub use table::{build_words, WordTable};
pub use word::{Degree, Word};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VfError {
    EmptyWord,
    BadLetter(char),
    EmptyField,
    TooManyComponents { components: usize, nvars: usize },
    DimensionMismatch { left: usize, right: usize },
    VariableCountMismatch { left: usize, right: usize },
    ZeroCap,
    CapTooLarge { cap: u32 },
    MissingWord(String),
    TupleSize { expected: usize, got: usize },
    PointLength { expected: usize, got: usize },
    ParamCount { expected: usize, got: usize },
    PoleAtPoint(String),
    ParametricValue(String),
    DuplicateName(String),
    NoCoordinates,
    InvalidSpec(String),
}

impl fmt::Display for VfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VfError::EmptyWord => write!(f, "words must be nonempty"),
            VfError::BadLetter(c) => write!(f, "word letters must be 1 or 2, got '{c}'"),
            VfError::EmptyField => write!(f, "vector fields need at least one component"),
            VfError::TooManyComponents { components, nvars } => {
                write!(f, "field has {components} components but only {nvars} variables")
            }
            VfError::DimensionMismatch { left, right } => {
                write!(f, "field dimensions disagree: {left} vs {right}")
            }
            VfError::VariableCountMismatch { left, right } => {
                write!(f, "variable counts disagree: {left} vs {right}")
            }
            VfError::ZeroCap => write!(f, "word table cap must be at least 1"),
            VfError::CapTooLarge { cap } => {
                write!(f, "word table cap {cap} is impractically large (limit 24)")
            }
            VfError::MissingWord(w) => write!(f, "word {w} is not in the table"),
            VfError::TupleSize { expected, got } => {
                write!(f, "expected a tuple of {expected} words, got {got}")
            }
            VfError::PointLength { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            VfError::ParamCount { expected, got } => {
                write!(f, "expected {expected} parameter values, got {got}")
            }
            VfError::PoleAtPoint(ctx) => {
                write!(f, "denominator vanishes at the evaluation point in {ctx}")
            }
            VfError::ParametricValue(ctx) => {
                write!(f, "{ctx} still contains symbolic parameters; specialize them first")
            }
            VfError::DuplicateName(n) => write!(f, "duplicate variable name {n}"),
            VfError::NoCoordinates => write!(f, "chart needs at least one coordinate"),
            VfError::InvalidSpec(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for VfError {}
