//! Degree polytopes of bracket frames and the exponent regions they cut
//! out of the unit square: exact staircase hulls, membership tests, the
//! degree-to-exponent map, and a classifier for Lebesgue exponent pairs.

pub mod classify;
pub mod exponents;
pub mod hull;
pub mod region;
pub mod report;

pub use classify::{classify_pair, Verdict};
pub use exponents::{c_from_p, map_degree_to_exponent, LebesguePair, PExp};
pub use hull::{generators, newton_polytope, staircase_vertices, Membership, NewtonPolytope};
pub use region::{exponent_region, ExponentRegion};
pub use report::{GeneratorEntry, QueryEntry, RegionSummary};

use std::fmt;
use vfcalc::{Degree, VfError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    EmptyGenerators,
    DegenerateDegree { d1: u32, d2: u32 },
    ExponentOutOfRange(String),
    TrivialBoundary,
    NoGeneratorsWithinCap { cap: Degree },
    NotSpanning { cap: u32, spanned: usize, dim: usize },
    MembershipMismatch { polytope: Membership, region: Membership },
    Field(VfError),
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::EmptyGenerators => {
                write!(f, "the polytope needs at least one generator degree")
            }
            PolytopeError::DegenerateDegree { d1, d2 } => {
                write!(f, "degree ({d1}, {d2}) has total below 2; the exponent map is undefined")
            }
            PolytopeError::ExponentOutOfRange(m) => write!(f, "{m}"),
            PolytopeError::TrivialBoundary => {
                write!(f, "trivially bounded regime; no polytope test applies")
            }
            PolytopeError::NoGeneratorsWithinCap { cap } => {
                write!(f, "no generator degree fits under the tuple-degree cap ({}, {})", cap.d1, cap.d2)
            }
            PolytopeError::NotSpanning { cap, spanned, dim } => {
                write!(
                    f,
                    "bracket fields up to length {cap} span only {spanned} of {dim} directions at the base point"
                )
            }
            PolytopeError::MembershipMismatch { polytope, region } => {
                write!(
                    f,
                    "internal inconsistency: polytope membership says {polytope:?} but region membership says {region:?}"
                )
            }
            PolytopeError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PolytopeError {}

impl From<VfError> for PolytopeError {
    fn from(e: VfError) -> PolytopeError {
        PolytopeError::Field(e)
    }
}
