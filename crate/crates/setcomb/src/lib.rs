//! Discrete-set combinatorics for restricted-weak-type experiments: grid
//! sets with exact cell-counting measures, central one-dimensional sets
//! with dyadic width certificates, polynomial sublevel pruning by exact
//! root isolation, the sheaf refinement that equalizes fiber widths, and
//! a seeded extremal search over grid sets.

mod grid;
mod interval;
mod prune;
mod rwt;
mod search;
mod sheaf;
mod unipoly;
mod width;

pub use grid::GridSet;
pub use interval::IntervalSet;
pub use prune::{prune_polynomial, PruneConfig, PruneReport};
pub use rwt::{rwt_ratio, Projection, RwtReport};
pub use search::{extremal_search, SearchConfig, SearchReport};
pub use sheaf::{
    sheaf_refine, FiberCertificate, SheafReport, Straightening, WidthClass, FIBER_FLOOR_DIVISOR,
    SHEAF_CONSTANT,
};
pub use unipoly::UniPoly;
pub use width::{
    is_central, width_monotonicity_holds, width_of, CentralSet, CentralityReport, ProfileRow,
    WidthReport,
};

use std::fmt;

/// Errors from grid geometry, centrality checks, and the refinements.
#[derive(Clone, Debug, PartialEq)]
pub enum SetError {
    /// A parameter fails its validation rule.
    BadConfig(String),
    /// Grid bounds, cells, or indices are inconsistent.
    BadGrid(String),
    /// An operation needs a nonempty set.
    EmptySet,
    /// A point set or map has the wrong dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// A member point lies outside the claimed concentration window.
    Escapes { farthest: String, limit: String },
    /// A dyadic interval concentrates too much of the set.
    NotCentral { worst_ratio: f64, constant: f64 },
    /// No derivative of the polynomial is large enough at the origin.
    HypothesisFailed { degree: u32, m: u32 },
    /// The polynomial's sup-norm bound exceeds the configured budget.
    NormBudget { bound: String, budget: String },
    /// Root brackets from the two threshold polynomials would not separate.
    RootSeparation,
    /// Every fiber certificate trims to an empty cell set.
    EmptyRefinement,
    /// The straightening map's Jacobian diagnostic is unusable.
    DegenerateStraightening { jacobian_rel_error: f64 },
    /// The exponent pair is bounded for free; the search would be vacuous.
    TrivialRegime,
    /// A serialized grid set failed to parse.
    Parse(String),
}

impl fmt::Display for SetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetError::BadConfig(msg) => write!(f, "{msg}"),
            SetError::BadGrid(msg) => write!(f, "{msg}"),
            SetError::EmptySet => write!(f, "the set is empty"),
            SetError::DimensionMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            SetError::Escapes { farthest, limit } => {
                write!(f, "a member point at distance {farthest} escapes the window {limit}")
            }
            SetError::NotCentral { worst_ratio, constant } => write!(
                f,
                "a dyadic interval concentrates {worst_ratio:.3} of the set against the \
                 allowed constant {constant}"
            ),
            SetError::HypothesisFailed { degree, m } => write!(
                f,
                "no derivative of order <= {degree} reaches the width power {m} at the origin"
            ),
            SetError::NormBudget { bound, budget } => {
                write!(f, "coefficient norm bound {bound} exceeds the budget {budget}")
            }
            SetError::RootSeparation => {
                write!(f, "sublevel root brackets stay entangled at the refinement cap")
            }
            SetError::EmptyRefinement => write!(
                f,
                "every fiber certificate trims to an empty cell set; align the grid to \
                 dyadic cells"
            ),
            SetError::DegenerateStraightening { jacobian_rel_error } => write!(
                f,
                "straightening Jacobian diagnostic {jacobian_rel_error} is not usable"
            ),
            SetError::TrivialRegime => {
                write!(f, "trivially bounded regime; the search would be vacuous")
            }
            SetError::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for SetError {}
