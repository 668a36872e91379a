//! Numerical side of the bracket calculus: flows of the operator fields,
//! sub-Riemannian ball sampling, occupancy-grid volume estimates, scaling
//! studies against the degree polytope, and the rescaled model-set probe
//! for exponent pairs outside the bounded region.

mod ball;
mod compiled;
mod flow;
mod grid;
mod numerics;
mod phi;
mod probe;
mod study;

pub use ball::{sample_ball, split_seed, BallSpec, PointCloud};
pub use compiled::{CompiledField, CompiledMap};
pub use flow::{commutator_defect, flow, FieldEval, FlowConfig};
pub use grid::{estimate_volume, suggest_cell, OccupancyGrid, VolumeEstimate};
pub use phi::{phi_map, phi_volume_check, PhiConfig, PhiReport, PHI_BAND};
pub use probe::{sharpness_probe, separating_halfplane, ProbeConfig, ProbeReport, ProbeRow, ProbeTarget};
pub use study::{ball_scaling_study, DeltaRelation, StudyConfig, StudyReport, StudyRow};

use polytope::{Membership, PolytopeError};
use std::fmt;
use vfcalc::VfError;

/// Errors from flowing, sampling, and the numerical experiments.
#[derive(Clone, Debug)]
pub enum CcError {
    /// A parameter fails its validation rule.
    BadConfig(String),
    /// A field still depends on symbolic parameters beyond its chart.
    SymbolicParameters { nvars: usize, dim: usize },
    /// The trajectory left the divergence guard radius.
    FlowDiverged { radius: f64 },
    /// The requested flow needs more steps than the configured budget.
    StepBudget { needed: usize, max: usize },
    /// A rational field component's denominator vanished along the path.
    VanishingDenominator,
    /// An operation needs a nonempty point cloud.
    EmptyCloud,
    /// Too many samples failed to flow.
    ExcessiveDrops { dropped: usize, total: usize },
    /// The witness fields do not frame the chart at the base point.
    DegenerateFrame,
    /// The probe needs a scaling point strictly outside the polytope.
    NotExterior(Membership),
    /// The pair is bounded for free and admits no probe.
    TriviallyBounded,
    /// The operator provides no projection maps.
    MissingProjections,
    /// Projection cells stayed too coarse at the refinement cap.
    ResolutionFailure { cell: f64, needed: f64 },
    Field(VfError),
    Polytope(PolytopeError),
}

impl fmt::Display for CcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CcError::BadConfig(msg) => write!(f, "{msg}"),
            CcError::SymbolicParameters { nvars, dim } => write!(
                f,
                "field over {nvars} variables on a {dim}-dimensional chart still carries \
                 symbolic parameters; specialize them first"
            ),
            CcError::FlowDiverged { radius } => {
                write!(f, "trajectory left the divergence guard radius {radius}")
            }
            CcError::StepBudget { needed, max } => {
                write!(f, "flow needs {needed} steps but the budget is {max}")
            }
            CcError::VanishingDenominator => {
                write!(f, "a field component's denominator vanishes along the path")
            }
            CcError::EmptyCloud => write!(f, "the point cloud is empty"),
            CcError::ExcessiveDrops { dropped, total } => write!(
                f,
                "{dropped} of {total} samples failed to flow; more than one percent aborts"
            ),
            CcError::DegenerateFrame => {
                write!(f, "witness fields do not frame the chart at the base point")
            }
            CcError::NotExterior(m) => {
                write!(f, "the scaling point is not exterior to the degree polytope ({m:?})")
            }
            CcError::TriviallyBounded => {
                write!(f, "trivially bounded regime; the pair admits no probe")
            }
            CcError::MissingProjections => {
                write!(f, "the operator spec provides no projection maps")
            }
            CcError::ResolutionFailure { cell, needed } => write!(
                f,
                "projection cells of size {cell:e} stay coarser than the required {needed:e} \
                 at the refinement cap"
            ),
            CcError::Field(e) => write!(f, "{e}"),
            CcError::Polytope(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CcError {}

impl From<VfError> for CcError {
    fn from(e: VfError) -> CcError {
        CcError::Field(e)
    }
}

impl From<PolytopeError> for CcError {
    fn from(e: PolytopeError) -> CcError {
        CcError::Polytope(e)
    }
}
