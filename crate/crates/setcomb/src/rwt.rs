//! Restricted-weak-type ratios on grid sets.
//!
//! For a cell set Ω and two projections the ratio
//! |Ω| / (|π₁Ω|^(1/p₁)·|π₂Ω|^(1/p₂)) measures how close Ω comes to
//! saturating the bound; measures and the α_j = |Ω|/|π_jΩ| densities stay
//! exact, only the final power combination drops to floating point.

use polyalg::{rat_to_f64, MultiPoly, Rational};
use polytope::LebesguePair;

use crate::{GridSet, SetError};

/// A cellwise projection to dimension n-1.
#[derive(Clone, Debug)]
pub enum Projection {
    /// Forget one coordinate axis.
    DropAxis(usize),
    /// Apply polynomial coordinate maps at every cell center and snap the
    /// images back onto the grid.
    Maps(Vec<MultiPoly>),
}

impl Projection {
    pub fn apply(&self, grid: &GridSet) -> Result<GridSet, SetError> {
        match self {
            Projection::DropAxis(axis) => grid.project_drop(*axis),
            Projection::Maps(maps) => grid.project_map(maps),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RwtReport {
    pub measure: Rational,
    pub proj1: Rational,
    pub proj2: Rational,
    /// α_j = |Ω| / |π_jΩ|, exact.
    pub alpha1: Rational,
    pub alpha2: Rational,
    /// |Ω| / (|π₁Ω|^(1/p₁)·|π₂Ω|^(1/p₂)).
    pub ratio: f64,
}

pub fn rwt_ratio(
    grid: &GridSet,
    pi1: &Projection,
    pi2: &Projection,
    pair: &LebesguePair,
) -> Result<RwtReport, SetError> {
    if grid.is_empty() {
        return Err(SetError::EmptySet);
    }
    let image1 = pi1.apply(grid)?;
    let image2 = pi2.apply(grid)?;
    let measure = grid.measure();
    let proj1 = image1.measure();
    let proj2 = image2.measure();
    let alpha1 = &measure / &proj1;
    let alpha2 = &measure / &proj2;
    let ratio = rat_to_f64(&measure)
        / (rat_to_f64(&proj1).powf(rat_to_f64(&pair.p1.recip()))
            * rat_to_f64(&proj2).powf(rat_to_f64(&pair.p2.recip())));
    Ok(RwtReport { measure, proj1, proj2, alpha1, alpha2, ratio })
}
