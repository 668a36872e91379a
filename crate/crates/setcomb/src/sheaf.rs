//! Fiber-width refinement of grid sets.
//!
//! The flow axis is the last grid axis; callers straighten other fields
//! into that position first and record how. The pipeline drops fibers
//! thinner than 1/16 of the mean fiber density, computes each survivor's
//! dyadic width certificate, trims the fiber to the cells fully inside
//! its certificate window, and pigeonholes the survivors into width
//! classes, keeping the class of largest mass (ties to the coarser
//! width). On grids whose flow axis is aligned to dyadic cells the trim
//! keeps every cell of the certificate window, and each kept fiber,
//! recentered at its leftmost point, is central with constant 4: any
//! interval is covered by two dyadic windows of at most twice the length,
//! so the maximizer property pays at most 2·2^ε.

use polyalg::{rat, rat_to_string, Rational};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;

use crate::width::{is_central, width_of};
use crate::{GridSet, IntervalSet, SetError};

/// Concentration constant certified for refined fibers.
pub const SHEAF_CONSTANT: i64 = 4;

/// Fibers below mean density / FIBER_FLOOR_DIVISOR are dropped, losing at
/// most 1/FIBER_FLOOR_DIVISOR of the measure.
pub const FIBER_FLOOR_DIVISOR: u64 = 16;

/// How the flow field was aligned with the last grid axis.
#[derive(Clone, Debug, PartialEq)]
pub enum Straightening {
    /// The field already is the last coordinate axis, or the caller
    /// straightened it by an exact polynomial change of variables.
    Identity,
    /// Numerically straightened coordinates; the diagnostic is the
    /// relative error of the flow Jacobian, and results are approximate.
    Numerical { jacobian_rel_error: f64 },
}

/// Width certificate for one kept fiber.
#[derive(Clone, Debug)]
pub struct FiberCertificate {
    /// Base cell index (all axes but the last).
    pub base: Vec<i64>,
    /// The maximizing window I(x).
    pub interval: (Rational, Rational),
    pub width: Rational,
    /// Time-set mass kept inside the window.
    pub mass: Rational,
    /// Window mass against the quarter threshold ¼|I|^ε|S|.
    pub threshold_value: f64,
    /// Whether the kept fiber, recentered at its leftmost point, passes
    /// the centrality check at constant 4.
    pub central: bool,
}

/// One row of the width histogram.
#[derive(Clone, Debug)]
pub struct WidthClass {
    pub width: Rational,
    pub fibers: usize,
    /// Total kept measure of the class, in grid measure.
    pub mass: Rational,
}

#[derive(Clone, Debug)]
pub struct SheafReport {
    pub refined: GridSet,
    pub direction: u8,
    /// The selected common fiber width.
    pub width: Rational,
    /// |refined| / |input|, exact.
    pub measure_ratio: Rational,
    /// Width histogram over all surviving fibers, finest first.
    pub classes: Vec<WidthClass>,
    /// Certificates of the fibers in the selected class.
    pub certificates: Vec<FiberCertificate>,
    /// True under numerical straightening.
    pub approximate: bool,
}

impl SheafReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "direction": self.direction,
            "width": rat_to_string(&self.width),
            "measure_ratio": rat_to_string(&self.measure_ratio),
            "approximate": self.approximate,
            "cells": self.refined.len(),
            "classes": self.classes.iter().map(|c| json!({
                "width": rat_to_string(&c.width),
                "fibers": c.fibers,
                "mass": rat_to_string(&c.mass),
            })).collect::<Vec<_>>(),
            "certificates": self.certificates.iter().map(|f| json!({
                "base": f.base,
                "interval": [rat_to_string(&f.interval.0), rat_to_string(&f.interval.1)],
                "width": rat_to_string(&f.width),
                "mass": rat_to_string(&f.mass),
                "threshold_value": f.threshold_value,
                "central": f.central,
            })).collect::<Vec<_>>(),
        })
    }
}

struct FiberResult {
    base: Vec<i64>,
    kept: Vec<i64>,
    certificate: FiberCertificate,
}

/// Refines the set so all kept fibers share one dyadic width.
pub fn sheaf_refine(
    grid: &GridSet,
    direction: u8,
    epsilon: &Rational,
    straightening: &Straightening,
) -> Result<SheafReport, SetError> {
    if !matches!(direction, 1 | 2) {
        return Err(SetError::BadConfig(format!(
            "the refinement direction must be 1 or 2, got {direction}"
        )));
    }
    if let Straightening::Numerical { jacobian_rel_error } = straightening {
        if !jacobian_rel_error.is_finite() || *jacobian_rel_error >= 1.0 {
            return Err(SetError::DegenerateStraightening {
                jacobian_rel_error: *jacobian_rel_error,
            });
        }
    }
    if grid.is_empty() {
        return Err(SetError::EmptySet);
    }
    if grid.dim() < 2 {
        return Err(SetError::BadGrid(
            "fibers need at least a base axis and a flow axis".into(),
        ));
    }
    let axis = grid.dim() - 1;
    let t_lo = &grid.lower()[axis];
    let h = grid.cell();
    let mut fibers: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    for idx in grid.cells() {
        fibers.entry(idx[..axis].to_vec()).or_default().push(idx[axis]);
    }
    let total = grid.len() as u64;
    let bases = fibers.len() as u64;
    let survivors: Vec<(Vec<i64>, Vec<i64>)> = fibers
        .into_iter()
        .filter(|(_, ts)| {
            u128::from(ts.len() as u64) * u128::from(FIBER_FLOOR_DIVISOR) * u128::from(bases)
                >= u128::from(total)
        })
        .collect();
    let results: Vec<Option<FiberResult>> = survivors
        .par_iter()
        .map(|(base, ts)| refine_fiber(base, ts, t_lo, h, epsilon))
        .collect::<Result<_, SetError>>()?;
    let mut classes: BTreeMap<Rational, (usize, usize)> = BTreeMap::new();
    let kept: Vec<FiberResult> = results.into_iter().flatten().collect();
    if kept.is_empty() {
        return Err(SetError::EmptyRefinement);
    }
    for fiber in &kept {
        let entry = classes.entry(fiber.certificate.width.clone()).or_insert((0, 0));
        entry.0 += 1;
        entry.1 += fiber.kept.len();
    }
    let cell_measure = polyalg::rat_pow(h, grid.dim() as i32);
    let class_rows: Vec<WidthClass> = classes
        .iter()
        .map(|(width, (fibers, cells))| WidthClass {
            width: width.clone(),
            fibers: *fibers,
            mass: rat(*cells as i64, 1) * &cell_measure,
        })
        .collect();
    let selected = classes
        .iter()
        .max_by(|a, b| (a.1 .1).cmp(&b.1 .1).then_with(|| a.0.cmp(b.0)))
        .map(|(width, _)| width.clone())
        .expect("at least one width class");
    let mut refined = GridSet::new(
        grid.lower().to_vec(),
        grid.upper().to_vec(),
        grid.cell().clone(),
    )?;
    let mut certificates = Vec::new();
    for fiber in kept {
        if fiber.certificate.width != selected {
            continue;
        }
        let mut idx = fiber.base.clone();
        idx.push(0);
        for t in &fiber.kept {
            *idx.last_mut().expect("dim >= 2") = *t;
            refined.insert(&idx)?;
        }
        certificates.push(fiber.certificate);
    }
    let measure_ratio = refined.measure() / grid.measure();
    Ok(SheafReport {
        refined,
        direction,
        width: selected,
        measure_ratio,
        classes: class_rows,
        certificates,
        approximate: matches!(straightening, Straightening::Numerical { .. }),
    })
}

/// Width certificate and trimmed cells for one fiber; None when no cell
/// fits inside the certificate window.
fn refine_fiber(
    base: &[i64],
    ts: &[i64],
    t_lo: &Rational,
    h: &Rational,
    epsilon: &Rational,
) -> Result<Option<FiberResult>, SetError> {
    let parts: Vec<(Rational, Rational)> = ts
        .iter()
        .map(|t| (t_lo + h * rat(*t, 1), t_lo + h * rat(t + 1, 1)))
        .collect();
    let time_set = IntervalSet::new(parts);
    let report = width_of(&time_set, epsilon)?;
    let (win_lo, win_hi) = &report.interval;
    let kept: Vec<i64> = ts
        .iter()
        .copied()
        .filter(|t| {
            let cell_lo = t_lo + h * rat(*t, 1);
            let cell_hi = t_lo + h * rat(t + 1, 1);
            &cell_lo >= win_lo && &cell_hi <= win_hi
        })
        .collect();
    if kept.is_empty() {
        return Ok(None);
    }
    let kept_parts: Vec<(Rational, Rational)> = kept
        .iter()
        .map(|t| (t_lo + h * rat(*t, 1), t_lo + h * rat(t + 1, 1)))
        .collect();
    let kept_set = IntervalSet::new(kept_parts);
    let anchor = kept_set.span().expect("kept cells are nonempty").0.clone();
    let recentered = kept_set.translate(&-anchor);
    let check = is_central(&recentered, &report.width, epsilon, &rat(SHEAF_CONSTANT, 1))?;
    Ok(Some(FiberResult {
        base: base.to_vec(),
        kept,
        certificate: FiberCertificate {
            base: base.to_vec(),
            interval: report.interval.clone(),
            width: report.width.clone(),
            mass: kept_set.measure(),
            threshold_value: report.threshold_value,
            central: check.central,
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_with_fibers(spans: &[(i64, i64)]) -> GridSet {
        let mut grid = GridSet::new(
            vec![rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 4)],
            rat(1, 64),
        )
        .unwrap();
        for (x, (start, len)) in spans.iter().enumerate() {
            for t in *start..start + len {
                grid.insert(&[x as i64, t]).unwrap();
            }
        }
        grid
    }

    #[test]
    fn a_product_set_keeps_everything_at_its_own_width() {
        let grid = grid_with_fibers(&[(0, 16), (0, 16), (0, 16), (0, 16)]);
        let report = sheaf_refine(&grid, 2, &rat(1, 2), &Straightening::Identity).unwrap();
        assert_eq!(report.width, rat(1, 4));
        assert_eq!(report.measure_ratio, rat(1, 1));
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.certificates.len(), 4);
        assert!(report.certificates.iter().all(|c| c.central));
        assert!(!report.approximate);
    }

    #[test]
    fn two_scales_pigeonhole_to_the_heavier_class() {
        let spans: Vec<(i64, i64)> =
            (0..8).map(|x| if x < 4 { (0, 1) } else { (0, 16) }).collect();
        let grid = grid_with_fibers(&spans);
        let report = sheaf_refine(&grid, 2, &rat(1, 2), &Straightening::Identity).unwrap();
        assert_eq!(report.classes.len(), 2);
        assert_eq!(report.width, rat(1, 4));
        assert_eq!(report.certificates.len(), 4);
        assert_eq!(report.refined.len(), 64);
        assert_eq!(report.measure_ratio, rat(16, 17));
    }

    #[test]
    fn equal_masses_prefer_the_coarser_width() {
        let mut spans: Vec<(i64, i64)> = vec![(0, 1); 16];
        spans.push((0, 16));
        let grid = grid_with_fibers(&spans);
        let report = sheaf_refine(&grid, 2, &rat(1, 2), &Straightening::Identity).unwrap();
        assert_eq!(report.width, rat(1, 4));
        assert_eq!(report.certificates.len(), 1);
    }

    #[test]
    fn refinement_is_structurally_idempotent() {
        let spans: Vec<(i64, i64)> =
            (0..8).map(|x| if x < 4 { (0, 1) } else { (0, 16) }).collect();
        let grid = grid_with_fibers(&spans);
        let once = sheaf_refine(&grid, 2, &rat(1, 2), &Straightening::Identity).unwrap();
        let twice =
            sheaf_refine(&once.refined, 2, &rat(1, 2), &Straightening::Identity).unwrap();
        assert!(twice.width.clone() * rat(2, 1) >= once.width);
        assert!(once.width.clone() * rat(2, 1) >= twice.width);
        assert!(twice.measure_ratio >= rat(1, 2));
    }

    #[test]
    fn straightening_diagnostics_gate_the_run() {
        let grid = grid_with_fibers(&[(0, 16)]);
        let bad = Straightening::Numerical { jacobian_rel_error: 2.0 };
        assert!(matches!(
            sheaf_refine(&grid, 2, &rat(1, 2), &bad),
            Err(SetError::DegenerateStraightening { .. })
        ));
        let fine = Straightening::Numerical { jacobian_rel_error: 1e-6 };
        let report = sheaf_refine(&grid, 1, &rat(1, 2), &fine).unwrap();
        assert!(report.approximate);
    }

    #[test]
    fn unaligned_grids_can_trim_to_nothing() {
        let mut grid = GridSet::new(
            vec![rat(0, 1), rat(1, 3)],
            vec![rat(1, 1), rat(1, 3) + rat(1, 4)],
            rat(1, 4),
        )
        .unwrap();
        grid.insert(&[0, 0]).unwrap();
        assert!(matches!(
            sheaf_refine(&grid, 2, &rat(7, 8), &Straightening::Identity),
            Err(SetError::EmptyRefinement)
        ));
    }

    #[test]
    fn the_json_rendering_carries_the_certificates() {
        let grid = grid_with_fibers(&[(0, 16), (0, 16)]);
        let report = sheaf_refine(&grid, 2, &rat(1, 2), &Straightening::Identity).unwrap();
        let value = report.to_json();
        assert_eq!(value["direction"], 2);
        assert_eq!(value["width"], "1/4");
        assert_eq!(value["measure_ratio"], "1");
        assert_eq!(value["certificates"].as_array().unwrap().len(), 2);
        assert_eq!(value["certificates"][0]["central"], true);
    }
}
