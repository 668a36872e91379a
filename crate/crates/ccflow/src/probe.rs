//! The rescaled model-set probe: for an exponent pair whose scaling point
//! lies outside the degree polytope, the ratio |Ω| / (|π₁Ω|^{1/p₁}|π₂Ω|^{1/p₂})
//! over Ω = Φ(B_{1/K}) must blow up as the base radius shrinks.

use crate::ball::split_seed;
use crate::compiled::{compile_words, CompiledMap};
use crate::flow::FlowConfig;
use crate::numerics::lu_decompose;
use crate::phi::PhiFrame;
use crate::study::frame_matrix;
use crate::CcError;
use num_traits::{One, Zero};
use polyalg::{rat, rat_to_f64, rat_to_string, MultiPoly, Rational};
use polytope::{c_from_p, LebesguePair, Membership, NewtonPolytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use vfcalc::{Degree, WordTable};

/// Controls for the sharpness probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeConfig {
    /// The frequency-style parameter K of the model map.
    pub k: f64,
    /// Smallest K the probe accepts.
    pub k_min: f64,
    /// Image points drawn from E = [−1/K, 1/K]ⁿ per radius.
    pub image_samples: usize,
    /// Starting occupancy resolution per axis.
    pub cells_per_axis: u32,
    /// Refinement cap for the occupancy resolution.
    pub max_cells_per_axis: u32,
    pub seed: u64,
    /// Also accept pairs whose scaling point is polytope-interior, as a
    /// bounded comparison run; the default refuses them.
    pub allow_interior: bool,
    pub flow: FlowConfig,
}

impl Default for ProbeConfig {
    fn default() -> ProbeConfig {
        ProbeConfig {
            k: 8.0,
            k_min: 8.0,
            image_samples: 200_000,
            cells_per_axis: 48,
            max_cells_per_axis: 4096,
            seed: 17,
            allow_interior: false,
            // Φ is one time-1 flow of a small frozen field, so a coarser
            // step than the sampling default keeps fourth-order accuracy.
            flow: FlowConfig { step: 1e-2, ..FlowConfig::default() },
        }
    }
}

/// What the probe needs from an operator: the bracket table and polytope,
/// both projection maps, and the base point as floats.
pub struct ProbeTarget<'a> {
    pub table: &'a WordTable,
    pub polytope: &'a NewtonPolytope,
    pub pi1: Option<&'a [MultiPoly]>,
    pub pi2: Option<&'a [MultiPoly]>,
    pub base: &'a [f64],
}

/// One radius of the ratio table.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub delta0: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub omega: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub ratio: f64,
}

/// The ratio table with the half-plane exponents and witness that shaped it.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub exponents: (String, String),
    pub membership: String,
    /// The half-plane coefficients (a₁, a₂), rendered exactly.
    pub halfplane: (String, String),
    pub witness: Vec<String>,
    pub rows: Vec<ProbeRow>,
    pub warnings: Vec<String>,
}

impl ProbeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta0,delta1,delta2,omega,pi1,pi2,ratio\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                r.delta0, r.delta1, r.delta2, r.omega, r.pi1, r.pi2, r.ratio
            ));
        }
        out
    }
}

/// Corner candidates of the feasible region {a ≥ 0 : a·v ≥ 1 for every
/// vertex v}: one cap per axis plus one scaled inward normal per staircase
/// edge, each touching the polytope.
fn halfplane_candidates(vertices: &[Degree]) -> Vec<(Rational, Rational)> {
    let mut candidates = Vec::new();
    let first = vertices.first().expect("a polytope has at least one vertex");
    let last = vertices.last().expect("a polytope has at least one vertex");
    if first.d1 > 0 {
        candidates.push((rat(1, i64::from(first.d1)), rat(0, 1)));
    }
    for pair in vertices.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        let nx = rat(i64::from(p.d2) - i64::from(q.d2), 1);
        let ny = rat(i64::from(q.d1) - i64::from(p.d1), 1);
        let touch = &(&nx * &rat(i64::from(p.d1), 1)) + &(&ny * &rat(i64::from(p.d2), 1));
        candidates.push((&nx / &touch, &ny / &touch));
    }
    if last.d2 > 0 {
        candidates.push((rat(0, 1), rat(1, i64::from(last.d2))));
    }
    candidates
}

/// Picks the candidate minimizing a·c, then blends away any zero entry
/// with its neighboring candidate so both coefficients stay positive.
/// With `require_separation` the result keeps a·c < 1.
fn choose_halfplane(
    polytope: &NewtonPolytope,
    c: &(Rational, Rational),
    require_separation: bool,
) -> Result<(Rational, Rational), CcError> {
    let candidates = halfplane_candidates(polytope.vertices());
    let scores: Vec<Rational> = candidates
        .iter()
        .map(|a| &(&a.0 * &c.0) + &(&a.1 * &c.1))
        .collect();
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s < scores[best] {
            best = i;
        }
    }
    if require_separation && scores[best] >= Rational::one() {
        return Err(CcError::BadConfig(
            "no vertex half-plane separates the scaling point from the polytope".into(),
        ));
    }
    let (a1, a2) = &candidates[best];
    if !a1.is_zero() && !a2.is_zero() {
        return Ok((a1.clone(), a2.clone()));
    }
    if candidates.len() < 2 {
        return Err(CcError::BadConfig(
            "the polytope admits no half-plane with two positive coefficients".into(),
        ));
    }
    let neighbor = if best + 1 < candidates.len() { best + 1 } else { best - 1 };
    let theta = if !require_separation || scores[neighbor] < Rational::one() {
        rat(1, 2)
    } else {
        // blending this far keeps the combined score at (1 + s_best)/2 < 1
        let gap = &scores[neighbor] - &scores[best];
        &(&Rational::one() - &scores[best]) / &(&rat(2, 1) * &gap)
    };
    let keep = &Rational::one() - &theta;
    Ok((
        &(&keep * &candidates[best].0) + &(&theta * &candidates[neighbor].0),
        &(&keep * &candidates[best].1) + &(&theta * &candidates[neighbor].1),
    ))
}

/// Finds a half-plane a₁x₁ + a₂x₂ ≥ 1 with 0 < a₁, a₂ < 1 containing the
/// polytope but not the scaling point, by an exact search over the corner
/// candidates of the feasible coefficient region.
pub fn separating_halfplane(
    polytope: &NewtonPolytope,
    c: &(Rational, Rational),
) -> Result<(Rational, Rational), CcError> {
    match polytope.membership(c) {
        Membership::Exterior => choose_halfplane(polytope, c, true),
        m => Err(CcError::NotExterior(m)),
    }
}

struct GridStats {
    volume: f64,
    cells: Vec<f64>,
    max_cell: f64,
}

/// Occupancy volume with per-axis cells of extent/cpa, so anisotropic
/// clouds keep a comparable fill ratio along every axis.
fn occupancy_stats(data: &[f64], dim: usize, cpa: u32) -> Result<GridStats, CcError> {
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for point in data.chunks_exact(dim) {
        for (i, v) in point.iter().enumerate() {
            lo[i] = lo[i].min(*v);
            hi[i] = hi[i].max(*v);
        }
    }
    let mut cells = Vec::with_capacity(dim);
    for (l, h) in lo.iter().zip(&hi) {
        let extent = h - l;
        if extent <= 0.0 {
            return Err(CcError::BadConfig(
                "a probe cloud has no extent along an axis; the projection may be degenerate"
                    .into(),
            ));
        }
        cells.push(extent / f64::from(cpa));
    }
    let mut occupied: HashSet<Vec<i64>> = HashSet::new();
    for point in data.chunks_exact(dim) {
        let key: Vec<i64> = point
            .iter()
            .zip(&cells)
            .map(|(v, c)| (v / c).floor() as i64)
            .collect();
        occupied.insert(key);
    }
    let volume = occupied.len() as f64 * cells.iter().product::<f64>();
    let max_cell = cells.iter().fold(0.0, |a: f64, &b| a.max(b));
    Ok(GridStats { volume, cells, max_cell })
}

struct RadiusCloud {
    delta0: f64,
    delta1: f64,
    delta2: f64,
    det_frame: f64,
    column_norms: Vec<f64>,
    frame_points: Vec<f64>,
    pi1_points: Vec<f64>,
    pi2_points: Vec<f64>,
    needed_cell: f64,
}

/// Builds Ω = Φ(B_{1/K}) for the lowest-degree witness at each δ₀, with
/// δ = (δ₀^{a₁}, δ₀^{a₂}) for the separating half-plane exponents, and
/// reports R(δ₀) = |Ω| / (|π₁Ω|^{1/p₁} |π₂Ω|^{1/p₂}) from occupancy grids.
/// Every radius reuses the same sub-seed layout, so the rows differ only
/// through the radii themselves.
pub fn sharpness_probe(
    target: &ProbeTarget<'_>,
    pair: &LebesguePair,
    delta0s: &[f64],
    cfg: &ProbeConfig,
) -> Result<ProbeReport, CcError> {
    if !(cfg.k.is_finite() && cfg.k > 0.0) || cfg.k < cfg.k_min {
        return Err(CcError::BadConfig(format!(
            "K must be finite and at least {}, got {}",
            cfg.k_min, cfg.k
        )));
    }
    if cfg.image_samples == 0 {
        return Err(CcError::BadConfig("the probe needs at least one image sample".into()));
    }
    if cfg.cells_per_axis < 2 || cfg.max_cells_per_axis < cfg.cells_per_axis {
        return Err(CcError::BadConfig(
            "cells per axis must be at least 2 and at most the refinement cap".into(),
        ));
    }
    if delta0s.is_empty() {
        return Err(CcError::BadConfig("the probe needs at least one radius".into()));
    }
    for &d in delta0s {
        if !(0.0 < d && d < 1.0) {
            return Err(CcError::BadConfig(format!(
                "base radii must lie strictly between 0 and 1, got {d}"
            )));
        }
    }
    if pair.is_trivially_bounded() {
        return Err(CcError::TriviallyBounded);
    }
    let c = c_from_p(pair)?;
    let membership = target.polytope.membership(&c);
    match membership {
        Membership::Exterior => {}
        Membership::Interior if cfg.allow_interior => {}
        m => return Err(CcError::NotExterior(m)),
    }
    let halfplane = choose_halfplane(target.polytope, &c, membership == Membership::Exterior)?;
    let (a1, a2) = (rat_to_f64(&halfplane.0), rat_to_f64(&halfplane.1));

    let pi1 = CompiledMap::compile(target.pi1.ok_or(CcError::MissingProjections)?)?;
    let pi2 = CompiledMap::compile(target.pi2.ok_or(CcError::MissingProjections)?)?;
    let n = target.base.len();
    if pi1.nvars() != n || pi2.nvars() != n {
        return Err(CcError::BadConfig(format!(
            "projection maps read {} and {} coordinates on a {n}-dimensional chart",
            pi1.nvars(),
            pi2.nvars()
        )));
    }
    let witness = target
        .polytope
        .generators()
        .first()
        .ok_or(CcError::DegenerateFrame)?;
    let fields = compile_words(target.table, &witness.words)?;
    let degrees: Vec<Degree> = witness.words.iter().map(|w| w.degree()).collect();

    let mut radii = Vec::with_capacity(delta0s.len());
    for &delta0 in delta0s {
        let (delta1, delta2) = (delta0.powf(a1), delta0.powf(a2));
        let frame = PhiFrame::new(&fields, degrees.clone(), target.base, (delta1, delta2), cfg.k)?;
        let matrix = frame_matrix(&fields, witness, target.base, delta1, delta2)?;
        let lu = lu_decompose(n, matrix.clone()).ok_or(CcError::DegenerateFrame)?;
        let det_frame = lu.det().abs();
        let column_norms: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|r| matrix[r * n + j].powi(2)).sum::<f64>().sqrt())
            .collect();

        let points: Vec<Vec<f64>> = (0..cfg.image_samples)
            .into_par_iter()
            .map(|i| -> Result<Vec<f64>, CcError> {
                let mut rng = ChaCha8Rng::seed_from_u64(split_seed(cfg.seed, i as u64));
                let t: Vec<f64> =
                    (0..n).map(|_| (2.0 * rng.gen::<f64>() - 1.0) / cfg.k).collect();
                frame.map(&t, &cfg.flow)
            })
            .collect::<Result<_, _>>()?;

        let mut frame_points = Vec::with_capacity(points.len() * n);
        let mut pi1_points = Vec::with_capacity(points.len() * pi1.out_dim());
        let mut pi2_points = Vec::with_capacity(points.len() * pi2.out_dim());
        let mut image1 = vec![0.0; pi1.out_dim()];
        let mut image2 = vec![0.0; pi2.out_dim()];
        for p in &points {
            let mut z: Vec<f64> = p.iter().zip(target.base).map(|(a, b)| a - b).collect();
            lu.solve_into(&mut z);
            frame_points.extend_from_slice(&z);
            pi1.eval_into(p, &mut image1);
            pi1_points.extend_from_slice(&image1);
            pi2.eval_into(p, &mut image2);
            pi2_points.extend_from_slice(&image2);
        }
        radii.push(RadiusCloud {
            delta0,
            delta1,
            delta2,
            det_frame,
            column_norms,
            frame_points,
            pi1_points,
            pi2_points,
            needed_cell: delta0.powf(a1.max(a2)),
        });
    }

    // One shared resolution for every radius keeps the rows comparable;
    // refine until the coarsest physical cell resolves the finest radius.
    let exp1 = rat_to_f64(&pair.p1.recip());
    let exp2 = rat_to_f64(&pair.p2.recip());
    let mut cpa = cfg.cells_per_axis;
    let mut warnings = Vec::new();
    let rows = loop {
        let mut rows = Vec::with_capacity(radii.len());
        let mut worst: Option<(f64, f64)> = None;
        for rc in &radii {
            let omega_grid = occupancy_stats(&rc.frame_points, n, cpa)?;
            let pi1_grid = occupancy_stats(&rc.pi1_points, pi1.out_dim(), cpa)?;
            let pi2_grid = occupancy_stats(&rc.pi2_points, pi2.out_dim(), cpa)?;
            let omega_cell = omega_grid
                .cells
                .iter()
                .zip(&rc.column_norms)
                .map(|(cell, norm)| cell * norm)
                .fold(0.0, f64::max);
            let coarsest = omega_cell.max(pi1_grid.max_cell).max(pi2_grid.max_cell);
            if coarsest > rc.needed_cell
                && worst.is_none_or(|(cell, need)| coarsest / rc.needed_cell > cell / need)
            {
                worst = Some((coarsest, rc.needed_cell));
            }
            let omega = rc.det_frame * omega_grid.volume;
            let ratio = omega / (pi1_grid.volume.powf(exp1) * pi2_grid.volume.powf(exp2));
            rows.push(ProbeRow {
                delta0: rc.delta0,
                delta1: rc.delta1,
                delta2: rc.delta2,
                omega,
                pi1: pi1_grid.volume,
                pi2: pi2_grid.volume,
                ratio,
            });
        }
        match worst {
            None => break rows,
            Some((cell, needed)) => {
                if cpa >= cfg.max_cells_per_axis {
                    return Err(CcError::ResolutionFailure { cell, needed });
                }
                cpa = (cpa * 2).min(cfg.max_cells_per_axis);
            }
        }
    };
    if cpa > cfg.cells_per_axis {
        warnings.push(format!(
            "occupancy grids refined to {cpa} cells per axis to resolve the finest radius"
        ));
    }

    Ok(ProbeReport {
        exponents: (pair.p1.render(), pair.p2.render()),
        membership: format!("{membership:?}").to_lowercase(),
        halfplane: (rat_to_string(&halfplane.0), rat_to_string(&halfplane.1)),
        witness: witness.words.iter().map(|w| w.to_string()).collect(),
        rows,
        warnings,
    })
}
