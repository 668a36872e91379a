//! Volume scaling of sampled balls against the polytope prediction.

use crate::ball::{sample_ball, BallSpec};
use crate::compiled::{compile_letters, compile_words, CompiledField};
use crate::flow::{FieldEval, FlowConfig};
use crate::grid::OccupancyGrid;
use crate::numerics::{fit_line, lu_decompose};
use crate::CcError;
use serde::Serialize;
use vfcalc::{GeneratorWitness, WordTable};

/// How δ₂ is tied to δ₁ across a study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeltaRelation {
    /// δ₂ = δ₁.
    Equal,
    /// δ₂ = δ₁².
    Square,
}

impl DeltaRelation {
    pub fn delta2(self, delta1: f64) -> f64 {
        match self {
            DeltaRelation::Equal => delta1,
            DeltaRelation::Square => delta1 * delta1,
        }
    }

    /// Weight of d₂ in the predicted volume exponent d₁ + w·d₂.
    fn weight(self) -> u32 {
        match self {
            DeltaRelation::Equal => 1,
            DeltaRelation::Square => 2,
        }
    }
}

/// Sampling controls for a scaling study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyConfig {
    pub samples: usize,
    pub k_max: u32,
    pub seed: u64,
    /// Cells per frame axis; `None` picks a count that keeps several
    /// samples per cell in the sampled dimension.
    pub cells_per_axis: Option<u32>,
    pub flow: FlowConfig,
}

impl Default for StudyConfig {
    fn default() -> StudyConfig {
        StudyConfig {
            samples: 60_000,
            k_max: 6,
            seed: 7,
            cells_per_axis: None,
            flow: FlowConfig::default(),
        }
    }
}

/// One radius of a scaling study. The volume is measured in the witness
/// frame: cells are cubes in coordinates where the ball has unit size, and
/// the frame determinant converts the count back to ambient volume.
#[derive(Clone, Debug, Serialize)]
pub struct StudyRow {
    pub delta1: f64,
    pub delta2: f64,
    pub occupied: usize,
    pub cell: f64,
    pub volume: f64,
}

/// A fitted volume-scaling exponent next to the polytope's prediction.
#[derive(Clone, Debug, Serialize)]
pub struct StudyReport {
    pub relation: DeltaRelation,
    pub witness: Vec<String>,
    pub rows: Vec<StudyRow>,
    pub fitted_slope: f64,
    pub predicted_slope: f64,
}

impl StudyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta1,delta2,occupied,cell,volume\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.17e},{:.17e},{},{:.17e},{:.17e}\n",
                r.delta1, r.delta2, r.occupied, r.cell, r.volume
            ));
        }
        out
    }
}

fn check_geometric(deltas: &[f64]) -> Result<(), CcError> {
    if deltas.len() < 3 {
        return Err(CcError::BadConfig(format!(
            "a scaling study needs at least 3 radii, got {}",
            deltas.len()
        )));
    }
    if deltas.iter().any(|d| !(0.0 < *d && *d < 1.0)) {
        return Err(CcError::BadConfig("radii must lie strictly between 0 and 1".into()));
    }
    let ratio = deltas[1] / deltas[0];
    if (ratio - 1.0).abs() < 1e-9 {
        return Err(CcError::BadConfig("radii must be distinct".into()));
    }
    for w in deltas.windows(2) {
        if ((w[1] / w[0]) - ratio).abs() > 1e-9 * ratio.abs() {
            return Err(CcError::BadConfig("radii must be geometrically spaced".into()));
        }
    }
    Ok(())
}

fn auto_cells(dim: usize, samples: usize) -> u32 {
    ((samples as f64 / 8.0).powf(1.0 / dim as f64)).round().clamp(8.0, 64.0) as u32
}

/// Build the witness frame at δ = (δ₁, δ₂): column j is the witness field
/// X_{w_j} at the base point scaled by δ₁^{d₁(w_j)} δ₂^{d₂(w_j)}.
pub(crate) fn frame_matrix(
    fields: &[CompiledField],
    witness: &GeneratorWitness,
    x0: &[f64],
    delta1: f64,
    delta2: f64,
) -> Result<Vec<f64>, CcError> {
    let n = x0.len();
    let mut a = vec![0.0; n * n];
    let mut col = vec![0.0; n];
    for (j, (field, word)) in fields.iter().zip(&witness.words).enumerate() {
        field.eval_into(x0, &mut col)?;
        let d = word.degree();
        let scale = delta1.powi(d.d1 as i32) * delta2.powi(d.d2 as i32);
        for (r, v) in col.iter().enumerate() {
            a[r * n + j] = v * scale;
        }
    }
    Ok(a)
}

/// Estimate |B(x₀; δ₁, δ₂)| for each radius and fit the scaling exponent
/// of volume against δ₁, with δ₂ tied to δ₁ by the relation. The expected
/// exponent is the smallest δ-power any polytope generator contributes.
pub fn ball_scaling_study(
    table: &WordTable,
    generators: &[GeneratorWitness],
    x0: &[f64],
    deltas: &[f64],
    relation: DeltaRelation,
    cfg: &StudyConfig,
) -> Result<StudyReport, CcError> {
    check_geometric(deltas)?;
    let witness = generators
        .first()
        .ok_or_else(|| CcError::BadConfig("the study needs at least one generator".into()))?;
    let (x1, x2) = compile_letters(table)?;
    if x0.len() != x1.dim() {
        return Err(CcError::BadConfig(format!(
            "base point has {} coordinates on a {}-dimensional chart",
            x0.len(),
            x1.dim()
        )));
    }
    if witness.words.len() != x0.len() {
        return Err(CcError::DegenerateFrame);
    }
    let frame_fields = compile_words(table, &witness.words)?;
    let n = x0.len();
    let cells = cfg.cells_per_axis.unwrap_or_else(|| auto_cells(n, cfg.samples));

    let mut rows = Vec::with_capacity(deltas.len());
    for &delta1 in deltas {
        let delta2 = relation.delta2(delta1);
        let spec =
            BallSpec::new(x0.to_vec(), delta1, delta2, cfg.k_max, cfg.samples, cfg.seed)?;
        let cloud = sample_ball(&spec, &x1, &x2, &cfg.flow)?;

        let a = frame_matrix(&frame_fields, witness, x0, delta1, delta2)?;
        let lu = lu_decompose(n, a).ok_or(CcError::DegenerateFrame)?;
        let det_abs = lu.det().abs();

        let mut frame_points = Vec::with_capacity(cloud.len() * n);
        let mut extent_lo = vec![f64::INFINITY; n];
        let mut extent_hi = vec![f64::NEG_INFINITY; n];
        let mut y = vec![0.0; n];
        for p in cloud.points() {
            for ((yi, pi), xi) in y.iter_mut().zip(p).zip(x0) {
                *yi = pi - xi;
            }
            lu.solve_into(&mut y);
            for ((l, h), v) in extent_lo.iter_mut().zip(extent_hi.iter_mut()).zip(&y) {
                *l = l.min(*v);
                *h = h.max(*v);
            }
            frame_points.extend_from_slice(&y);
        }
        let extent =
            extent_lo.iter().zip(&extent_hi).map(|(l, h)| h - l).fold(0.0, f64::max);
        if extent == 0.0 {
            return Err(CcError::DegenerateFrame);
        }
        let cell = extent / cells as f64;
        let grid =
            OccupancyGrid::from_points(n, cell, frame_points.chunks_exact(n))?;
        let volume = det_abs * grid.volume();
        rows.push(StudyRow { delta1, delta2, occupied: grid.occupied(), cell, volume });
    }

    let xs: Vec<f64> = rows.iter().map(|r| r.delta1.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.volume.ln()).collect();
    if ys.iter().any(|v| !v.is_finite()) {
        return Err(CcError::BadConfig("a radius produced zero volume; the fit is degenerate".into()));
    }
    let (fitted_slope, _) = fit_line(&xs, &ys);
    let w = relation.weight();
    let predicted_slope = generators
        .iter()
        .map(|g| g.degree.d1 + w * g.degree.d2)
        .min()
        .expect("generators is nonempty") as f64;

    Ok(StudyReport {
        relation,
        witness: witness.words.iter().map(|w| w.to_string()).collect(),
        rows,
        fitted_slope,
        predicted_slope,
    })
}
