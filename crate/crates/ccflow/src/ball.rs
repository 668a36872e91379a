//! Sub-Riemannian ball sampling by alternating horizontal legs.

use crate::compiled::CompiledField;
use crate::flow::{flow, FlowConfig};
use crate::CcError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Which ball to sample: the center, the two leg radii, the largest leg
/// count, how many samples to draw, and the master seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallSpec {
    pub base: Vec<f64>,
    pub delta1: f64,
    pub delta2: f64,
    pub k_max: u32,
    pub samples: usize,
    pub seed: u64,
}

impl BallSpec {
    /// Radii live in [0, 1); zero radii degenerate the ball to its center.
    pub fn new(
        base: Vec<f64>,
        delta1: f64,
        delta2: f64,
        k_max: u32,
        samples: usize,
        seed: u64,
    ) -> Result<BallSpec, CcError> {
        for (name, d) in [("delta1", delta1), ("delta2", delta2)] {
            if !(0.0..1.0).contains(&d) {
                return Err(CcError::BadConfig(format!("{name} must lie in [0, 1), got {d}")));
            }
        }
        if k_max < 2 {
            return Err(CcError::BadConfig(format!("k_max must be at least 2, got {k_max}")));
        }
        if samples == 0 {
            return Err(CcError::BadConfig("samples must be positive".into()));
        }
        if base.iter().any(|v| !v.is_finite()) {
            return Err(CcError::BadConfig("the center must have finite coordinates".into()));
        }
        Ok(BallSpec { base, delta1, delta2, k_max, samples, seed })
    }
}

/// Sampled points stored flat, together with the spec that generated them.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    data: Vec<f64>,
    spec: Option<BallSpec>,
}

impl PointCloud {
    /// Wrap externally generated points; `data` holds them consecutively.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<PointCloud, CcError> {
        if dim == 0 || !data.len().is_multiple_of(dim) {
            return Err(CcError::BadConfig(format!(
                "{} coordinates do not tile points of dimension {dim}",
                data.len()
            )));
        }
        Ok(PointCloud { dim, data, spec: None })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// The generating ball spec, when the cloud came from `sample_ball`.
    pub fn spec(&self) -> Option<&BallSpec> {
        self.spec.as_ref()
    }
}

/// Sub-seed for one indexed draw: a splitmix64 scramble of the master seed
/// advanced by the index, so every worker layout sees the same streams.
pub fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn one_sample(
    spec: &BallSpec,
    x1: &CompiledField,
    x2: &CompiledField,
    cfg: &FlowConfig,
    index: u64,
) -> Option<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(spec.seed, index));
    let k = rng.gen_range(2..=spec.k_max) as usize;
    // k + 1 exponentials, normalized: the leg magnitudes are then uniform
    // over the simplex |t₁| + ... + |t_k| ≤ 1
    let mags: Vec<f64> = (0..=k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = mags.iter().sum();
    let mut y = spec.base.clone();
    for (j, mag) in mags.iter().take(k).enumerate() {
        let t = if rng.gen_bool(0.5) { mag / total } else { -mag / total };
        let (field, delta) =
            if j % 2 == 0 { (x1, spec.delta1) } else { (x2, spec.delta2) };
        y = flow(field, &y, t * delta, cfg).ok()?;
    }
    Some(y)
}

/// Draw points of B(x₀; δ₁, δ₂): each sample flows the center through k
/// alternating legs e^{t₁δ₁X₁}, e^{t₂δ₂X₂}, e^{t₃δ₁X₁}, ... with k uniform
/// in {2, ..., k_max} and (t₁, ..., t_k) uniform over the unit ℓ¹ ball.
/// Samples whose flow fails are dropped; a drop rate above one percent
/// aborts the draw.
pub fn sample_ball(
    spec: &BallSpec,
    x1: &CompiledField,
    x2: &CompiledField,
    cfg: &FlowConfig,
) -> Result<PointCloud, CcError> {
    let dim = x1.dim();
    if x2.dim() != dim || spec.base.len() != dim {
        return Err(CcError::BadConfig(format!(
            "fields over {} and {} variables with a {}-coordinate center do not share a chart",
            x1.dim(),
            x2.dim(),
            spec.base.len()
        )));
    }
    let rows: Vec<Option<Vec<f64>>> = (0..spec.samples)
        .into_par_iter()
        .map(|i| one_sample(spec, x1, x2, cfg, i as u64))
        .collect();
    let dropped = rows.iter().filter(|r| r.is_none()).count();
    if dropped * 100 > spec.samples {
        return Err(CcError::ExcessiveDrops { dropped, total: spec.samples });
    }
    let mut data = Vec::with_capacity((spec.samples - dropped) * dim);
    for row in rows.into_iter().flatten() {
        data.extend(row);
    }
    Ok(PointCloud { dim, data, spec: Some(spec.clone()) })
}
