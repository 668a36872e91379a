//! The model map Φ and the Monte Carlo check of its image volume against
//! the rescaled frame determinant.

use crate::ball::split_seed;
use crate::compiled::{compile_words, CompiledField};
use crate::flow::{flow, FieldEval, FlowConfig};
use crate::numerics::det;
use crate::CcError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::cell::RefCell;
use vfcalc::{Degree, GeneratorWitness, WordTable};

/// The acceptance band for the image-volume ratio.
pub const PHI_BAND: (f64, f64) = (0.1, 10.0);

/// Controls for the Jacobian Monte Carlo volume check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiConfig {
    /// The frequency-style parameter K in the weights K⁻¹(Kδ)^{deg w}.
    pub k: f64,
    /// Smallest K the check accepts.
    pub k_min: f64,
    pub mc_samples: usize,
    /// Central finite-difference step for the Jacobian.
    pub fd_step: f64,
    pub seed: u64,
    pub flow: FlowConfig,
}

impl Default for PhiConfig {
    fn default() -> PhiConfig {
        PhiConfig {
            k: 8.0,
            k_min: 8.0,
            mc_samples: 1500,
            fd_step: 1e-5,
            seed: 11,
            flow: FlowConfig::default(),
        }
    }
}

/// Outcome of the volume check: the measured mean |det DΦ| over the box E,
/// the predicted value K⁻ⁿ|Λ(x₀)||E|, and their ratio.
#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub k: f64,
    pub delta1: f64,
    pub delta2: f64,
    /// |Λ(x₀)| = (Kδ)^{deg I} |λ_I(x₀)| for the witness tuple I.
    pub lambda_abs: f64,
    pub predicted: f64,
    pub estimate: f64,
    pub ratio: f64,
    pub in_band: bool,
    pub warnings: Vec<String>,
}

/// The frozen data Φ needs: witness fields with their degrees, the base
/// point, the radii, and K.
pub(crate) struct PhiFrame<'a> {
    fields: &'a [CompiledField],
    degrees: Vec<Degree>,
    x0: &'a [f64],
    delta1: f64,
    delta2: f64,
    k: f64,
}

/// A fixed linear combination of compiled fields.
struct FrozenCombination<'a> {
    fields: &'a [CompiledField],
    weights: Vec<f64>,
    scratch: RefCell<Vec<f64>>,
    dim: usize,
}

impl FieldEval for FrozenCombination<'_> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval_into(&self, x: &[f64], out: &mut [f64]) -> Result<(), CcError> {
        let mut scratch = self.scratch.borrow_mut();
        out.fill(0.0);
        for (field, w) in self.fields.iter().zip(&self.weights) {
            field.eval_into(x, &mut scratch)?;
            for (o, s) in out.iter_mut().zip(scratch.iter()) {
                *o += w * s;
            }
        }
        Ok(())
    }
}

impl<'a> PhiFrame<'a> {
    pub(crate) fn new(
        fields: &'a [CompiledField],
        degrees: Vec<Degree>,
        x0: &'a [f64],
        delta: (f64, f64),
        k: f64,
    ) -> Result<PhiFrame<'a>, CcError> {
        if fields.len() != degrees.len() || fields.is_empty() {
            return Err(CcError::BadConfig("each frame field needs a degree".into()));
        }
        if fields.len() != x0.len() || fields.iter().any(|f| f.dim() != x0.len()) {
            return Err(CcError::DegenerateFrame);
        }
        for (name, d) in [("delta1", delta.0), ("delta2", delta.1)] {
            if !(0.0 < d && d < 1.0) {
                return Err(CcError::BadConfig(format!(
                    "{name} must lie strictly between 0 and 1, got {d}"
                )));
            }
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(CcError::BadConfig(format!("K must be positive and finite, got {k}")));
        }
        Ok(PhiFrame { fields, degrees, x0, delta1: delta.0, delta2: delta.1, k })
    }

    fn weight(&self, j: usize, tj: f64) -> f64 {
        let d = self.degrees[j];
        tj / self.k
            * (self.k * self.delta1).powi(d.d1 as i32)
            * (self.k * self.delta2).powi(d.d2 as i32)
    }

    pub(crate) fn map(&self, t: &[f64], cfg: &FlowConfig) -> Result<Vec<f64>, CcError> {
        if t.len() != self.fields.len() {
            return Err(CcError::BadConfig(format!(
                "Φ over {} fields got {} flow coordinates",
                self.fields.len(),
                t.len()
            )));
        }
        let weights: Vec<f64> = t.iter().enumerate().map(|(j, tj)| self.weight(j, *tj)).collect();
        let combined = FrozenCombination {
            fields: self.fields,
            weights,
            scratch: RefCell::new(vec![0.0; self.x0.len()]),
            dim: self.x0.len(),
        };
        flow(&combined, self.x0, 1.0, cfg)
    }

    /// |λ_I(x₀)|: the unscaled witness-frame determinant at the base point.
    pub(crate) fn lambda_unscaled(&self) -> Result<f64, CcError> {
        let n = self.x0.len();
        let mut a = vec![0.0; n * n];
        let mut col = vec![0.0; n];
        for (j, field) in self.fields.iter().enumerate() {
            field.eval_into(self.x0, &mut col)?;
            for (r, v) in col.iter().enumerate() {
                a[r * n + j] = *v;
            }
        }
        Ok(det(n, &a).abs())
    }

    /// Π_j (Kδ₁)^{d₁(w_j)} (Kδ₂)^{d₂(w_j)}, the rescaling of λ_I.
    pub(crate) fn degree_scale(&self) -> f64 {
        self.degrees
            .iter()
            .map(|d| {
                (self.k * self.delta1).powi(d.d1 as i32)
                    * (self.k * self.delta2).powi(d.d2 as i32)
            })
            .product()
    }
}

/// Φ(t) = e^{Σ_j t_j K⁻¹ (Kδ)^{deg w_j} X_{w_j}}(x₀): one time-1 flow of a
/// frozen linear combination of the witness fields.
pub fn phi_map(
    fields: &[CompiledField],
    degrees: &[Degree],
    x0: &[f64],
    delta: (f64, f64),
    k: f64,
    t: &[f64],
    cfg: &FlowConfig,
) -> Result<Vec<f64>, CcError> {
    PhiFrame::new(fields, degrees.to_vec(), x0, delta, k)?.map(t, cfg)
}

pub(crate) struct JacobianStats {
    pub(crate) mean_abs_det: f64,
    pub(crate) min_abs_det: f64,
}

/// Mean and minimum |det DΦ| over E = [−1/K, 1/K]ⁿ, by central finite
/// differences at points drawn from per-index sub-seeds.
pub(crate) fn jacobian_stats(
    frame: &PhiFrame<'_>,
    samples: usize,
    fd_step: f64,
    seed: u64,
    cfg: &FlowConfig,
) -> Result<JacobianStats, CcError> {
    if samples == 0 {
        return Err(CcError::BadConfig("the Jacobian check needs at least one sample".into()));
    }
    let n = frame.x0.len();
    let dets: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<f64, CcError> {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, i as u64));
            let t: Vec<f64> =
                (0..n).map(|_| (2.0 * rng.gen::<f64>() - 1.0) / frame.k).collect();
            let mut jac = vec![0.0; n * n];
            let mut shifted = t.clone();
            for a in 0..n {
                shifted[a] = t[a] + fd_step;
                let plus = frame.map(&shifted, cfg)?;
                shifted[a] = t[a] - fd_step;
                let minus = frame.map(&shifted, cfg)?;
                shifted[a] = t[a];
                for (r, (p, m)) in plus.iter().zip(&minus).enumerate() {
                    jac[r * n + a] = (p - m) / (2.0 * fd_step);
                }
            }
            Ok(det(n, &jac).abs())
        })
        .collect::<Result<_, _>>()?;
    let mean = dets.iter().sum::<f64>() / dets.len() as f64;
    let min = dets.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    Ok(JacobianStats { mean_abs_det: mean, min_abs_det: min })
}

/// Check |Φ(E)| for E = [−1/K, 1/K]ⁿ against K⁻ⁿ|Λ(x₀)||E|: the image
/// volume is measured as the mean |det DΦ| over E times |E|, and the
/// report carries their ratio together with the acceptance band.
pub fn phi_volume_check(
    table: &WordTable,
    witness: &GeneratorWitness,
    x0: &[f64],
    delta: (f64, f64),
    cfg: &PhiConfig,
) -> Result<PhiReport, CcError> {
    if cfg.k < cfg.k_min {
        return Err(CcError::BadConfig(format!(
            "K = {} is below the configured minimum {}",
            cfg.k, cfg.k_min
        )));
    }
    let fields = compile_words(table, &witness.words)?;
    let degrees: Vec<Degree> = witness.words.iter().map(|w| w.degree()).collect();
    let frame = PhiFrame::new(&fields, degrees, x0, delta, cfg.k)?;

    let lambda_unscaled = frame.lambda_unscaled()?;
    if lambda_unscaled == 0.0 {
        return Err(CcError::DegenerateFrame);
    }
    let lambda_abs = frame.degree_scale() * lambda_unscaled;
    let n = x0.len();
    let volume_e = (2.0 / cfg.k).powi(n as i32);
    let predicted = cfg.k.powi(-(n as i32)) * lambda_abs * volume_e;

    let stats = jacobian_stats(&frame, cfg.mc_samples, cfg.fd_step, cfg.seed, &cfg.flow)?;
    let estimate = stats.mean_abs_det * volume_e;
    let ratio = estimate / predicted;

    let mut warnings = Vec::new();
    if stats.min_abs_det < 1e-3 * cfg.k.powi(-(n as i32)) * lambda_abs {
        warnings.push(
            "a sampled Jacobian is nearly singular; the image may fold onto itself".into(),
        );
    }
    Ok(PhiReport {
        k: cfg.k,
        delta1: delta.0,
        delta2: delta.1,
        lambda_abs,
        predicted,
        estimate,
        ratio,
        in_band: PHI_BAND.0 <= ratio && ratio <= PHI_BAND.1,
        warnings,
    })
}
