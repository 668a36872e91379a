//! Fixed-step fourth-order integration of the fields and the finite
//! commutator defect.

use crate::compiled::CompiledField;
use crate::CcError;
use serde::Serialize;

/// Anything the integrator can evaluate as a velocity field.
pub trait FieldEval {
    fn dim(&self) -> usize;
    fn eval_into(&self, x: &[f64], out: &mut [f64]) -> Result<(), CcError>;
}

impl FieldEval for CompiledField {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn eval_into(&self, x: &[f64], out: &mut [f64]) -> Result<(), CcError> {
        self.eval_components(x, out)
    }
}

/// Integrator controls: the step size, a hard cap on step counts, and a
/// divergence guard on the largest coordinate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowConfig {
    pub step: f64,
    pub max_steps: usize,
    pub guard_radius: f64,
}

impl FlowConfig {
    pub fn new(step: f64, max_steps: usize, guard_radius: f64) -> Result<FlowConfig, CcError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(CcError::BadConfig(format!("step must be positive and finite, got {step}")));
        }
        if max_steps == 0 {
            return Err(CcError::BadConfig("max_steps must be at least 1".into()));
        }
        if !(guard_radius > 0.0 && guard_radius.is_finite()) {
            return Err(CcError::BadConfig(format!(
                "guard_radius must be positive and finite, got {guard_radius}"
            )));
        }
        Ok(FlowConfig { step, max_steps, guard_radius })
    }
}

impl Default for FlowConfig {
    fn default() -> FlowConfig {
        FlowConfig { step: 1e-3, max_steps: 4_000_000, guard_radius: 1e3 }
    }
}

struct RkScratch {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    stage: Vec<f64>,
}

impl RkScratch {
    fn new(n: usize) -> RkScratch {
        RkScratch {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            stage: vec![0.0; n],
        }
    }
}

fn rk4_step<F: FieldEval>(
    field: &F,
    y: &mut [f64],
    dt: f64,
    s: &mut RkScratch,
) -> Result<(), CcError> {
    field.eval_into(y, &mut s.k1)?;
    for ((t, yi), ki) in s.stage.iter_mut().zip(y.iter()).zip(&s.k1) {
        *t = yi + 0.5 * dt * ki;
    }
    field.eval_into(&s.stage, &mut s.k2)?;
    for ((t, yi), ki) in s.stage.iter_mut().zip(y.iter()).zip(&s.k2) {
        *t = yi + 0.5 * dt * ki;
    }
    field.eval_into(&s.stage, &mut s.k3)?;
    for ((t, yi), ki) in s.stage.iter_mut().zip(y.iter()).zip(&s.k3) {
        *t = yi + dt * ki;
    }
    field.eval_into(&s.stage, &mut s.k4)?;
    for ((((yi, a), b), c), d) in
        y.iter_mut().zip(&s.k1).zip(&s.k2).zip(&s.k3).zip(&s.k4)
    {
        *yi += dt / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    }
    Ok(())
}

/// Flow `x` along `field` for `time` with classical RK4 at the configured
/// step, erroring if the trajectory leaves the guard radius.
pub fn flow<F: FieldEval>(
    field: &F,
    x: &[f64],
    time: f64,
    cfg: &FlowConfig,
) -> Result<Vec<f64>, CcError> {
    if x.len() != field.dim() {
        return Err(CcError::BadConfig(format!(
            "point has {} coordinates for a field over {} variables",
            x.len(),
            field.dim()
        )));
    }
    if !time.is_finite() {
        return Err(CcError::BadConfig(format!("flow time must be finite, got {time}")));
    }
    let steps = ((time.abs() / cfg.step).ceil() as usize).max(1);
    if steps > cfg.max_steps {
        return Err(CcError::StepBudget { needed: steps, max: cfg.max_steps });
    }
    let dt = time / steps as f64;
    let mut y = x.to_vec();
    let mut scratch = RkScratch::new(y.len());
    for _ in 0..steps {
        rk4_step(field, &mut y, dt, &mut scratch)?;
        if y.iter().any(|v| !v.is_finite() || v.abs() > cfg.guard_radius) {
            return Err(CcError::FlowDiverged { radius: cfg.guard_radius });
        }
    }
    Ok(y)
}

/// The finite commutator of the two flows at scale (t₁, t₂), normalized by
/// t₁t₂. The four legs are applied to `x` left to right:
/// e^{−t₁X₁}, e^{−t₂X₂}, e^{t₁X₁}, e^{t₂X₂}. As both times shrink this
/// converges to the bracket field [X₁, X₂] at `x`.
pub fn commutator_defect(
    x1: &CompiledField,
    x2: &CompiledField,
    x: &[f64],
    t1: f64,
    t2: f64,
    cfg: &FlowConfig,
) -> Result<Vec<f64>, CcError> {
    if t1 == 0.0 || t2 == 0.0 {
        return Err(CcError::BadConfig("commutator times must be nonzero".into()));
    }
    let y = flow(x1, x, -t1, cfg)?;
    let y = flow(x2, &y, -t2, cfg)?;
    let y = flow(x1, &y, t1, cfg)?;
    let y = flow(x2, &y, t2, cfg)?;
    Ok(y.iter().zip(x).map(|(a, b)| (a - b) / (t1 * t2)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyalg::RationalFn;
    use vfcalc::VectorField;

    fn constant_one() -> CompiledField {
        CompiledField::compile(&VectorField::new(vec![RationalFn::one(1)]).unwrap()).unwrap()
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(FlowConfig::new(0.0, 10, 1.0).is_err());
        assert!(FlowConfig::new(1e-3, 0, 1.0).is_err());
        assert!(FlowConfig::new(1e-3, 10, f64::INFINITY).is_err());
        assert!(FlowConfig::new(1e-3, 10, 1.0).is_ok());
    }

    #[test]
    fn unit_field_translates() {
        let cfg = FlowConfig::default();
        let y = flow(&constant_one(), &[0.0], 1.0, &cfg).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-12);
        let back = flow(&constant_one(), &y, -1.0, &cfg).unwrap();
        assert!(back[0].abs() < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        let cfg = FlowConfig::default();
        let y = flow(&constant_one(), &[0.25], 0.0, &cfg).unwrap();
        assert_eq!(y, vec![0.25]);
    }

    #[test]
    fn step_budget_is_enforced() {
        let cfg = FlowConfig::new(1e-3, 5, 1e3).unwrap();
        assert!(matches!(
            flow(&constant_one(), &[0.0], 1.0, &cfg),
            Err(CcError::StepBudget { needed: 1000, max: 5 })
        ));
    }

    #[test]
    fn guard_radius_trips() {
        let cfg = FlowConfig::new(1e-3, 4_000_000, 2.0).unwrap();
        assert!(matches!(
            flow(&constant_one(), &[0.0], 5.0, &cfg),
            Err(CcError::FlowDiverged { .. })
        ));
    }

    #[test]
    fn commutator_times_must_be_nonzero() {
        let f = constant_one();
        let cfg = FlowConfig::default();
        assert!(commutator_defect(&f, &f, &[0.0], 0.0, 1e-3, &cfg).is_err());
    }
}
