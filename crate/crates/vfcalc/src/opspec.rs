//! Operator descriptions and the builders that turn them into field pairs
//! with their projection maps.

use crate::chart::Chart;
use crate::field::VectorField;
use crate::VfError;
use polyalg::{det_poly, MultiPoly, Rational, RationalFn};
use num_traits::Zero;

/// One of the supported operator families.
#[derive(Clone, Debug)]
pub enum OperatorKind {
    /// Fields given directly; projection maps optional.
    RawFields { coords: Vec<String>, x1: Vec<RationalFn>, x2: Vec<RationalFn> },
    /// Averaging along t ↦ γ(t) in ℝ^{n−1}; each curve component is a
    /// polynomial in the single variable t, with γ(0) = 0 and γ′(0) ≠ 0.
    Convolution { curve: Vec<MultiPoly> },
    /// Restricted x-ray with the moment curve γ(s) = (s, …, s^{n−2}).
    XRay { ambient: usize },
    /// Family of diffeomorphisms x ↦ γ(x, t) with γ(x, 0) = x; components
    /// over (x₁, …, x_{n−1}, t) followed by the declared parameters.
    DiffeoFamily { gamma: Vec<MultiPoly> },
}

/// A full operator description: the family, symbolic parameter names, an
/// optional expansion point (origin when absent), and, for raw fields,
/// optional projection maps.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub param_names: Vec<String>,
    pub base_point: Option<Vec<Rational>>,
    pub pi1: Option<Vec<MultiPoly>>,
    pub pi2: Option<Vec<MultiPoly>>,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind) -> OperatorSpec {
        OperatorSpec { kind, param_names: Vec::new(), base_point: None, pi1: None, pi2: None }
    }

    /// Substitute rational values for all symbolic parameters, producing a
    /// parameter-free spec over the same coordinates.
    pub fn specialize(&self, values: &[Rational]) -> Result<OperatorSpec, VfError> {
        if values.len() != self.param_names.len() {
            return Err(VfError::ParamCount {
                expected: self.param_names.len(),
                got: values.len(),
            });
        }
        if values.is_empty() {
            return Ok(self.clone());
        }
        let dim = kind_dim(&self.kind);
        let full = dim + values.len();
        let arity_check = |n: usize| -> Result<(), VfError> {
            if n == full {
                Ok(())
            } else {
                Err(VfError::VariableCountMismatch { left: full, right: n })
            }
        };
        let kind = match &self.kind {
            OperatorKind::RawFields { coords, x1, x2 } => {
                for f in x1.iter().chain(x2) {
                    arity_check(f.nvars())?;
                }
                OperatorKind::RawFields {
                    coords: coords.clone(),
                    x1: specialize_ratfns(x1, dim, values, "X1")?,
                    x2: specialize_ratfns(x2, dim, values, "X2")?,
                }
            }
            OperatorKind::DiffeoFamily { gamma } => {
                for p in gamma {
                    arity_check(p.nvars())?;
                }
                OperatorKind::DiffeoFamily {
                    gamma: gamma.iter().map(|p| specialize_poly(p, dim, values)).collect(),
                }
            }
            OperatorKind::Convolution { .. } | OperatorKind::XRay { .. } => {
                return Err(VfError::InvalidSpec(
                    "convolution and x-ray specs take no symbolic parameters".into(),
                ));
            }
        };
        let map_pi = |pi: &Option<Vec<MultiPoly>>| -> Result<Option<Vec<MultiPoly>>, VfError> {
            match pi {
                None => Ok(None),
                Some(ps) => {
                    for p in ps {
                        arity_check(p.nvars())?;
                    }
                    Ok(Some(ps.iter().map(|p| specialize_poly(p, dim, values)).collect()))
                }
            }
        };
        Ok(OperatorSpec {
            pi1: map_pi(&self.pi1)?,
            pi2: map_pi(&self.pi2)?,
            kind,
            param_names: Vec::new(),
            base_point: self.base_point.clone(),
        })
    }
}

fn kind_dim(kind: &OperatorKind) -> usize {
    match kind {
        OperatorKind::RawFields { coords, .. } => coords.len(),
        OperatorKind::Convolution { curve } => curve.len() + 1,
        OperatorKind::XRay { ambient } => *ambient,
        OperatorKind::DiffeoFamily { gamma } => gamma.len() + 1,
    }
}

fn specialize_poly(p: &MultiPoly, dim: usize, values: &[Rational]) -> MultiPoly {
    let subs: Vec<MultiPoly> = (0..dim)
        .map(|i| MultiPoly::var(dim, i))
        .chain(values.iter().map(|v| MultiPoly::constant(dim, v.clone())))
        .collect();
    p.compose(&subs)
}

fn specialize_ratfns(
    fs: &[RationalFn],
    dim: usize,
    values: &[Rational],
    context: &str,
) -> Result<Vec<RationalFn>, VfError> {
    fs.iter()
        .map(|f| {
            let den = specialize_poly(f.den(), dim, values);
            if den.is_zero() {
                return Err(VfError::PoleAtPoint(format!(
                    "{context} under parameter specialization"
                )));
            }
            Ok(RationalFn::new(specialize_poly(f.num(), dim, values), den))
        })
        .collect()
}

/// Fields, projections, and chart data realized from a spec.
#[derive(Clone, Debug)]
pub struct OperatorData {
    pub chart: Chart,
    pub x1: VectorField,
    pub x2: VectorField,
    /// Projection components over the chart variables; the targets are the
    /// two sides the operator maps between.
    pub pi1: Option<Vec<MultiPoly>>,
    pub pi2: Option<Vec<MultiPoly>>,
    pub base_point: Vec<Rational>,
    /// det(D_xγ) when X₁ had to be rescaled to keep its components
    /// polynomial; reports must surface this.
    pub rescaled_by: Option<MultiPoly>,
}

/// Realizes a spec as a field pair with projections, validating the
/// invariants of its family.
pub fn spec_to_fields(spec: &OperatorSpec) -> Result<OperatorData, VfError> {
    let dim = kind_dim(&spec.kind);
    let base = match &spec.base_point {
        Some(p) => {
            if p.len() != dim {
                return Err(VfError::PointLength { expected: dim, got: p.len() });
            }
            p.clone()
        }
        None => vec![Rational::zero(); dim],
    };

    let params: Vec<&str> = spec.param_names.iter().map(|s| s.as_str()).collect();
    let mut data = match &spec.kind {
        OperatorKind::RawFields { coords, x1, x2 } => build_raw(coords, x1, x2, spec, &params)?,
        OperatorKind::Convolution { curve } => build_convolution(curve, &params)?,
        OperatorKind::XRay { ambient } => build_xray(*ambient, &params)?,
        OperatorKind::DiffeoFamily { gamma } => build_diffeo(gamma, &params, &base)?,
    };

    data.base_point = base;
    for (field, name) in [(&data.x1, "X1"), (&data.x2, "X2")] {
        let value = field.eval_coords(&data.base_point, name)?;
        if value.iter().all(|c| c.is_zero()) {
            return Err(VfError::InvalidSpec(format!("{name} vanishes at the base point")));
        }
    }
    Ok(data)
}

fn coordinate_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn build_raw(
    coords: &[String],
    x1: &[RationalFn],
    x2: &[RationalFn],
    spec: &OperatorSpec,
    params: &[&str],
) -> Result<OperatorData, VfError> {
    let coord_refs: Vec<&str> = coords.iter().map(|s| s.as_str()).collect();
    let chart = Chart::new(&coord_refs, params)?;
    let check = |comps: &[RationalFn], name: &str| -> Result<VectorField, VfError> {
        if comps.len() != chart.dim() {
            return Err(VfError::InvalidSpec(format!(
                "{name} needs {} components, got {}",
                chart.dim(),
                comps.len()
            )));
        }
        if let Some(bad) = comps.iter().find(|c| c.nvars() != chart.nvars()) {
            return Err(VfError::VariableCountMismatch {
                left: chart.nvars(),
                right: bad.nvars(),
            });
        }
        VectorField::new(comps.to_vec())
    };
    let x1 = check(x1, "X1")?;
    let x2 = check(x2, "X2")?;
    for (pi, name) in [(&spec.pi1, "pi1"), (&spec.pi2, "pi2")] {
        if let Some(ps) = pi {
            if let Some(bad) = ps.iter().find(|p| p.nvars() != chart.nvars()) {
                return Err(VfError::VariableCountMismatch {
                    left: chart.nvars(),
                    right: bad.nvars(),
                });
            }
            if ps.is_empty() {
                return Err(VfError::InvalidSpec(format!("{name} must have components")));
            }
        }
    }
    Ok(OperatorData {
        base_point: chart.origin(),
        chart,
        x1,
        x2,
        pi1: spec.pi1.clone(),
        pi2: spec.pi2.clone(),
        rescaled_by: None,
    })
}

fn build_convolution(curve: &[MultiPoly], params: &[&str]) -> Result<OperatorData, VfError> {
    if !params.is_empty() {
        return Err(VfError::InvalidSpec(
            "convolution and x-ray specs take no symbolic parameters".into(),
        ));
    }
    if curve.is_empty() {
        return Err(VfError::InvalidSpec("the curve needs at least one component".into()));
    }
    if let Some(bad) = curve.iter().find(|p| p.nvars() != 1) {
        return Err(VfError::InvalidSpec(format!(
            "curve components must be polynomials in t alone, got one in {} variables",
            bad.nvars()
        )));
    }
    let zero = [Rational::zero()];
    if curve.iter().any(|p| !p.eval_rational(&zero).is_zero()) {
        return Err(VfError::InvalidSpec("the curve must satisfy γ(0) = 0".into()));
    }
    if curve.iter().all(|p| p.partial(0).eval_rational(&zero).is_zero()) {
        return Err(VfError::InvalidSpec("the curve must satisfy γ′(0) ≠ 0".into()));
    }

    let n = curve.len() + 1;
    let mut names = coordinate_names("x", n - 1);
    names.push("t".into());
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let chart = Chart::new(&name_refs, &[])?;
    let t = MultiPoly::var(n, n - 1);
    let embed = |p: &MultiPoly| p.compose(std::slice::from_ref(&t));

    let mut x1 = vec![RationalFn::zero(n); n];
    x1[n - 1] = RationalFn::one(n);
    let mut x2 = Vec::with_capacity(n);
    for p in curve {
        x2.push(RationalFn::from_poly(-&embed(&p.partial(0))));
    }
    x2.push(RationalFn::one(n));

    let pi1: Vec<MultiPoly> = (0..n - 1).map(|i| MultiPoly::var(n, i)).collect();
    let pi2: Vec<MultiPoly> = curve
        .iter()
        .enumerate()
        .map(|(i, p)| &MultiPoly::var(n, i) + &embed(p))
        .collect();

    Ok(OperatorData {
        base_point: chart.origin(),
        chart,
        x1: VectorField::new(x1)?,
        x2: VectorField::new(x2)?,
        pi1: Some(pi1),
        pi2: Some(pi2),
        rescaled_by: None,
    })
}

fn build_xray(ambient: usize, params: &[&str]) -> Result<OperatorData, VfError> {
    if !params.is_empty() {
        return Err(VfError::InvalidSpec(
            "convolution and x-ray specs take no symbolic parameters".into(),
        ));
    }
    if ambient < 3 {
        return Err(VfError::InvalidSpec(
            "the x-ray family needs ambient dimension at least 3".into(),
        ));
    }
    let n = ambient;
    let mut names = coordinate_names("x", n - 2);
    names.push("t".into());
    names.push("s".into());
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let chart = Chart::new(&name_refs, &[])?;
    let (t_idx, s_idx) = (n - 2, n - 1);
    let mono = |coeff: i64, t_exp: u32, s_exp: u32| {
        let mut exps = vec![0u32; n];
        exps[t_idx] = t_exp;
        exps[s_idx] = s_exp;
        MultiPoly::monomial(n, exps, Rational::from_integer(coeff.into()))
    };

    // X₁ = ∂_s − t γ′(s)·∇_x with γ_j(s) = s^j
    let mut x1 = Vec::with_capacity(n);
    for j in 1..=(n - 2) as u32 {
        x1.push(RationalFn::from_poly(mono(-(j as i64), 1, j - 1)));
    }
    x1.push(RationalFn::zero(n));
    x1.push(RationalFn::one(n));
    let mut x2 = vec![RationalFn::zero(n); n];
    x2[t_idx] = RationalFn::one(n);

    let mut pi1: Vec<MultiPoly> = (0..n - 2)
        .map(|i| &MultiPoly::var(n, i) + &mono(1, 1, i as u32 + 1))
        .collect();
    pi1.push(MultiPoly::var(n, t_idx));
    let mut pi2: Vec<MultiPoly> = (0..n - 2).map(|i| MultiPoly::var(n, i)).collect();
    pi2.push(MultiPoly::var(n, s_idx));

    Ok(OperatorData {
        base_point: chart.origin(),
        chart,
        x1: VectorField::new(x1)?,
        x2: VectorField::new(x2)?,
        pi1: Some(pi1),
        pi2: Some(pi2),
        rescaled_by: None,
    })
}

/// The spatial Jacobian, its determinant, and the cleared numerator of W.
type DiffeoParts = (Vec<Vec<MultiPoly>>, MultiPoly, Vec<MultiPoly>);

/// D_xγ, det(D_xγ), and the cleared numerator of W for a family, after
/// validating γ(x, 0) ≡ x. The numerator satisfies D_xγ·w = −det·∂_tγ.
fn diffeo_parts(gamma: &[MultiPoly]) -> Result<DiffeoParts, VfError> {
    if gamma.is_empty() {
        return Err(VfError::InvalidSpec("the family needs at least one component".into()));
    }
    let n = gamma.len() + 1;
    let nvars = gamma[0].nvars();
    if nvars < n {
        return Err(VfError::InvalidSpec(format!(
            "family components must range over {} coordinates plus parameters, got {} variables",
            n, nvars
        )));
    }
    if let Some(bad) = gamma.iter().find(|p| p.nvars() != nvars) {
        return Err(VfError::VariableCountMismatch { left: nvars, right: bad.nvars() });
    }
    let t_idx = n - 1;
    let mut at_t0: Vec<Option<Rational>> = vec![None; nvars];
    at_t0[t_idx] = Some(Rational::zero());
    for (i, p) in gamma.iter().enumerate() {
        if p.eval_partial(&at_t0) != MultiPoly::var(nvars, i) {
            return Err(VfError::InvalidSpec(
                "the family must restrict to the identity at t = 0".into(),
            ));
        }
    }

    let jac: Vec<Vec<MultiPoly>> = gamma
        .iter()
        .map(|p| (0..n - 1).map(|j| p.partial(j)).collect())
        .collect();
    let det = det_poly(&jac).expect("square Jacobian");
    let adj = adjugate(&jac, nvars);
    let w_num: Vec<MultiPoly> = (0..n - 1)
        .map(|i| {
            let mut acc = MultiPoly::zero(nvars);
            for (j, g) in gamma.iter().enumerate() {
                acc = &acc - &(&adj[i][j] * &g.partial(t_idx));
            }
            acc
        })
        .collect();
    Ok((jac, det, w_num))
}

fn adjugate(m: &[Vec<MultiPoly>], nvars: usize) -> Vec<Vec<MultiPoly>> {
    let k = m.len();
    if k == 1 {
        return vec![vec![MultiPoly::one(nvars)]];
    }
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    // entry (i, j) is the (j, i) cofactor
                    let minor: Vec<Vec<MultiPoly>> = (0..k)
                        .filter(|&r| r != j)
                        .map(|r| {
                            (0..k).filter(|&c| c != i).map(|c| m[r][c].clone()).collect()
                        })
                        .collect();
                    let d = det_poly(&minor).expect("square minor");
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -&d
                    }
                })
                .collect()
        })
        .collect()
}

/// Solves D_xγ · W = −∂_tγ exactly; the coefficient vector of X₁ before
/// any rescaling.
pub fn diffeo_w(gamma: &[MultiPoly]) -> Result<Vec<RationalFn>, VfError> {
    let (_, det, w_num) = diffeo_parts(gamma)?;
    if det.is_zero() {
        return Err(VfError::InvalidSpec(
            "the family Jacobian det(D_xγ) vanishes identically".into(),
        ));
    }
    Ok(w_num.into_iter().map(|p| RationalFn::new(p, det.clone())).collect())
}

fn build_diffeo(
    gamma: &[MultiPoly],
    params: &[&str],
    base: &[Rational],
) -> Result<OperatorData, VfError> {
    let (_, det, w_num) = diffeo_parts(gamma)?;
    let n = gamma.len() + 1;
    let nvars = gamma[0].nvars();
    if nvars != n + params.len() {
        return Err(VfError::InvalidSpec(format!(
            "family components must range over {} coordinates plus {} parameters, got {} variables",
            n,
            params.len(),
            nvars
        )));
    }
    let mut names = coordinate_names("x", n - 1);
    names.push("t".into());
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let chart = Chart::new(&name_refs, params)?;

    // a parametric determinant passes as long as it is not identically
    // zero once the base coordinates are substituted
    let at_base = chart.coord_assignment(base)?;
    if det.eval_partial(&at_base).is_zero() {
        return Err(VfError::InvalidSpec(
            "det(D_xγ) vanishes at the base point; not a local diffeomorphism family".into(),
        ));
    }

    let one = MultiPoly::one(nvars);
    let (x1, rescaled_by) = if det == one {
        let mut comps: Vec<RationalFn> =
            w_num.iter().map(|p| RationalFn::from_poly(p.clone())).collect();
        comps.push(RationalFn::one(nvars));
        (comps, None)
    } else {
        // clearing the denominator multiplies X₁ by the nonvanishing
        // scalar det(D_xγ); callers surface this in reports
        let mut comps: Vec<RationalFn> =
            w_num.iter().map(|p| RationalFn::from_poly(p.clone())).collect();
        comps.push(RationalFn::from_poly(det.clone()));
        (comps, Some(det))
    };
    let mut x2 = vec![RationalFn::zero(nvars); n];
    x2[n - 1] = RationalFn::one(nvars);

    let pi2: Vec<MultiPoly> = (0..n - 1).map(|i| MultiPoly::var(nvars, i)).collect();
    Ok(OperatorData {
        base_point: chart.origin(),
        chart,
        x1: VectorField::new(x1)?,
        x2: VectorField::new(x2)?,
        pi1: Some(gamma.to_vec()),
        pi2: Some(pi2),
        rescaled_by,
    })
}
