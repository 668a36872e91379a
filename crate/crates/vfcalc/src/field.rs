//! Vector fields with rational-function components and the Lie bracket.

use crate::VfError;
use polyalg::{Rational, RationalFn};
use std::ops::{Add, Neg, Sub};

/// Field Σᵢ fᵢ ∂ᵢ over the first `dim` variables of a chart. Components
/// may involve trailing parameter variables, which are carried along as
/// symbolic constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<RationalFn>,
}

impl VectorField {
    pub fn new(components: Vec<RationalFn>) -> Result<VectorField, VfError> {
        if components.is_empty() {
            return Err(VfError::EmptyField);
        }
        let nvars = components[0].nvars();
        if let Some(bad) = components.iter().find(|c| c.nvars() != nvars) {
            return Err(VfError::VariableCountMismatch { left: nvars, right: bad.nvars() });
        }
        if components.len() > nvars {
            return Err(VfError::TooManyComponents { components: components.len(), nvars });
        }
        Ok(VectorField { components })
    }

    pub fn zero(dim: usize, nvars: usize) -> VectorField {
        assert!(dim >= 1 && dim <= nvars, "invalid field shape");
        VectorField { components: vec![RationalFn::zero(nvars); dim] }
    }

    /// The unit field ∂ᵢ.
    pub fn coordinate_axis(dim: usize, nvars: usize, i: usize) -> VectorField {
        assert!(i < dim, "axis index out of range");
        let mut f = VectorField::zero(dim, nvars);
        f.components[i] = RationalFn::one(nvars);
        f
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn components(&self) -> &[RationalFn] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Component values with the coordinates fixed at `point`; parameters
    /// stay symbolic. `context` names the field in error messages.
    pub fn eval_coords(
        &self,
        point: &[Rational],
        context: &str,
    ) -> Result<Vec<RationalFn>, VfError> {
        if point.len() != self.dim() {
            return Err(VfError::PointLength { expected: self.dim(), got: point.len() });
        }
        let mut assignment: Vec<Option<Rational>> = point.iter().cloned().map(Some).collect();
        assignment.resize(self.nvars(), None);
        self.components
            .iter()
            .map(|c| {
                c.eval_partial(&assignment)
                    .ok_or_else(|| VfError::PoleAtPoint(context.to_string()))
            })
            .collect()
    }

    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({}) d/d{}", c.render(names), names[i]))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// ([X,Y])ᵢ = Σⱼ Xⱼ ∂ⱼYᵢ − Yⱼ ∂ⱼXᵢ, the sum running over coordinates.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, VfError> {
    if x.dim() != y.dim() {
        return Err(VfError::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    if x.nvars() != y.nvars() {
        return Err(VfError::VariableCountMismatch { left: x.nvars(), right: y.nvars() });
    }
    let (dim, nvars) = (x.dim(), x.nvars());
    let mut out = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut acc = RationalFn::zero(nvars);
        for j in 0..dim {
            if !x.components[j].is_zero() {
                acc = &acc + &(&x.components[j] * &y.components[i].partial(j));
            }
            if !y.components[j].is_zero() {
                acc = &acc - &(&y.components[j] * &x.components[i].partial(j));
            }
        }
        out.push(acc);
    }
    VectorField::new(out)
}

impl Add for &VectorField {
    type Output = VectorField;

    fn add(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dim(), rhs.dim(), "field dimensions disagree");
        let components = self
            .components
            .iter()
            .zip(&rhs.components)
            .map(|(a, b)| a + b)
            .collect();
        VectorField { components }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;

    fn sub(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dim(), rhs.dim(), "field dimensions disagree");
        let components = self
            .components
            .iter()
            .zip(&rhs.components)
            .map(|(a, b)| a - b)
            .collect();
        VectorField { components }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;

    fn neg(self) -> VectorField {
        VectorField { components: self.components.iter().map(|c| -c).collect() }
    }
}
