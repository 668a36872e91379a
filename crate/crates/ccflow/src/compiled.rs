//! Symbolic fields and maps lowered to flat f64 evaluators for the
//! integrator hot loop.

use crate::CcError;
use polyalg::{rat_to_f64, MultiPoly, RationalFn};
use vfcalc::{VectorField, Word, WordTable};

/// How small a denominator may get before evaluation is refused.
const DEN_FLOOR: f64 = 1e-12;

/// One polynomial as f64 coefficients with packed exponent rows.
#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(f64, Vec<u32>)>,
}

impl CompiledPoly {
    fn new(p: &MultiPoly) -> CompiledPoly {
        CompiledPoly { terms: p.terms().map(|(e, c)| (rat_to_f64(c), e.clone())).collect() }
    }

    fn scaled(p: &MultiPoly, factor: f64) -> CompiledPoly {
        let mut out = CompiledPoly::new(p);
        for (c, _) in &mut out.terms {
            *c *= factor;
        }
        out
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (coeff, exps) in &self.terms {
            let mut m = *coeff;
            for (xi, &k) in x.iter().zip(exps) {
                if k > 0 {
                    m *= xi.powi(k as i32);
                }
            }
            acc += m;
        }
        acc
    }
}

/// A rational component; constant denominators are folded into the
/// numerator so the common polynomial case needs no division.
#[derive(Clone, Debug)]
struct CompiledRatFn {
    num: CompiledPoly,
    den: Option<CompiledPoly>,
}

impl CompiledRatFn {
    fn new(f: &RationalFn) -> CompiledRatFn {
        let den = f.den();
        if den.terms().all(|(e, _)| e.iter().all(|&k| k == 0)) {
            let c = den.terms().next().map(|(_, c)| rat_to_f64(c)).unwrap_or(1.0);
            CompiledRatFn { num: CompiledPoly::scaled(f.num(), 1.0 / c), den: None }
        } else {
            CompiledRatFn { num: CompiledPoly::new(f.num()), den: Some(CompiledPoly::new(den)) }
        }
    }

    fn eval(&self, x: &[f64]) -> Result<f64, CcError> {
        let n = self.num.eval(x);
        match &self.den {
            None => Ok(n),
            Some(d) => {
                let dv = d.eval(x);
                if dv.abs() < DEN_FLOOR {
                    Err(CcError::VanishingDenominator)
                } else {
                    Ok(n / dv)
                }
            }
        }
    }
}

/// A vector field ready for f64 evaluation over its own chart.
#[derive(Clone, Debug)]
pub struct CompiledField {
    comps: Vec<CompiledRatFn>,
    dim: usize,
}

impl CompiledField {
    /// Lower a symbolic field; it must be parameter-free so that chart
    /// points are complete evaluation points.
    pub fn compile(field: &VectorField) -> Result<CompiledField, CcError> {
        if field.nvars() != field.dim() {
            return Err(CcError::SymbolicParameters {
                nvars: field.nvars(),
                dim: field.dim(),
            });
        }
        Ok(CompiledField {
            comps: field.components().iter().map(CompiledRatFn::new).collect(),
            dim: field.dim(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn eval_components(&self, x: &[f64], out: &mut [f64]) -> Result<(), CcError> {
        for (slot, comp) in out.iter_mut().zip(&self.comps) {
            *slot = comp.eval(x)?;
        }
        Ok(())
    }
}

/// A polynomial map between charts, such as a projection, lowered to f64.
#[derive(Clone, Debug)]
pub struct CompiledMap {
    comps: Vec<CompiledPoly>,
    nvars: usize,
}

impl CompiledMap {
    pub fn compile(components: &[MultiPoly]) -> Result<CompiledMap, CcError> {
        let nvars = match components.first() {
            Some(p) => p.nvars(),
            None => return Err(CcError::BadConfig("a map needs at least one component".into())),
        };
        if components.iter().any(|p| p.nvars() != nvars) {
            return Err(CcError::BadConfig("map components disagree on variable count".into()));
        }
        Ok(CompiledMap { comps: components.iter().map(CompiledPoly::new).collect(), nvars })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn out_dim(&self) -> usize {
        self.comps.len()
    }

    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        for (slot, comp) in out.iter_mut().zip(&self.comps) {
            *slot = comp.eval(x);
        }
    }
}

/// Compile the table entries for the given words, in order.
pub(crate) fn compile_words(table: &WordTable, words: &[Word]) -> Result<Vec<CompiledField>, CcError> {
    words
        .iter()
        .map(|w| {
            let field = table
                .get(w)
                .ok_or_else(|| CcError::BadConfig(format!("word {w} is missing from the table")))?;
            CompiledField::compile(field)
        })
        .collect()
}

/// Compile the two letter fields X₁ and X₂ from a table.
pub(crate) fn compile_letters(table: &WordTable) -> Result<(CompiledField, CompiledField), CcError> {
    let words = [Word::parse("1")?, Word::parse("2")?];
    let mut pair = compile_words(table, &words)?;
    let x2 = pair.pop().expect("two words were compiled");
    let x1 = pair.pop().expect("two words were compiled");
    Ok((x1, x2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyalg::rat;

    #[test]
    fn constant_denominators_fold_away() {
        let half =
            RationalFn::new(MultiPoly::var(1, 0), MultiPoly::constant(1, rat(2, 1)));
        let c = CompiledRatFn::new(&half);
        assert!(c.den.is_none());
        assert_eq!(c.eval(&[3.0]).unwrap(), 1.5);
    }

    #[test]
    fn vanishing_denominator_is_refused() {
        let inv = RationalFn::var(1, 0).recip();
        let c = CompiledRatFn::new(&inv);
        assert_eq!(c.eval(&[2.0]).unwrap(), 0.5);
        assert!(matches!(c.eval(&[0.0]), Err(CcError::VanishingDenominator)));
    }

    #[test]
    fn parametric_fields_are_rejected() {
        let field =
            VectorField::new(vec![RationalFn::var(3, 0), RationalFn::var(3, 2)]).unwrap();
        assert!(matches!(
            CompiledField::compile(&field),
            Err(CcError::SymbolicParameters { nvars: 3, dim: 2 })
        ));
    }

    #[test]
    fn maps_evaluate_componentwise() {
        let m = CompiledMap::compile(&[
            MultiPoly::var(2, 0),
            &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1),
        ])
        .unwrap();
        let mut out = [0.0; 2];
        m.eval_into(&[2.0, 5.0], &mut out);
        assert_eq!(out, [2.0, 10.0]);
    }
}
