//! Lebesgue exponents with an exact point at infinity, the dual pair,
//! and the rational maps between bracket degrees, exponent points, and
//! scaling coefficients.

use num_traits::{One, Zero};
use polyalg::{rat, rat_to_string, Rational};
use vfcalc::Degree;

use crate::PolytopeError;

/// A Lebesgue exponent in [1, ∞], with ∞ kept symbolic so that 1/p = 0
/// is exact rather than a large float.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PExp {
    Finite(Rational),
    Infinity,
}

impl PExp {
    pub fn finite(value: Rational) -> Result<PExp, PolytopeError> {
        if value < Rational::one() {
            return Err(PolytopeError::ExponentOutOfRange(format!(
                "Lebesgue exponents live in [1, ∞], got {}",
                rat_to_string(&value)
            )));
        }
        Ok(PExp::Finite(value))
    }

    /// Rebuilds an exponent from its reciprocal in [0, 1]; zero maps to ∞.
    pub fn from_recip(r: &Rational) -> Result<PExp, PolytopeError> {
        if *r < Rational::zero() || *r > Rational::one() {
            return Err(PolytopeError::ExponentOutOfRange(format!(
                "reciprocal exponents live in [0, 1], got {}",
                rat_to_string(r)
            )));
        }
        if r.is_zero() {
            Ok(PExp::Infinity)
        } else {
            Ok(PExp::Finite(r.recip()))
        }
    }

    pub fn recip(&self) -> Rational {
        match self {
            PExp::Finite(v) => v.recip(),
            PExp::Infinity => Rational::zero(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            PExp::Finite(v) => rat_to_string(v),
            PExp::Infinity => "inf".to_string(),
        }
    }
}

impl std::fmt::Display for PExp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// An exponent pair (p₁, p₂) for an L^{p₁} → L^{p₂} mapping question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LebesguePair {
    pub p1: PExp,
    pub p2: PExp,
}

impl LebesguePair {
    pub fn new(p1: PExp, p2: PExp) -> LebesguePair {
        LebesguePair { p1, p2 }
    }

    pub fn from_values(p1: Rational, p2: Rational) -> Result<LebesguePair, PolytopeError> {
        Ok(LebesguePair::new(PExp::finite(p1)?, PExp::finite(p2)?))
    }

    /// The dual exponent of p₂, via 1/p₂′ = 1 − 1/p₂.
    pub fn p2_prime(&self) -> PExp {
        let r = &Rational::one() - &self.p2.recip();
        PExp::from_recip(&r).expect("the dual reciprocal stays in [0, 1]")
    }

    /// True when p₂′ ≤ p₁, where averaging bounds hold for free and the
    /// polytope test has nothing to decide.
    pub fn is_trivially_bounded(&self) -> bool {
        self.p2_prime().recip() >= self.p1.recip()
    }
}

/// Maps a bracket degree d to the exponent point
/// (d₁/(d₁+d₂−1), (d₁−1)/(d₁+d₂−1)).
pub fn map_degree_to_exponent(d: Degree) -> Result<(Rational, Rational), PolytopeError> {
    if d.total() < 2 {
        return Err(PolytopeError::DegenerateDegree { d1: d.d1, d2: d.d2 });
    }
    let denom = i64::from(d.total()) - 1;
    Ok((rat(i64::from(d.d1), denom), rat(i64::from(d.d1) - 1, denom)))
}

/// The scaling coefficients (c₁, c₂) = (1/p₁, 1/p₂) / (1/p₁ + 1/p₂ − 1)
/// tested against the degree polytope.  Errors on the trivially bounded
/// boundary 1/p₁ + 1/p₂ = 1, where the denominator vanishes.
pub fn c_from_p(pair: &LebesguePair) -> Result<(Rational, Rational), PolytopeError> {
    let u = pair.p1.recip();
    let vp = pair.p2.recip();
    let denom = &(&u + &vp) - &Rational::one();
    if denom.is_zero() {
        return Err(PolytopeError::TrivialBoundary);
    }
    Ok((&u / &denom, &vp / &denom))
}
