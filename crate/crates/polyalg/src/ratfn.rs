//! Rational functions as reduced fractions of `MultiPoly`.
//!
//! Every value satisfies three invariants: the denominator is nonzero, the
//! fraction is in lowest terms, and the denominator is integer-primitive
//! with a positive lex-leading coefficient. That makes equality structural
//! and representations reproducible across runs.

use crate::multipoly::MultiPoly;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    /// Builds `num / den` in canonical form. Panics when `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFn { den: MultiPoly::one(num.nvars()), num };
        }
        let g = num.gcd(&den);
        let mut num = num.divide_exact(&g).expect("gcd divides numerator");
        let mut den = den.divide_exact(&g).expect("gcd divides denominator");
        if let Some(u) = den.primitive_unit() {
            let s = u.recip();
            den = den.scale(&s);
            num = num.scale(&s);
        }
        RationalFn { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.nvars());
        RationalFn { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFn::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RationalFn::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RationalFn::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RationalFn::from_poly(MultiPoly::var(nvars, i))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant one.
    pub fn is_polynomial(&self) -> bool {
        self.den.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    /// Quotient-rule derivative in variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let n = &(&self.num.partial(var) * &self.den) - &(&self.num * &self.den.partial(var));
        let d = &self.den * &self.den;
        RationalFn::new(n, d)
    }

    /// Exact value, `None` where the denominator vanishes.
    pub fn eval_rational(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval_rational(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(point) / d)
    }

    /// Floating-point value; follows IEEE semantics at denominator zeros.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Substitute the `Some` variables, leaving the rest symbolic. `None`
    /// when the denominator vanishes identically under the substitution.
    pub fn eval_partial(&self, point: &[Option<Rational>]) -> Option<Self> {
        let d = self.den.eval_partial(point);
        if d.is_zero() {
            return None;
        }
        Some(RationalFn::new(self.num.eval_partial(point), d))
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.is_polynomial() {
            self.num.render(names)
        } else {
            format!("({}) / ({})", self.num.render(names), self.den.render(names))
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFn::new(n, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        let n = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFn::new(n, &self.den * &rhs.den)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}
