//! Dense univariate polynomials over the rationals with Sturm root
//! isolation.
//!
//! Root brackets come from a Sturm chain on the square-free part, split by
//! bisection until each piece holds one distinct root, then refined by
//! sign-change bisection. All arithmetic is exact, so a bracket of width
//! 2^-levels·(hi−lo) is guaranteed, and a bisection point that lands on a
//! root is returned as an exact degenerate bracket.

use num_traits::{Signed, Zero};
use polyalg::{parse_poly, rat, Rational};

use crate::SetError;

/// Coefficients low to high with no trailing zeros; empty means zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> UniPoly {
        UniPoly::new(vec![c])
    }

    /// Parses an expression in the single variable `t`.
    pub fn parse(text: &str) -> Result<UniPoly, SetError> {
        let poly = parse_poly(text, &["t"]).map_err(|e| SetError::Parse(e.to_string()))?;
        let mut coeffs = Vec::new();
        for d in 0..=poly.degree_in(0) {
            let c = poly
                .coeff_of(0, d)
                .constant_value()
                .expect("a univariate coefficient is constant");
            coeffs.push(c);
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with constants (including zero) reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0, 1);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| rat(i as i64, 1) * c)
            .collect();
        UniPoly::new(coeffs)
    }

    /// The polynomial plus a constant shift.
    pub fn add_constant(&self, c: &Rational) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(c.clone());
        } else {
            coeffs[0] += c;
        }
        UniPoly::new(coeffs)
    }

    fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(lead) => {
                UniPoly::new(self.coeffs.iter().map(|c| c / lead).collect())
            }
        }
    }

    fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let d = div.degree();
        let lead = div.coeffs.last().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![rat(0, 1); rem.len().saturating_sub(d)];
        while rem.len() > d {
            let c = rem.last().expect("trimmed remainder") / lead;
            let k = rem.len() - 1 - d;
            for i in 0..d {
                let step = &c * &div.coeffs[i];
                rem[k + i] -= step;
            }
            rem.pop();
            quo[k] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut f = self.clone();
        let mut g = other.clone();
        while !g.is_zero() {
            let (_, r) = f.div_rem(&g);
            f = g;
            g = r.monic();
        }
        f.monic()
    }

    /// Divides out repeated factors so every real root is simple.
    pub fn square_free(&self) -> UniPoly {
        if self.degree() < 2 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        let (quo, rem) = self.div_rem(&g);
        debug_assert!(rem.is_zero(), "the gcd divides exactly");
        quo
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                return chain;
            }
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            if r.is_zero() {
                return chain;
            }
            let neg = UniPoly::new(r.coeffs.iter().map(|c| -c).collect());
            chain.push(neg.monic());
        }
    }

    fn variations(chain: &[UniPoly], x: &Rational) -> usize {
        let mut last = 0i8;
        let mut flips = 0;
        for f in chain {
            let s = sign(&f.eval(x));
            if s != 0 {
                if last != 0 && s != last {
                    flips += 1;
                }
                last = s;
            }
        }
        flips
    }

    /// Refined brackets around every distinct real root in roughly
    /// [lo, hi]; exact root endpoints are nudged outward, so a root at
    /// the window edge is still reported. Each bracket holds exactly one
    /// root of the square-free part, with a sign change across it unless
    /// the bracket is an exact degenerate hit.
    pub fn roots_in(
        &self,
        lo: &Rational,
        hi: &Rational,
        levels: u32,
    ) -> Result<Vec<(Rational, Rational)>, SetError> {
        if self.is_zero() {
            return Err(SetError::BadConfig(
                "the zero polynomial has no isolated roots".into(),
            ));
        }
        if lo >= hi {
            return Err(SetError::BadConfig("the root window must have positive length".into()));
        }
        let sf = self.square_free();
        if sf.degree() == 0 {
            return Ok(Vec::new());
        }
        let step = (hi - lo) / rat(8, 1);
        let mut a = lo.clone();
        while sf.eval(&a).is_zero() {
            a -= &step;
        }
        let mut b = hi.clone();
        while sf.eval(&b).is_zero() {
            b += &step;
        }
        let chain = sf.sturm_chain();
        let mut brackets = Vec::new();
        split(&chain, &sf, a, b, 128, &mut brackets)?;
        Ok(brackets
            .into_iter()
            .map(|bracket| refine(&sf, bracket, levels))
            .collect())
    }
}

fn split(
    chain: &[UniPoly],
    sf: &UniPoly,
    a: Rational,
    b: Rational,
    depth: u32,
    out: &mut Vec<(Rational, Rational)>,
) -> Result<(), SetError> {
    let count = UniPoly::variations(chain, &a).saturating_sub(UniPoly::variations(chain, &b));
    if count == 0 {
        return Ok(());
    }
    if count == 1 {
        out.push((a, b));
        return Ok(());
    }
    if depth == 0 {
        return Err(SetError::RootSeparation);
    }
    let mut mid = (&a + &b) / rat(2, 1);
    while sf.eval(&mid).is_zero() {
        mid = (&a + &mid) / rat(2, 1);
    }
    split(chain, sf, a, mid.clone(), depth - 1, out)?;
    split(chain, sf, mid, b, depth - 1, out)
}

fn refine(sf: &UniPoly, bracket: (Rational, Rational), levels: u32) -> (Rational, Rational) {
    let (mut a, mut b) = bracket;
    let sa = sign(&sf.eval(&a));
    if sa == 0 {
        return (a.clone(), a);
    }
    for _ in 0..levels {
        let mid = (&a + &b) / rat(2, 1);
        let s = sign(&sf.eval(&mid));
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}
