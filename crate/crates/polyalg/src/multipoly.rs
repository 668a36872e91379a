//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponent vectors are the map keys, so iteration order is lexicographic;
//! the last entry is the lex-leading term. Zero coefficients are never
//! stored, which makes structural equality polynomial equality.

use crate::rational::{rat_to_string, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rational::one())
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} vars");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
        let mut p = MultiPoly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Lex-leading `(exponents, coefficient)`; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Value of a constant polynomial, `None` when a variable appears.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        assert!(var < self.nvars);
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        assert!(var < self.nvars);
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Coefficient of `x_var^d`, as a polynomial with that exponent zeroed.
    pub fn coeff_of(&self, var: usize, d: u32) -> MultiPoly {
        assert!(var < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == d {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> MultiPoly {
        assert!(var < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * Rational::from(BigInt::from(e[var])));
        }
        out
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = crate::rational::rat_to_f64(c);
            for (i, &k) in e.iter().enumerate() {
                term *= point[i].powi(k as i32);
            }
            acc += term;
        }
        acc
    }

    /// Substitutes values for a subset of the variables; the remaining
    /// variables stay symbolic and keep their indices.
    pub fn eval_partial(&self, values: &[Option<Rational>]) -> MultiPoly {
        assert_eq!(values.len(), self.nvars, "substitution length mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e2 = e.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(val) = v {
                    for _ in 0..e[i] {
                        coeff *= val;
                    }
                    e2[i] = 0;
                }
            }
            out.add_term(e2, coeff);
        }
        out
    }

    /// Substitutes a polynomial for every variable. All entries of `subs`
    /// must share a variable count, which becomes the result's.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "substitution list length mismatch");
        let m = subs.first().map(|p| p.nvars).unwrap_or(0);
        assert!(subs.iter().all(|p| p.nvars == m), "mixed variable counts");
        let mut acc = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &subs[i].pow(k);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Exact quotient `self / rhs`, or `None` when `rhs` does not divide.
    pub fn divide_exact(&self, rhs: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let (lm_g, lc_g) = rhs.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading() {
            if !lm_r.iter().zip(lm_g).all(|(a, b)| a >= b) {
                return None;
            }
            let m: Vec<u32> = lm_r.iter().zip(lm_g).map(|(a, b)| a - b).collect();
            let c = lc_r / lc_g;
            let t = MultiPoly::monomial(self.nvars, m, c);
            rem = &rem - &(&t * rhs);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Integer-primitive rescaling: the result has coprime integer
    /// coefficients and a positive lex-leading coefficient. Returns the
    /// zero polynomial unchanged.
    pub fn normalized_primitive(&self) -> MultiPoly {
        match self.primitive_unit() {
            Some(u) => self.scale(&u.recip()),
            None => self.clone(),
        }
    }

    /// The rational `u` with `self = u * normalized_primitive(self)`.
    pub(crate) fn primitive_unit(&self) -> Option<Rational> {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return None;
        }
        let mut u = Rational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            u = -u;
        }
        Some(u)
    }

    /// Greatest common divisor, normalized to be integer-primitive with a
    /// positive lex-leading coefficient. Constants have gcd one.
    pub fn gcd(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        gcd_inner(self, rhs).normalized_primitive()
    }

    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars, "name list length mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            let abs = c.abs();
            let lead_sign = if out.is_empty() {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            out.push_str(lead_sign);
            if factors.is_empty() {
                out.push_str(&rat_to_string(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&rat_to_string(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Unnormalized gcd; callers normalize once at the top.
fn gcd_inner(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let nvars = f.nvars;

    // cheap exits before the pseudo-remainder sequence: single-term gcds
    // are componentwise minima, and divisibility decides the answer outright
    if f.num_terms() == 1 || g.num_terms() == 1 {
        let mut e = vec![u32::MAX; nvars];
        for t in f.terms.keys().chain(g.terms.keys()) {
            for (a, b) in e.iter_mut().zip(t) {
                *a = (*a).min(*b);
            }
        }
        return MultiPoly::monomial(nvars, e, Rational::one());
    }
    if g.divide_exact(f).is_some() {
        return f.clone();
    }
    if f.divide_exact(g).is_some() {
        return g.clone();
    }

    let main = (0..nvars)
        .rev()
        .find(|&k| f.uses_var(k) || g.uses_var(k));
    let k = match main {
        None => return MultiPoly::one(nvars),
        Some(k) => k,
    };

    let cf = content_in(f, k);
    let cg = content_in(g, k);
    let content_gcd = gcd_inner(&cf, &cg);
    let mut a = f.divide_exact(&cf).expect("content divides");
    let mut b = g.divide_exact(&cg).expect("content divides");
    if a.degree_in(k) < b.degree_in(k) {
        std::mem::swap(&mut a, &mut b);
    }

    // primitive pseudo-remainder sequence in the main variable
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, k);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, k);
            r.divide_exact(&c).expect("content divides")
        };
    }
    let ca = content_in(&a, k);
    let pp = a.divide_exact(&ca).expect("content divides");
    &content_gcd * &pp
}

/// Gcd of the coefficients of `p` viewed as univariate in `x_main`.
fn content_in(p: &MultiPoly, main: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.nvars);
    for d in 0..=p.degree_in(main) {
        let c = p.coeff_of(main, d);
        if !c.is_zero() {
            acc = gcd_inner(&acc, &c).normalized_primitive();
        }
    }
    acc
}

/// Remainder of fraction-free division of `f` by `g` in `x_main`; agrees
/// with the classical pseudo-remainder up to a factor of the leading
/// coefficient of `g`, which the primitive sequence strips anyway.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, main: usize) -> MultiPoly {
    let dg = g.degree_in(main);
    let lcg = g.coeff_of(main, dg);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(main) >= dg {
        let dr = r.degree_in(main);
        let lcr = r.coeff_of(main, dr);
        let mut shift = vec![0; f.nvars];
        shift[main] = dr - dg;
        let xk = MultiPoly::monomial(f.nvars, shift, Rational::one());
        r = &(&lcg * &r) - &(&(&lcr * &xk) * g);
    }
    r
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn xyz() -> (MultiPoly, MultiPoly, MultiPoly) {
        (
            MultiPoly::var(3, 0),
            MultiPoly::var(3, 1),
            MultiPoly::var(3, 2),
        )
    }

    #[test]
    fn arithmetic_basics() {
        let (x, y, _) = xyz();
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let (x, y, _) = xyz();
        // d/dx (x^2 y + 3x) = 2xy + 3
        let p = &(&(&x * &x) * &y) + &x.scale(&rat(3, 1));
        let expect = &(&x * &y).scale(&rat(2, 1)) + &MultiPoly::constant(3, rat(3, 1));
        assert_eq!(p.partial(0), expect);
        assert_eq!(p.partial(2), MultiPoly::zero(3));
    }

    #[test]
    fn evaluation_agrees_with_structure() {
        let (x, y, z) = xyz();
        let p = &(&x * &(&y * &y)) - &z.scale(&rat(1, 2));
        let v = p.eval_rational(&[rat(2, 1), rat(3, 1), rat(4, 1)]);
        assert_eq!(v, rat(16, 1));
        let f = p.eval_f64(&[2.0, 3.0, 4.0]);
        assert!((f - 16.0).abs() < 1e-12);
    }

    #[test]
    fn partial_substitution() {
        let (x, y, z) = xyz();
        let p = &(&x * &y) + &(&z * &z);
        let q = p.eval_partial(&[Some(rat(2, 1)), None, None]);
        let expect = &y.scale(&rat(2, 1)) + &(&z * &z);
        assert_eq!(q, expect);
    }

    #[test]
    fn exact_division_and_failure() {
        let (x, y, _) = xyz();
        let f = &(&x * &x) - &(&y * &y);
        let g = &x - &y;
        let q = f.divide_exact(&g).unwrap();
        assert_eq!(q, &x + &y);
        assert!(f.divide_exact(&(&x + &MultiPoly::one(3))).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let (x, y, _) = xyz();
        let a = &x - &y;
        let b = &x + &y;
        let f = &a * &b;
        let g = &a * &a;
        assert_eq!(f.gcd(&g), a.normalized_primitive());
        // coprime pair
        assert_eq!(b.gcd(&a).total_degree(), 0);
    }

    #[test]
    fn gcd_strips_rational_content() {
        let (x, y, _) = xyz();
        let a = (&x - &y).scale(&rat(-3, 2));
        let b = (&x - &y).scale(&rat(5, 7));
        let g = a.gcd(&b);
        assert_eq!(g, &x - &y);
    }

    #[test]
    fn compose_substitutes() {
        let (x, y, _) = xyz();
        let p = &(&x * &x) + &y;
        let t = MultiPoly::var(1, 0);
        let q = p.compose(&[t.clone(), (&t * &t).scale(&rat(-1, 1)), MultiPoly::zero(1)]);
        assert!(q.is_zero());
    }

    #[test]
    fn render_round_shape() {
        let (x, y, z) = xyz();
        let p = &(&(&x * &x).scale(&rat(3, 1)) - &(&y * &z)) + &MultiPoly::constant(3, rat(-1, 2));
        assert_eq!(p.render(&["x", "y", "z"]), "3*x^2 - y*z - 1/2");
    }
}
