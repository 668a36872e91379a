//! Thin helpers around `num_rational::BigRational`.
//!
//! `BigRational` already maintains the invariants we need (always reduced,
//! denominator positive, canonical equality), so the crate exposes it
//! directly under the local name `Rational` together with a few
//! constructors and the `num/den` string form used by reports.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

/// Rational from a machine-integer pair. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rational with zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with optional leading minus.
pub fn rat_from_str(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| format!("bad integer `{num}`"))?;
    let d = BigInt::from_str(den).map_err(|_| format!("bad integer `{den}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Canonical `num/den` string; integers are printed without the slash.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for the numerical layers.
pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a manual division when the parts overflow f64
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * sign_of(r.numer()));
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn sign_of(x: &BigInt) -> f64 {
    if x.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// `r^e` for a signed integer exponent. Panics on `0^negative`.
pub fn rat_pow(r: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow::pow(r.clone(), e as usize)
    } else {
        assert!(!r.is_zero(), "zero to a negative power");
        num_traits::pow::pow(r.recip(), (-e) as usize)
    }
}
