//! Exact determinants of polynomial and rational-function matrices.
//!
//! The workhorse is fraction-free Gaussian elimination, whose intermediate
//! divisions are exact by the Sylvester identity, so coefficient growth
//! stays polynomial instead of exponential. Cofactor expansion is kept as
//! an independent cross-check for small sizes.

use crate::multipoly::MultiPoly;
use crate::ratfn::RationalFn;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    Empty,
    NotSquare { rows: usize, cols: usize },
    MixedVariableCounts,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => write!(f, "determinant of an empty matrix"),
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            MatrixError::MixedVariableCounts => {
                write!(f, "matrix entries disagree on variable count")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

fn check_square<T>(rows: &[Vec<T>]) -> Result<usize, MatrixError> {
    let n = rows.len();
    if n == 0 {
        return Err(MatrixError::Empty);
    }
    for row in rows {
        if row.len() != n {
            return Err(MatrixError::NotSquare { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

/// Determinant by fraction-free elimination with row pivoting.
pub fn det_poly(rows: &[Vec<MultiPoly>]) -> Result<MultiPoly, MatrixError> {
    let n = check_square(rows)?;
    let nvars = rows[0][0].nvars();
    if rows.iter().flatten().any(|p| p.nvars() != nvars) {
        return Err(MatrixError::MixedVariableCounts);
    }

    let mut m: Vec<Vec<MultiPoly>> = rows.to_vec();
    let mut sign = 1i32;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(MultiPoly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t
                    .divide_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = MultiPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = -&det;
    }
    Ok(det)
}

/// Determinant by cofactor expansion along the first row. Exponential in
/// the size; intended as an independent check for small matrices.
pub fn det_cofactor(rows: &[Vec<MultiPoly>]) -> Result<MultiPoly, MatrixError> {
    check_square(rows)?;
    let nvars = rows[0][0].nvars();
    if rows.iter().flatten().any(|p| p.nvars() != nvars) {
        return Err(MatrixError::MixedVariableCounts);
    }
    Ok(cofactor_inner(rows, nvars))
}

fn cofactor_inner(rows: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for (j, entry) in rows[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = entry * &cofactor_inner(&minor, nvars);
        if j % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Determinant of a rational-function matrix. Each row is cleared to a
/// common polynomial denominator first, so the inner work stays
/// fraction-free.
pub fn det_ratfn(rows: &[Vec<RationalFn>]) -> Result<RationalFn, MatrixError> {
    let n = check_square(rows)?;
    let nvars = rows[0][0].nvars();
    if rows.iter().flatten().any(|p| p.nvars() != nvars) {
        return Err(MatrixError::MixedVariableCounts);
    }

    let mut cleared: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    let mut scale = MultiPoly::one(nvars);
    for row in rows {
        let mut lcm = MultiPoly::one(nvars);
        for entry in row {
            let g = lcm.gcd(entry.den());
            lcm = &entry.den().divide_exact(&g).expect("gcd divides") * &lcm;
        }
        cleared.push(
            row.iter()
                .map(|entry| {
                    let cofactor = lcm.divide_exact(entry.den()).expect("row lcm divides");
                    entry.num() * &cofactor
                })
                .collect(),
        );
        scale = &scale * &lcm;
    }
    let det = det_poly(&cleared)?;
    Ok(RationalFn::new(det, scale))
}

/// Determinant of a constant rational matrix by plain Gaussian elimination.
pub fn det_rational(rows: &[Vec<Rational>]) -> Result<Rational, MatrixError> {
    let n = check_square(rows)?;
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    det = -det;
                }
                None => return Ok(Rational::zero()),
            }
        }
        det *= &m[k][k];
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &m[k][k];
            let (upper, lower) = m.split_at_mut(i);
            let pivot_row = &upper[k];
            let row = &mut lower[0];
            for j in k..n {
                let t = &row[j] - &(&factor * &pivot_row[j]);
                row[j] = t;
            }
        }
    }
    Ok(det)
}
