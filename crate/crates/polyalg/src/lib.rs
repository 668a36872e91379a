//! Exact symbolic arithmetic: arbitrary-precision rationals, sparse
//! multivariate polynomials, normalized rational functions, expression
//! parsing, and fraction-free determinants.
//!
//! Everything in this crate is exact; floating point appears only in
//! the one-way `eval_f64` conversions used by numerical consumers.

pub mod matrix;
pub mod multipoly;
pub mod parser;
pub mod ratfn;
pub mod rational;

pub use matrix::{det_cofactor, det_poly, det_rational, det_ratfn, MatrixError};
pub use multipoly::MultiPoly;
pub use parser::{parse_poly, ParseError};
pub use ratfn::RationalFn;
pub use rational::{rat, rat_from_str, rat_pow, rat_to_f64, rat_to_string, Rational};
