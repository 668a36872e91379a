//! Parser for polynomial expressions over a fixed set of variable names.
//!
//! Grammar:
//! ```text
//! expr   := [ '-' ] term ( ( '+' | '-' ) term )*
//! term   := factor ( '*' factor )*
//! factor := atom [ '^' UINT ]
//! atom   := NUMBER | IDENT | '(' expr ')'
//! ```
//! `NUMBER` is an unsigned integer or a rational literal like `3/4`; the
//! slash exists only inside literals, there is no division operator.
//! Multiplication is always explicit: `2*x*y^3`, never `2xy`.

use crate::multipoly::MultiPoly;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem starts.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = input[start..i].parse().unwrap();
                let mut denom = BigInt::one();
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    denom = input[dstart..i].parse().unwrap();
                    if denom.is_zero() {
                        return err(dstart, "rational literal with zero denominator");
                    }
                }
                toks.push((Tok::Num(Rational::new(numer, denom)), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), start));
            }
            '/' => {
                return err(i, "`/` is only valid inside a rational literal like 3/4");
            }
            _ => return err(i, format!("unexpected character `{c}`")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    cur: usize,
    names: &'a [&'a str],
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cur).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cur)
            .map(|&(_, p)| p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cur).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cur += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.cur += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let nvars = self.names.len();
        let negate_first = if self.peek() == Some(&Tok::Minus) {
            self.cur += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.cur += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.cur += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.nvars(), nvars);
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.cur += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.cur += 1;
        let epos = self.pos();
        match self.bump() {
            Some(Tok::Num(r)) => {
                if !r.denom().is_one() {
                    return err(epos, "exponent must be a nonnegative integer");
                }
                match r.numer().to_u32() {
                    Some(e) => Ok(base.pow(e)),
                    None => err(epos, "exponent too large"),
                }
            }
            _ => err(epos, "expected a nonnegative integer exponent after `^`"),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(MultiPoly::constant(self.names.len(), r)),
            Some(Tok::Ident(name)) => {
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(MultiPoly::var(self.names.len(), i)),
                    None => err(
                        pos,
                        format!(
                            "unknown variable `{name}` (expected one of: {})",
                            self.names.join(", ")
                        ),
                    ),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.eat(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => err(pos, "expected a number, variable, or `(`"),
            None => err(pos, "unexpected end of input"),
        }
    }
}

/// Parses `input` as a polynomial in the given variables; variable index
/// in the result matches position in `names`.
pub fn parse_poly(input: &str, names: &[&str]) -> Result<MultiPoly, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, cur: 0, names, input_len: input.len() };
    let poly = p.expr()?;
    if p.cur != p.toks.len() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(poly)
}
