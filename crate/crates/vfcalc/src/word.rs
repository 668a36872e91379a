//! Bracket words over the alphabet {1, 2} and their letter-count degrees.

use crate::VfError;
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// Nonempty sequence of letters from {1, 2}, naming the iterated bracket
/// obtained by appending letters on the right: X_{wj} = [X_w, X_j].
///
/// The order is length first, then lexicographic, matching the table
/// enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: &[u8]) -> Result<Word, VfError> {
        if letters.is_empty() {
            return Err(VfError::EmptyWord);
        }
        if let Some(&bad) = letters.iter().find(|&&l| l != 1 && l != 2) {
            return Err(VfError::BadLetter((b'0' + bad.min(9)) as char));
        }
        Ok(Word(letters.to_vec()))
    }

    /// Parse a digit string such as "121".
    pub fn parse(s: &str) -> Result<Word, VfError> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '1' => letters.push(1),
                '2' => letters.push(2),
                other => return Err(VfError::BadLetter(other)),
            }
        }
        Word::new(&letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> Degree {
        let d1 = self.0.iter().filter(|&&l| l == 1).count() as u32;
        Degree { d1, d2: self.0.len() as u32 - d1 }
    }

    /// The word with the last letter removed, and that letter; `None` for
    /// single-letter words.
    pub fn parent(&self) -> Option<(Word, u8)> {
        if self.0.len() < 2 {
            return None;
        }
        let (last, init) = self.0.split_last().expect("nonempty");
        Some((Word(init.to_vec()), *last))
    }

    pub fn child(&self, letter: u8) -> Result<Word, VfError> {
        if letter != 1 && letter != 2 {
            return Err(VfError::BadLetter((b'0' + letter.min(9)) as char));
        }
        let mut letters = self.0.clone();
        letters.push(letter);
        Ok(Word(letters))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Letter counts (d1, d2) of a word; degrees of a tuple add componentwise.
///
/// The derived `Ord` is lexicographic and serves only as a deterministic
/// map/sort key; the geometric order is `componentwise_le`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Degree {
    pub d1: u32,
    pub d2: u32,
}

impl Degree {
    pub fn new(d1: u32, d2: u32) -> Degree {
        Degree { d1, d2 }
    }

    pub fn total(self) -> u32 {
        self.d1 + self.d2
    }

    pub fn componentwise_le(self, other: Degree) -> bool {
        self.d1 <= other.d1 && self.d2 <= other.d2
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        Degree { d1: self.d1 + rhs.d1, d2: self.d2 + rhs.d2 }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}
