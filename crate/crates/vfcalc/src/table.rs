//! Tables of iterated bracket fields X_w indexed by left-normed words.

use crate::field::{lie_bracket, VectorField};
use crate::word::Word;
use crate::VfError;
use std::collections::BTreeMap;

const CAP_LIMIT: u32 = 24;

/// Every left-normed bracket field X_w for words of length ≤ cap, built by
/// X_{wj} = [X_w, X_j]. Iteration follows the word order (length, then
/// lexicographic).
#[derive(Clone, Debug)]
pub struct WordTable {
    cap: u32,
    entries: BTreeMap<Word, VectorField>,
}

/// Builds the bracket table up to total degree `cap`.
pub fn build_words(x1: &VectorField, x2: &VectorField, cap: u32) -> Result<WordTable, VfError> {
    if cap == 0 {
        return Err(VfError::ZeroCap);
    }
    if cap > CAP_LIMIT {
        return Err(VfError::CapTooLarge { cap });
    }
    if x1.dim() != x2.dim() {
        return Err(VfError::DimensionMismatch { left: x1.dim(), right: x2.dim() });
    }
    if x1.nvars() != x2.nvars() {
        return Err(VfError::VariableCountMismatch { left: x1.nvars(), right: x2.nvars() });
    }

    let mut entries = BTreeMap::new();
    entries.insert(Word::new(&[1]).expect("valid"), x1.clone());
    entries.insert(Word::new(&[2]).expect("valid"), x2.clone());
    for len in 2..=cap {
        for code in 0u64..(1 << len) {
            let letters: Vec<u8> = (0..len)
                .rev()
                .map(|b| if code >> b & 1 == 0 { 1 } else { 2 })
                .collect();
            let word = Word::new(&letters).expect("valid");
            let (parent, last) = word.parent().expect("length >= 2");
            let parent_field = entries.get(&parent).expect("parent precedes child");
            let field = if parent_field.is_zero() {
                VectorField::zero(x1.dim(), x1.nvars())
            } else {
                let base = if last == 1 { x1 } else { x2 };
                lie_bracket(parent_field, base)?
            };
            entries.insert(word, field);
        }
    }
    Ok(WordTable { cap, entries })
}

impl WordTable {
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.entries.values().next().expect("nonempty").dim()
    }

    pub fn nvars(&self) -> usize {
        self.entries.values().next().expect("nonempty").nvars()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, word: &Word) -> Option<&VectorField> {
        self.entries.get(word)
    }

    /// Words in enumeration order: length first, then lexicographic.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &VectorField)> {
        self.entries.iter()
    }
}
