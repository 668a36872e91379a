//! Axis-aligned cell sets with exact rational geometry.
//!
//! A `GridSet` lives in a box `[lower, upper]^n` split into cubes of side
//! `cell`; membership is a set of integer cell indices and the measure is
//! the exact cell count times `cell^n`. The serialized form is line
//! oriented: a `gridset 1` magic line, `dim n`, `cell h`, one `axis lo hi`
//! line per axis, then one `run` line per maximal run of cells along the
//! last axis (the n-1 leading indices, the starting index, and the run
//! length).

use num_traits::ToPrimitive;
use polyalg::{rat, rat_from_str, rat_pow, rat_to_string, MultiPoly, Rational};
use std::collections::BTreeSet;

use crate::SetError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSet {
    dim: usize,
    lower: Vec<Rational>,
    upper: Vec<Rational>,
    cell: Rational,
    extent: Vec<i64>,
    cells: BTreeSet<Vec<i64>>,
}

impl GridSet {
    /// An empty set over the box `[lower, upper]` with the given cell side.
    /// Every axis extent must be a positive integer multiple of the cell.
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>, cell: Rational) -> Result<GridSet, SetError> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(SetError::BadGrid(format!(
                "bounds need one matching pair per axis, got {} lower and {} upper",
                lower.len(),
                upper.len()
            )));
        }
        if cell <= rat(0, 1) {
            return Err(SetError::BadGrid("the cell side must be positive".into()));
        }
        let mut extent = Vec::with_capacity(lower.len());
        for (lo, hi) in lower.iter().zip(&upper) {
            let steps = (hi - lo) / &cell;
            if steps <= rat(0, 1) || !steps.is_integer() {
                return Err(SetError::BadGrid(format!(
                    "axis [{}, {}] is not a positive whole number of cells of side {}",
                    rat_to_string(lo),
                    rat_to_string(hi),
                    rat_to_string(&cell)
                )));
            }
            let n = steps.to_integer().to_i64().ok_or_else(|| {
                SetError::BadGrid("an axis spans too many cells to index".into())
            })?;
            extent.push(n);
        }
        Ok(GridSet { dim: lower.len(), lower, upper, cell, extent, cells: BTreeSet::new() })
    }

    pub fn with_cells(
        lower: Vec<Rational>,
        upper: Vec<Rational>,
        cell: Rational,
        cells: impl IntoIterator<Item = Vec<i64>>,
    ) -> Result<GridSet, SetError> {
        let mut grid = GridSet::new(lower, upper, cell)?;
        for idx in cells {
            grid.insert(&idx)?;
        }
        Ok(grid)
    }

    pub fn insert(&mut self, idx: &[i64]) -> Result<(), SetError> {
        if idx.len() != self.dim {
            return Err(SetError::DimensionMismatch { expected: self.dim, got: idx.len() });
        }
        for (i, n) in idx.iter().zip(&self.extent) {
            if *i < 0 || i >= n {
                return Err(SetError::BadGrid(format!(
                    "cell index {i} is outside the axis range 0..{n}"
                )));
            }
        }
        self.cells.insert(idx.to_vec());
        Ok(())
    }

    pub fn remove(&mut self, idx: &[i64]) -> bool {
        self.cells.remove(idx)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell(&self) -> &Rational {
        &self.cell
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// Cells along each axis.
    pub fn extent(&self) -> &[i64] {
        &self.extent
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, idx: &[i64]) -> bool {
        self.cells.contains(idx)
    }

    /// Member cell indices in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.cells.iter()
    }

    pub fn measure(&self) -> Rational {
        rat(self.cells.len() as i64, 1) * rat_pow(&self.cell, self.dim as i32)
    }

    /// Is every cell of `self` a cell of `other` on the same geometry?
    pub fn subset_of(&self, other: &GridSet) -> bool {
        self.dim == other.dim
            && self.lower == other.lower
            && self.cell == other.cell
            && self.cells.is_subset(&other.cells)
    }

    /// Center of a member cell, as exact rationals.
    pub fn cell_center(&self, idx: &[i64]) -> Vec<Rational> {
        idx.iter()
            .zip(&self.lower)
            .map(|(i, lo)| lo + &self.cell * rat(2 * i + 1, 2))
            .collect()
    }

    /// Forgets one coordinate; the image is a grid set in dimension n-1.
    pub fn project_drop(&self, axis: usize) -> Result<GridSet, SetError> {
        if self.dim < 2 {
            return Err(SetError::BadGrid("a projection needs dimension at least 2".into()));
        }
        if axis >= self.dim {
            return Err(SetError::BadGrid(format!(
                "axis {axis} is outside a {}-dimensional grid",
                self.dim
            )));
        }
        let drop = |v: &[Rational]| {
            v.iter().enumerate().filter(|(a, _)| *a != axis).map(|(_, x)| x.clone()).collect()
        };
        let mut grid = GridSet::new(drop(&self.lower), drop(&self.upper), self.cell.clone())?;
        for idx in &self.cells {
            let image: Vec<i64> =
                idx.iter().enumerate().filter(|(a, _)| *a != axis).map(|(_, i)| *i).collect();
            grid.insert(&image)?;
        }
        Ok(grid)
    }

    /// Applies polynomial coordinate maps to every cell center and collects
    /// the image cells on a grid of the same side, anchored at multiples of
    /// the cell. The maps must take n variables to n-1 coordinates.
    pub fn project_map(&self, maps: &[MultiPoly]) -> Result<GridSet, SetError> {
        if maps.len() + 1 != self.dim {
            return Err(SetError::DimensionMismatch { expected: self.dim - 1, got: maps.len() });
        }
        for m in maps {
            if m.nvars() != self.dim {
                return Err(SetError::DimensionMismatch { expected: self.dim, got: m.nvars() });
            }
        }
        if self.cells.is_empty() {
            return Err(SetError::EmptySet);
        }
        let mut keys: BTreeSet<Vec<i64>> = BTreeSet::new();
        for idx in &self.cells {
            let center = self.cell_center(idx);
            let mut key = Vec::with_capacity(maps.len());
            for m in maps {
                let v = m.eval_rational(&center) / &self.cell;
                let k = v.floor().to_integer().to_i64().ok_or_else(|| {
                    SetError::BadGrid("a projected point is too far from the origin".into())
                })?;
                key.push(k);
            }
            keys.insert(key);
        }
        let first = keys.iter().next().expect("nonempty image");
        let mut min = first.clone();
        let mut max = first.clone();
        for key in &keys {
            for a in 0..key.len() {
                min[a] = min[a].min(key[a]);
                max[a] = max[a].max(key[a]);
            }
        }
        let lower: Vec<Rational> = min.iter().map(|k| &self.cell * rat(*k, 1)).collect();
        let upper: Vec<Rational> = max.iter().map(|k| &self.cell * rat(k + 1, 1)).collect();
        let mut grid = GridSet::new(lower, upper, self.cell.clone())?;
        for key in keys {
            let idx: Vec<i64> = key.iter().zip(&min).map(|(k, m)| k - m).collect();
            grid.insert(&idx)?;
        }
        Ok(grid)
    }

    /// Serializes to the line-oriented run-length format.
    pub fn to_rle_string(&self) -> String {
        let mut out = String::from("gridset 1\n");
        out.push_str(&format!("dim {}\n", self.dim));
        out.push_str(&format!("cell {}\n", rat_to_string(&self.cell)));
        for (lo, hi) in self.lower.iter().zip(&self.upper) {
            out.push_str(&format!("axis {} {}\n", rat_to_string(lo), rat_to_string(hi)));
        }
        let mut run: Option<(Vec<i64>, i64, i64)> = None;
        let mut flush = |r: &Option<(Vec<i64>, i64, i64)>, out: &mut String| {
            if let Some((prefix, start, len)) = r {
                out.push_str("run");
                for i in prefix {
                    out.push_str(&format!(" {i}"));
                }
                out.push_str(&format!(" {start} {len}\n"));
            }
        };
        for idx in &self.cells {
            let (prefix, t) = idx.split_at(self.dim - 1);
            let t = t[0];
            match &mut run {
                Some((p, start, len)) if *p == prefix && t == *start + *len => *len += 1,
                _ => {
                    flush(&run, &mut out);
                    run = Some((prefix.to_vec(), t, 1));
                }
            }
        }
        flush(&run, &mut out);
        out
    }

    /// Parses the run-length format produced by `to_rle_string`.
    pub fn from_rle_str(text: &str) -> Result<GridSet, SetError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let mut expect = |tag: &str| -> Result<Vec<String>, SetError> {
            let line = lines
                .next()
                .ok_or_else(|| SetError::Parse(format!("missing `{tag}` line")))?;
            let mut fields = line.split_whitespace().map(str::to_string);
            match fields.next() {
                Some(t) if t == tag => Ok(fields.collect()),
                other => Err(SetError::Parse(format!(
                    "expected a `{tag}` line, found `{}`",
                    other.unwrap_or_default()
                ))),
            }
        };
        let magic = expect("gridset")?;
        if magic != ["1"] {
            return Err(SetError::Parse("unsupported gridset version".into()));
        }
        let dim_fields = expect("dim")?;
        let dim: usize = dim_fields
            .first()
            .and_then(|s| s.parse().ok())
            .filter(|d| *d >= 1)
            .ok_or_else(|| SetError::Parse("bad dimension".into()))?;
        let cell_fields = expect("cell")?;
        let cell = cell_fields
            .first()
            .ok_or_else(|| SetError::Parse("missing cell side".into()))
            .and_then(|s| rat_from_str(s).map_err(SetError::Parse))?;
        let mut lower = Vec::with_capacity(dim);
        let mut upper = Vec::with_capacity(dim);
        for _ in 0..dim {
            let fields = expect("axis")?;
            if fields.len() != 2 {
                return Err(SetError::Parse("an axis line needs a lower and upper bound".into()));
            }
            lower.push(rat_from_str(&fields[0]).map_err(SetError::Parse)?);
            upper.push(rat_from_str(&fields[1]).map_err(SetError::Parse)?);
        }
        let mut grid = GridSet::new(lower, upper, cell)?;
        for line in lines {
            let mut fields = line.split_whitespace();
            if fields.next() != Some("run") {
                return Err(SetError::Parse(format!("expected a `run` line, found `{line}`")));
            }
            let numbers: Vec<i64> = fields
                .map(|s| s.parse().map_err(|_| SetError::Parse(format!("bad index `{s}`"))))
                .collect::<Result<_, _>>()?;
            if numbers.len() != dim + 1 {
                return Err(SetError::Parse(format!(
                    "a run line in dimension {dim} needs {} numbers",
                    dim + 1
                )));
            }
            let (prefix, tail) = numbers.split_at(dim - 1);
            let (start, len) = (tail[0], tail[1]);
            if len <= 0 {
                return Err(SetError::Parse("a run length must be positive".into()));
            }
            let mut idx = prefix.to_vec();
            idx.push(0);
            for t in start..start + len {
                *idx.last_mut().expect("dim >= 1") = t;
                grid.insert(&idx)?;
            }
        }
        Ok(grid)
    }
}
