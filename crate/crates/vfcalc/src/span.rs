//! Span analysis of bracket degrees at a point: group word fields by
//! degree, measure what each degree class contributes to the tangent
//! space, and search for full frames with minimal combined degree.

use crate::table::WordTable;
use crate::word::{Degree, Word};
use crate::VfError;
use polyalg::Rational;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// All words of one degree together with their evaluated vectors and the
/// rank of their joint span. Zero vectors are dropped before grouping, so
/// `words` and `vectors` pair up and are never empty.
#[derive(Clone, Debug)]
pub struct DegreeClass {
    pub degree: Degree,
    pub words: Vec<Word>,
    pub vectors: Vec<Vec<Rational>>,
    pub rank: usize,
}

/// Result of evaluating a word table at a point and grouping by degree.
#[derive(Clone, Debug)]
pub struct SpanAnalysis {
    dim: usize,
    cap: u32,
    classes: Vec<DegreeClass>,
}

/// A minimal combined degree together with a spanning word tuple that
/// realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub degree: Degree,
    pub words: Vec<Word>,
}

/// Outcome of the spanning test at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HormanderVerdict {
    /// The brackets span; witnesses are listed lowest degree first.
    Spans { witnesses: Vec<GeneratorWitness> },
    /// No spanning frame among words of length at most `cap`. Longer
    /// brackets may still span, so this never certifies failure.
    FailsUpToCap { cap: u32, spanned: usize, dim: usize },
}

/// Incremental row basis over the rationals. Each inserted row is reduced
/// against the earlier ones, so membership in the span is exact.
#[derive(Clone)]
struct RowBasis {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    fn new() -> RowBasis {
        RowBasis { rows: Vec::new(), pivots: Vec::new() }
    }

    /// Adds the vector if it enlarges the span; reports whether it did.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = &v[p] / &row[p];
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj = &*vj - &(&f * rj);
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                self.pivots.push(p);
                self.rows.push(v);
                true
            }
            None => false,
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Evaluates every word field at `point` (coordinates only; any symbolic
/// parameters must already be specialized) and groups the nonzero vectors
/// by degree.
pub fn analyze_spans(table: &WordTable, point: &[Rational]) -> Result<SpanAnalysis, VfError> {
    let dim = table.dim();
    let nvars = table.nvars();
    if point.len() != dim {
        return Err(VfError::PointLength { expected: dim, got: point.len() });
    }
    let mut assignment: Vec<Option<Rational>> = point.iter().cloned().map(Some).collect();
    assignment.resize(nvars, None);

    let mut grouped: BTreeMap<Degree, (Vec<Word>, Vec<Vec<Rational>>)> = BTreeMap::new();
    for (word, field) in table.entries() {
        let mut vector = Vec::with_capacity(dim);
        for (i, comp) in field.components().iter().enumerate() {
            let value = comp
                .eval_partial(&assignment)
                .ok_or_else(|| VfError::PoleAtPoint(format!("X_{word}")))?;
            match value.constant_value() {
                Some(c) => vector.push(c),
                None => {
                    return Err(VfError::ParametricValue(format!(
                        "X_{word} component {}",
                        i + 1
                    )))
                }
            }
        }
        if vector.iter().all(|c| c.is_zero()) {
            continue;
        }
        let slot = grouped.entry(word.degree()).or_default();
        slot.0.push(word.clone());
        slot.1.push(vector);
    }

    let mut classes: Vec<DegreeClass> = grouped
        .into_iter()
        .map(|(degree, (words, vectors))| {
            let mut basis = RowBasis::new();
            for v in &vectors {
                basis.insert(v);
            }
            DegreeClass { degree, words, vectors, rank: basis.rank() }
        })
        .collect();
    classes.sort_by_key(|c| (c.degree.total(), c.degree.d1));

    Ok(SpanAnalysis { dim, cap: table.cap(), classes })
}

impl SpanAnalysis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn classes(&self) -> &[DegreeClass] {
        &self.classes
    }

    /// Rank of the span of every evaluated bracket together.
    pub fn spanned_rank(&self) -> usize {
        let mut basis = RowBasis::new();
        for class in &self.classes {
            for v in &class.vectors {
                basis.insert(v);
            }
        }
        basis.rank()
    }

    pub fn full_rank(&self) -> bool {
        self.spanned_rank() == self.dim
    }

    /// Every combined degree realized by some spanning word tuple, sorted
    /// by total degree and then first component.
    pub fn achievable_degrees(&self) -> Vec<Degree> {
        let mut degrees: Vec<Degree> = self.achievable_with_multisets().into_keys().collect();
        degrees.sort_by_key(|d| (d.total(), d.d1));
        degrees
    }

    /// Map from each achievable combined degree to the per-class vector
    /// counts of the first multiset that realizes it.
    pub fn achievable_with_multisets(&self) -> BTreeMap<Degree, Vec<usize>> {
        let mut out = BTreeMap::new();
        if self.classes.is_empty() {
            return out;
        }
        let mut suffix_rank = vec![0usize; self.classes.len() + 1];
        for i in (0..self.classes.len()).rev() {
            suffix_rank[i] = suffix_rank[i + 1] + self.classes[i].rank;
        }
        let mut counts = vec![0usize; self.classes.len()];
        let mut cache = HashMap::new();
        self.search(0, 0, &suffix_rank, &mut counts, &mut cache, &mut out);
        out
    }

    fn search(
        &self,
        idx: usize,
        placed: usize,
        suffix_rank: &[usize],
        counts: &mut Vec<usize>,
        cache: &mut HashMap<Vec<usize>, usize>,
        out: &mut BTreeMap<Degree, Vec<usize>>,
    ) {
        if placed == self.dim {
            if self.admits_transversal(counts, cache) {
                let mut degree = Degree::new(0, 0);
                for (c, class) in counts.iter().zip(&self.classes) {
                    for _ in 0..*c {
                        degree = degree + class.degree;
                    }
                }
                out.entry(degree).or_insert_with(|| counts.clone());
            }
            return;
        }
        if idx == self.classes.len() || placed + suffix_rank[idx] < self.dim {
            return;
        }
        let most = self.classes[idx].rank.min(self.dim - placed);
        for c in 0..=most {
            counts[idx] = c;
            self.search(idx + 1, placed + c, suffix_rank, counts, cache, out);
        }
        counts[idx] = 0;
    }

    /// Exact realizability of a count vector: by Rado's transversal
    /// theorem the counts can be filled with jointly independent vectors
    /// iff every subset of the supporting classes spans at least as many
    /// dimensions as it must contribute.
    fn admits_transversal(
        &self,
        counts: &[usize],
        cache: &mut HashMap<Vec<usize>, usize>,
    ) -> bool {
        let support: Vec<usize> =
            (0..counts.len()).filter(|&i| counts[i] > 0).collect();
        for mask in 1u32..(1 << support.len()) {
            let subset: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let demand: usize = subset.iter().map(|&i| counts[i]).sum();
            if self.union_rank(&subset, cache) < demand {
                return false;
            }
        }
        true
    }

    fn union_rank(&self, idxs: &[usize], cache: &mut HashMap<Vec<usize>, usize>) -> usize {
        if let Some(&r) = cache.get(idxs) {
            return r;
        }
        let mut basis = RowBasis::new();
        'outer: for &i in idxs {
            for v in &self.classes[i].vectors {
                basis.insert(v);
                if basis.rank() == self.dim {
                    break 'outer;
                }
            }
        }
        let r = basis.rank();
        cache.insert(idxs.to_vec(), r);
        r
    }

    /// Backtracking fill of a count vector with an explicit word tuple;
    /// succeeds whenever the counts pass the transversal test.
    fn witness_for(&self, counts: &[usize]) -> Option<Vec<Word>> {
        let mut picked = Vec::new();
        if self.extend(counts, 0, 0, 0, &RowBasis::new(), &mut picked) {
            picked.sort();
            Some(picked)
        } else {
            None
        }
    }

    fn extend(
        &self,
        counts: &[usize],
        ci: usize,
        taken: usize,
        start: usize,
        basis: &RowBasis,
        picked: &mut Vec<Word>,
    ) -> bool {
        if ci == counts.len() {
            return true;
        }
        if taken == counts[ci] {
            return self.extend(counts, ci + 1, 0, 0, basis, picked);
        }
        let class = &self.classes[ci];
        for wi in start..class.vectors.len() {
            if class.vectors.len() - wi < counts[ci] - taken {
                break;
            }
            let mut grown = basis.clone();
            if grown.insert(&class.vectors[wi]) {
                picked.push(class.words[wi].clone());
                if self.extend(counts, ci, taken + 1, wi + 1, &grown, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }

    /// The minimal achievable degrees with explicit witness tuples,
    /// sorted by total degree and then first component. Minimality is in
    /// the componentwise partial order.
    pub fn pareto_generators(&self) -> Vec<GeneratorWitness> {
        let all = self.achievable_with_multisets();
        let mut out = Vec::new();
        for (degree, counts) in &all {
            let dominated = all
                .keys()
                .any(|e| e != degree && e.componentwise_le(*degree));
            if dominated {
                continue;
            }
            let words = self
                .witness_for(counts)
                .expect("counts passing the transversal test always fill");
            out.push(GeneratorWitness { degree: *degree, words });
        }
        out.sort_by_key(|g| (g.degree.total(), g.degree.d1));
        out
    }
}

/// Spanning test at a point: either the brackets of length at most the
/// table cap frame the chart, with minimal-degree witnesses, or they do
/// not, which leaves the question open beyond the cap.
pub fn hormander_check(
    table: &WordTable,
    point: &[Rational],
) -> Result<HormanderVerdict, VfError> {
    let analysis = analyze_spans(table, point)?;
    if analysis.full_rank() {
        Ok(HormanderVerdict::Spans { witnesses: analysis.pareto_generators() })
    } else {
        Ok(HormanderVerdict::FailsUpToCap {
            cap: analysis.cap(),
            spanned: analysis.spanned_rank(),
            dim: analysis.dim(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::VectorField;
    use crate::table::build_words;
    use polyalg::{parse_poly, rat, RationalFn};

    fn field(comps: &[&str], names: &[&str]) -> VectorField {
        let comps: Vec<RationalFn> = comps
            .iter()
            .map(|s| RationalFn::from_poly(parse_poly(s, names).unwrap()))
            .collect();
        VectorField::new(comps).unwrap()
    }

    fn origin(dim: usize) -> Vec<Rational> {
        vec![rat(0, 1); dim]
    }

    #[test]
    fn commuting_fields_have_one_achievable_degree() {
        let names = ["x", "y"];
        let x1 = field(&["1", "0"], &names);
        let x2 = field(&["0", "1"], &names);
        let table = build_words(&x1, &x2, 4).unwrap();
        let analysis = analyze_spans(&table, &origin(2)).unwrap();
        assert_eq!(analysis.classes().len(), 2);
        assert!(analysis.full_rank());
        assert_eq!(analysis.achievable_degrees(), vec![Degree::new(1, 1)]);
        let gens = analysis.pareto_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].degree, Degree::new(1, 1));
        assert_eq!(gens[0].words, vec![Word::parse("1").unwrap(), Word::parse("2").unwrap()]);
    }

    #[test]
    fn heisenberg_frame_needs_the_first_bracket() {
        let names = ["x", "y", "z"];
        let x1 = field(&["1", "0", "0"], &names);
        let x2 = field(&["0", "1", "x"], &names);
        let table = build_words(&x1, &x2, 4).unwrap();
        let analysis = analyze_spans(&table, &origin(3)).unwrap();
        assert_eq!(analysis.achievable_degrees(), vec![Degree::new(2, 2)]);
        let gens = analysis.pareto_generators();
        assert_eq!(gens[0].words.len(), 3);
        assert_eq!(gens[0].words[2], Word::parse("12").unwrap());
        match hormander_check(&table, &origin(3)).unwrap() {
            HormanderVerdict::Spans { witnesses } => assert_eq!(witnesses, gens),
            v => panic!("expected a spanning verdict, got {v:?}"),
        }
    }

    #[test]
    fn parallel_classes_cannot_both_contribute() {
        // X₁₂ and all longer brackets point along z, so only one slot of
        // the frame can come from bracket classes and the rest is
        // unreachable: the pair spans only a 3-plane in 4 dimensions
        let names = ["x", "y", "z", "w"];
        let x1 = field(&["1", "0", "0", "0"], &names);
        let x2 = field(&["0", "1", "x", "0"], &names);
        let table = build_words(&x1, &x2, 5).unwrap();
        match hormander_check(&table, &origin(4)).unwrap() {
            HormanderVerdict::FailsUpToCap { cap, spanned, dim } => {
                assert_eq!((cap, spanned, dim), (5, 3, 4));
            }
            v => panic!("expected failure up to the cap, got {v:?}"),
        }
    }

    #[test]
    fn degenerate_base_fields_are_dropped_pointwise() {
        // X₁ = x·∂_x vanishes at the origin, leaving rank 1 there, but
        // spans at x = 1
        let names = ["x", "y"];
        let x1 = field(&["x", "0"], &names);
        let x2 = field(&["0", "1"], &names);
        let table = build_words(&x1, &x2, 3).unwrap();
        let at0 = analyze_spans(&table, &origin(2)).unwrap();
        assert_eq!(at0.spanned_rank(), 1);
        let at1 = analyze_spans(&table, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert!(at1.full_rank());
        // the bracket [X₁, X₂] = 0, so the frame at x = 1 is the base pair
        assert_eq!(at1.achievable_degrees(), vec![Degree::new(1, 1)]);
    }

    #[test]
    fn poles_and_leftover_parameters_are_reported() {
        let names = ["x", "y"];
        let pole = RationalFn::new(
            parse_poly("1", &names).unwrap(),
            parse_poly("x", &names).unwrap(),
        );
        let x1 = VectorField::new(vec![pole, RationalFn::zero(2)]).unwrap();
        let x2 = field(&["0", "1"], &names);
        let table = build_words(&x1, &x2, 2).unwrap();
        assert_eq!(
            analyze_spans(&table, &origin(2)).unwrap_err(),
            VfError::PoleAtPoint("X_1".into())
        );

        // two coordinates plus one symbolic parameter
        let pnames = ["x", "y", "a"];
        let x1 = VectorField::new(vec![
            RationalFn::from_poly(parse_poly("a", &pnames).unwrap()),
            RationalFn::zero(3),
        ])
        .unwrap();
        let x2 = VectorField::new(vec![
            RationalFn::zero(3),
            RationalFn::from_poly(parse_poly("1", &pnames).unwrap()),
        ])
        .unwrap();
        let table = build_words(&x1, &x2, 2).unwrap();
        assert_eq!(
            analyze_spans(&table, &origin(2)).unwrap_err(),
            VfError::ParametricValue("X_1 component 1".into())
        );
        assert_eq!(
            analyze_spans(&table, &origin(3)).unwrap_err(),
            VfError::PointLength { expected: 2, got: 3 }
        );
    }
}
