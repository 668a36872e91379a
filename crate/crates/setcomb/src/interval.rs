//! Finite unions of closed intervals with exact rational endpoints.

use num_traits::Zero;
use polyalg::Rational;

/// A finite union of disjoint closed intervals, sorted by left endpoint.
///
/// Construction normalizes the parts: empty and backwards intervals are
/// dropped, overlapping or touching intervals merge. Prefix sums of the
/// part lengths make interval-mass queries logarithmic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    parts: Vec<(Rational, Rational)>,
    prefix: Vec<Rational>,
}

impl IntervalSet {
    pub fn new(mut raw: Vec<(Rational, Rational)>) -> IntervalSet {
        raw.retain(|(lo, hi)| lo < hi);
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut parts: Vec<(Rational, Rational)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match parts.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => parts.push((lo, hi)),
            }
        }
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        let mut acc = Rational::zero();
        prefix.push(acc.clone());
        for (lo, hi) in &parts {
            acc += hi - lo;
            prefix.push(acc.clone());
        }
        IntervalSet { parts, prefix }
    }

    pub fn uniform(lo: Rational, hi: Rational) -> IntervalSet {
        IntervalSet::new(vec![(lo, hi)])
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[(Rational, Rational)] {
        &self.parts
    }

    pub fn measure(&self) -> Rational {
        self.prefix.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest and largest point of the union.
    pub fn span(&self) -> Option<(&Rational, &Rational)> {
        match (self.parts.first(), self.parts.last()) {
            (Some(first), Some(last)) => Some((&first.0, &last.1)),
            _ => None,
        }
    }

    /// Largest absolute value of a member point.
    pub fn max_abs(&self) -> Option<Rational> {
        let (lo, hi) = self.span()?;
        let a = -lo.clone();
        Some(if a > *hi { a } else { hi.clone() })
    }

    /// Measure of the intersection with the closed interval `[lo, hi]`.
    pub fn mass_in(&self, lo: &Rational, hi: &Rational) -> Rational {
        if hi <= lo || self.parts.is_empty() {
            return Rational::zero();
        }
        let a = self.parts.partition_point(|p| p.1 <= *lo);
        let b = self.parts.partition_point(|p| p.0 < *hi);
        if a >= b {
            return Rational::zero();
        }
        let mut mass = &self.prefix[b] - &self.prefix[a];
        if self.parts[a].0 < *lo {
            mass -= lo - &self.parts[a].0;
        }
        if self.parts[b - 1].1 > *hi {
            mass -= &self.parts[b - 1].1 - hi;
        }
        mass
    }

    /// The part of the union inside the closed interval `[lo, hi]`.
    pub fn intersect(&self, lo: &Rational, hi: &Rational) -> IntervalSet {
        let clipped = self
            .parts
            .iter()
            .filter(|(plo, phi)| plo < hi && phi > lo)
            .map(|(plo, phi)| (plo.clone().max(lo.clone()), phi.clone().min(hi.clone())))
            .collect();
        IntervalSet::new(clipped)
    }

    /// The union with the given closed intervals removed.
    pub fn subtract(&self, bands: &[(Rational, Rational)]) -> IntervalSet {
        let bands = IntervalSet::new(bands.to_vec());
        let mut kept = Vec::new();
        let mut queue: Vec<(Rational, Rational)> = self.parts.iter().rev().cloned().collect();
        let mut bi = 0;
        while let Some((lo, hi)) = queue.pop() {
            while bi < bands.parts.len() && bands.parts[bi].1 <= lo {
                bi += 1;
            }
            match bands.parts.get(bi) {
                Some((blo, bhi)) if *blo < hi => {
                    if lo < *blo {
                        kept.push((lo, blo.clone()));
                    }
                    if *bhi < hi {
                        queue.push((bhi.clone(), hi));
                    }
                }
                _ => kept.push((lo, hi)),
            }
        }
        IntervalSet::new(kept)
    }

    pub fn translate(&self, dx: &Rational) -> IntervalSet {
        IntervalSet::new(self.parts.iter().map(|(lo, hi)| (lo + dx, hi + dx)).collect())
    }

    /// Dilation by a positive factor.
    pub fn scale(&self, c: &Rational) -> IntervalSet {
        debug_assert!(*c > Rational::zero());
        IntervalSet::new(self.parts.iter().map(|(lo, hi)| (lo * c, hi * c)).collect())
    }
}
