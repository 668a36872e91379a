//! The degree polytope: the staircase hull of achievable bracket degrees
//! under the up-right recession cone, with an exact membership test.

use num_traits::Zero;
use polyalg::{rat, Rational};
use vfcalc::{analyze_spans, Degree, GeneratorWitness, WordTable};

use crate::PolytopeError;

/// Where a point sits relative to a closed convex region, decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// The convex hull of the generator degrees plus the cone of componentwise
/// larger points.  Vertices run left to right along the staircase, so d₁
/// increases while d₂ strictly decreases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    generators: Vec<GeneratorWitness>,
    vertices: Vec<Degree>,
}

fn cross(u: Degree, v: Degree, w: Degree) -> i64 {
    let (ux, uy) = (i64::from(u.d1), i64::from(u.d2));
    let (vx, vy) = (i64::from(v.d1), i64::from(v.d2));
    let (wx, wy) = (i64::from(w.d1), i64::from(w.d2));
    (vx - ux) * (wy - vy) - (vy - uy) * (wx - vx)
}

/// Extracts the staircase vertices: Pareto-minimal degrees that survive a
/// lower convex chain scan, with collinear points merged into their edge.
pub fn staircase_vertices(degrees: &[Degree]) -> Result<Vec<Degree>, PolytopeError> {
    if degrees.is_empty() {
        return Err(PolytopeError::EmptyGenerators);
    }
    let mut pts = degrees.to_vec();
    pts.sort_by_key(|d| (d.d1, d.d2));
    pts.dedup();
    let minimal: Vec<Degree> = pts
        .iter()
        .copied()
        .filter(|d| !pts.iter().any(|e| e != d && e.componentwise_le(*d)))
        .collect();
    let mut chain: Vec<Degree> = Vec::new();
    for &p in &minimal {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    Ok(chain)
}

/// Builds the polytope from generator degrees with their witness tuples.
pub fn newton_polytope(generators: &[GeneratorWitness]) -> Result<NewtonPolytope, PolytopeError> {
    let degrees: Vec<Degree> = generators.iter().map(|g| g.degree).collect();
    let vertices = staircase_vertices(&degrees)?;
    Ok(NewtonPolytope {
        generators: generators.to_vec(),
        vertices,
    })
}

impl NewtonPolytope {
    pub fn generators(&self) -> &[GeneratorWitness] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Degree] {
        &self.vertices
    }

    /// Decides membership exactly.  The polytope is the intersection of
    /// the half-planes x₁ ≥ leftmost d₁ and x₂ ≥ rightmost d₂ with one
    /// inward half-plane per staircase edge.
    pub fn membership(&self, point: &(Rational, Rational)) -> Membership {
        let first = self.vertices.first().expect("a polytope has at least one vertex");
        let last = self.vertices.last().expect("a polytope has at least one vertex");
        let mut slacks = vec![
            &point.0 - &rat(i64::from(first.d1), 1),
            &point.1 - &rat(i64::from(last.d2), 1),
        ];
        for pair in self.vertices.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let normal_x = rat(i64::from(a.d2) - i64::from(b.d2), 1);
            let normal_y = rat(i64::from(b.d1) - i64::from(a.d1), 1);
            let dx = &point.0 - &rat(i64::from(a.d1), 1);
            let dy = &point.1 - &rat(i64::from(a.d2), 1);
            slacks.push(&(&dx * &normal_x) + &(&dy * &normal_y));
        }
        let mut on_boundary = false;
        for slack in &slacks {
            if *slack < Rational::zero() {
                return Membership::Exterior;
            }
            if slack.is_zero() {
                on_boundary = true;
            }
        }
        if on_boundary {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }
}

/// Runs the span analysis at the base point and returns the Pareto-minimal
/// generator degrees with witnesses, filtered to the tuple-degree cap, plus
/// the cap that was applied.  When no cap is given, it defaults to twice
/// the first witness degree componentwise; the search itself is exact, so
/// the cap only trims what gets reported.
pub fn generators(
    table: &WordTable,
    point: &[Rational],
    tuple_degree_cap: Option<Degree>,
) -> Result<(Vec<GeneratorWitness>, Degree), PolytopeError> {
    let analysis = analyze_spans(table, point)?;
    if !analysis.full_rank() {
        return Err(PolytopeError::NotSpanning {
            cap: analysis.cap(),
            spanned: analysis.spanned_rank(),
            dim: analysis.dim(),
        });
    }
    let pareto = analysis.pareto_generators();
    let first = pareto
        .first()
        .expect("a full-rank analysis always yields a generator")
        .degree;
    let cap = tuple_degree_cap.unwrap_or(Degree::new(2 * first.d1, 2 * first.d2));
    let kept: Vec<GeneratorWitness> = pareto
        .into_iter()
        .filter(|g| g.degree.componentwise_le(cap))
        .collect();
    if kept.is_empty() {
        return Err(PolytopeError::NoGeneratorsWithinCap { cap });
    }
    Ok((kept, cap))
}
