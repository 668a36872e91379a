//! The exponent region: the convex hull in the unit square of (0,0),
//! (1,1), and the images of the generator degrees under the exponent map.

use num_traits::{One, Zero};
use polyalg::Rational;
use vfcalc::GeneratorWitness;

use crate::exponents::map_degree_to_exponent;
use crate::hull::Membership;
use crate::PolytopeError;

/// A convex polygon in [0, 1]² listed counterclockwise from (0, 0).  The
/// upper boundary is the diagonal edge (1,1)–(0,0); the rest is the lower
/// convex chain through the mapped generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentRegion {
    vertices: Vec<(Rational, Rational)>,
}

fn cross(
    o: &(Rational, Rational),
    a: &(Rational, Rational),
    b: &(Rational, Rational),
) -> Rational {
    let (ax, ay) = (&a.0 - &o.0, &a.1 - &o.1);
    let (bx, by) = (&b.0 - &o.0, &b.1 - &o.1);
    &(&ax * &by) - &(&ay * &bx)
}

/// Hulls the mapped generator degrees together with (0,0) and (1,1).
/// Collinear chain points merge into their edge.
pub fn exponent_region(generators: &[GeneratorWitness]) -> Result<ExponentRegion, PolytopeError> {
    if generators.is_empty() {
        return Err(PolytopeError::EmptyGenerators);
    }
    let mut pts = vec![
        (Rational::zero(), Rational::zero()),
        (Rational::one(), Rational::one()),
    ];
    for g in generators {
        pts.push(map_degree_to_exponent(g.degree)?);
    }
    pts.sort();
    pts.dedup();
    let mut chain: Vec<(Rational, Rational)> = Vec::new();
    for p in pts {
        while chain.len() >= 2
            && cross(&chain[chain.len() - 2], &chain[chain.len() - 1], &p) <= Rational::zero()
        {
            chain.pop();
        }
        chain.push(p);
    }
    Ok(ExponentRegion { vertices: chain })
}

impl ExponentRegion {
    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    /// Decides membership exactly by edge orientation: with vertices in
    /// counterclockwise order, a point is interior when it lies strictly
    /// left of every edge, including the closing diagonal.
    pub fn membership(&self, point: &(Rational, Rational)) -> Membership {
        let n = self.vertices.len();
        let mut on_boundary = false;
        for i in 0..n {
            let turn = cross(&self.vertices[i], &self.vertices[(i + 1) % n], point);
            if turn < Rational::zero() {
                return Membership::Exterior;
            }
            if turn.is_zero() {
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
