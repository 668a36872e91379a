//! Serializable summaries of a polytope analysis.  Rational values are
//! rendered as "num/den" strings so reports stay exact.

use polyalg::{rat_to_string, Rational};
use serde::Serialize;
use vfcalc::Degree;

use crate::classify::Verdict;
use crate::exponents::{map_degree_to_exponent, LebesguePair};
use crate::hull::NewtonPolytope;
use crate::region::ExponentRegion;
use crate::PolytopeError;

fn rat_pair(pair: &(Rational, Rational)) -> [String; 2] {
    [rat_to_string(&pair.0), rat_to_string(&pair.1)]
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub degree: [u32; 2],
    pub witness: Vec<String>,
    pub exponent_image: [String; 2],
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RegionSummary {
    pub tuple_degree_cap: [u32; 2],
    pub generators: Vec<GeneratorEntry>,
    pub polytope_vertices: Vec<[u32; 2]>,
    pub region_vertices: Vec<[String; 2]>,
}

impl RegionSummary {
    pub fn build(
        cap: Degree,
        polytope: &NewtonPolytope,
        region: &ExponentRegion,
    ) -> Result<RegionSummary, PolytopeError> {
        let mut generators = Vec::new();
        for g in polytope.generators() {
            generators.push(GeneratorEntry {
                degree: [g.degree.d1, g.degree.d2],
                witness: g.words.iter().map(|w| w.to_string()).collect(),
                exponent_image: rat_pair(&map_degree_to_exponent(g.degree)?),
            });
        }
        Ok(RegionSummary {
            tuple_degree_cap: [cap.d1, cap.d2],
            generators,
            polytope_vertices: polytope.vertices().iter().map(|v| [v.d1, v.d2]).collect(),
            region_vertices: region.vertices().iter().map(rat_pair).collect(),
        })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QueryEntry {
    pub p1: String,
    pub p2: String,
    pub p2_prime: String,
    pub scaling_point: Option<[String; 2]>,
    pub verdict: String,
}

impl QueryEntry {
    pub fn build(
        pair: &LebesguePair,
        scaling_point: Option<&(Rational, Rational)>,
        verdict: Verdict,
    ) -> QueryEntry {
        QueryEntry {
            p1: pair.p1.render(),
            p2: pair.p2.render(),
            p2_prime: pair.p2_prime().render(),
            scaling_point: scaling_point.map(rat_pair),
            verdict: verdict.to_string(),
        }
    }
}
