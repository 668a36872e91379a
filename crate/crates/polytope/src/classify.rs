//! Classification of Lebesgue exponent pairs against a degree polytope,
//! cross-checked through the exponent region so the two membership routes
//! can never silently disagree.

use crate::exponents::{c_from_p, LebesguePair};
use crate::hull::{Membership, NewtonPolytope};
use crate::region::ExponentRegion;
use crate::PolytopeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The scaling point is interior: the strong-type bound holds.
    StrongType,
    /// The scaling point sits on the polytope boundary, where the method
    /// is silent: endpoint behavior is left undetermined.
    Endpoint,
    /// The scaling point is exterior: even restricted weak-type fails.
    FailsRestrictedWeakType,
    /// p₂′ ≤ p₁, where boundedness holds for free and says nothing.
    TriviallyBounded,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            Verdict::StrongType => "strong type",
            Verdict::Endpoint => "endpoint (boundary; undetermined)",
            Verdict::FailsRestrictedWeakType => "fails restricted weak type",
            Verdict::TriviallyBounded => "trivially bounded",
        };
        write!(f, "{label}")
    }
}

/// Classifies an exponent pair.  The scaling coefficients are tested
/// against the polytope, and independently the reciprocal pair
/// (1/p₁, 1/p₂′) is tested against the region; the two answers must agree
/// exactly, and any disagreement aborts with an internal error rather
/// than trusting either side.
pub fn classify_pair(
    polytope: &NewtonPolytope,
    region: &ExponentRegion,
    pair: &LebesguePair,
) -> Result<Verdict, PolytopeError> {
    if pair.is_trivially_bounded() {
        return Ok(Verdict::TriviallyBounded);
    }
    let c = c_from_p(pair)?;
    let by_polytope = polytope.membership(&c);
    let image = (pair.p1.recip(), pair.p2_prime().recip());
    let by_region = region.membership(&image);
    if by_polytope != by_region {
        return Err(PolytopeError::MembershipMismatch {
            polytope: by_polytope,
            region: by_region,
        });
    }
    Ok(match by_polytope {
        Membership::Interior => Verdict::StrongType,
        Membership::Boundary => Verdict::Endpoint,
        Membership::Exterior => Verdict::FailsRestrictedWeakType,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::PExp;
    use crate::hull::newton_polytope;
    use crate::region::exponent_region;
    use polyalg::rat;
    use vfcalc::{Degree, GeneratorWitness, Word};

    fn parabola() -> (NewtonPolytope, ExponentRegion) {
        let generators = vec![GeneratorWitness {
            degree: Degree::new(2, 2),
            words: vec![
                Word::parse("1").unwrap(),
                Word::parse("2").unwrap(),
                Word::parse("12").unwrap(),
            ],
        }];
        (
            newton_polytope(&generators).unwrap(),
            exponent_region(&generators).unwrap(),
        )
    }

    #[test]
    fn the_parabola_pairs_classify_as_expected() {
        let (polytope, region) = parabola();
        // p2' = 3 means p2 = 3/2; the scaling point is the vertex (2, 2)
        let endpoint = LebesguePair::from_values(rat(3, 2), rat(3, 2)).unwrap();
        assert_eq!(
            classify_pair(&polytope, &region, &endpoint).unwrap(),
            Verdict::Endpoint
        );
        // p2' = 4 means p2 = 4/3; the scaling point falls outside
        let failing = LebesguePair::from_values(rat(4, 3), rat(4, 3)).unwrap();
        assert_eq!(
            classify_pair(&polytope, &region, &failing).unwrap(),
            Verdict::FailsRestrictedWeakType
        );
        // p2' = 2 means p2 = 2; the scaling point (4, 3) is interior
        let strong = LebesguePair::from_values(rat(3, 2), rat(2, 1)).unwrap();
        assert_eq!(
            classify_pair(&polytope, &region, &strong).unwrap(),
            Verdict::StrongType
        );
    }

    #[test]
    fn trivial_pairs_short_circuit_before_any_membership_test() {
        let (polytope, region) = parabola();
        let on_the_line = LebesguePair::from_values(rat(2, 1), rat(2, 1)).unwrap();
        assert_eq!(
            classify_pair(&polytope, &region, &on_the_line).unwrap(),
            Verdict::TriviallyBounded
        );
        let beyond = LebesguePair::from_values(rat(3, 1), rat(3, 1)).unwrap();
        assert_eq!(
            classify_pair(&polytope, &region, &beyond).unwrap(),
            Verdict::TriviallyBounded
        );
        let identity_endpoints = LebesguePair::new(
            PExp::finite(rat(1, 1)).unwrap(),
            PExp::Infinity,
        );
        assert_eq!(
            classify_pair(&polytope, &region, &identity_endpoints).unwrap(),
            Verdict::TriviallyBounded
        );
    }

    #[test]
    fn l1_to_l1_fails_for_the_parabola() {
        let (polytope, region) = parabola();
        let ones = LebesguePair::from_values(rat(1, 1), rat(1, 1)).unwrap();
        assert_eq!(
            classify_pair(&polytope, &region, &ones).unwrap(),
            Verdict::FailsRestrictedWeakType
        );
    }
}
