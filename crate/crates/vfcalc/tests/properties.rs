//! Algebraic laws of the bracket and the word table, on randomized
//! polynomial fields in three variables.

use polyalg::{MultiPoly, Rational, RationalFn};
use proptest::prelude::*;
use vfcalc::{build_words, lambda_i_symbolic, lie_bracket, VectorField, Word};

const DIM: usize = 3;

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0u32..=2, DIM), -9i64..=9),
        0..=3,
    )
    .prop_map(|terms| {
        let mut acc = MultiPoly::zero(DIM);
        for (exps, c) in terms {
            acc = &acc + &MultiPoly::monomial(DIM, exps, Rational::from_integer(c.into()));
        }
        acc
    })
}

fn arb_field() -> impl Strategy<Value = VectorField> {
    proptest::collection::vec(arb_poly(), DIM).prop_map(|comps| {
        VectorField::new(comps.into_iter().map(RationalFn::from_poly).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bracket_is_antisymmetric(x in arb_field(), y in arb_field()) {
        let xy = lie_bracket(&x, &y).unwrap();
        let yx = lie_bracket(&y, &x).unwrap();
        prop_assert_eq!(xy, -&yx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bracket_satisfies_jacobi(x in arb_field(), y in arb_field(), z in arb_field()) {
        let a = lie_bracket(&lie_bracket(&x, &y).unwrap(), &z).unwrap();
        let b = lie_bracket(&lie_bracket(&y, &z).unwrap(), &x).unwrap();
        let c = lie_bracket(&lie_bracket(&z, &x).unwrap(), &y).unwrap();
        prop_assert!((&(&a + &b) + &c).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn table_entries_follow_the_recursion(x1 in arb_field(), x2 in arb_field()) {
        let table = build_words(&x1, &x2, 3).unwrap();
        for (word, field) in table.entries() {
            if let Some((parent, letter)) = word.parent() {
                let parent_field = table.get(&parent).unwrap();
                let base = if letter == 1 { &x1 } else { &x2 };
                prop_assert_eq!(field, &lie_bracket(parent_field, base).unwrap());
            }
        }
    }

    #[test]
    fn repeated_rows_kill_the_determinant(x1 in arb_field(), x2 in arb_field()) {
        let table = build_words(&x1, &x2, 2).unwrap();
        let tuple = [
            Word::parse("1").unwrap(),
            Word::parse("2").unwrap(),
            Word::parse("1").unwrap(),
        ];
        prop_assert!(lambda_i_symbolic(&table, &tuple).unwrap().is_zero());
    }
}
