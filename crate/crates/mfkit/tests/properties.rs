//! Property tests for the arithmetic and ideal layers.

use mfkit::groebner::{groebner, ideal_equal};
use mfkit::poly::{Monomial, PolyRing, Polynomial};
use mfkit::{poly_parse, CoeffField, MonomialOrder, Scalar};
use proptest::prelude::*;

fn ring() -> PolyRing {
    PolyRing::new(&["x", "y", "z"], CoeffField::Rational)
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..4, 3),
            -6i64..=6,
        ),
        0..5,
    )
    .prop_map(|terms| {
        let r = ring();
        let mut p = r.zero();
        for (exps, c) in terms {
            p.add_term(Monomial(exps), Scalar::from_i64(CoeffField::Rational, c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let ab = a.add(&b).unwrap();
        let ba = b.add(&a).unwrap();
        prop_assert_eq!(&ab, &ba);
        let assoc1 = ab.mul(&c).unwrap();
        let assoc2 = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&assoc1, &assoc2);
        let m1 = a.mul(&b).unwrap().mul(&c).unwrap();
        let m2 = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&m1, &m2);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn local_unit_is_multiplicative(a in arb_poly(), b in arb_poly()) {
        let prod = a.mul(&b).unwrap();
        prop_assert_eq!(prod.is_local_unit(), a.is_local_unit() && b.is_local_unit());
    }

    #[test]
    fn print_parse_roundtrip(a in arb_poly()) {
        let r = ring();
        let back = poly_parse(&a.to_string(), &r).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn sub_of_self_is_zero(a in arb_poly()) {
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn normal_form_idempotent(
        gens in proptest::collection::vec(arb_poly(), 1..3),
        probe in arb_poly(),
    ) {
        let r = ring();
        let order = MonomialOrder::degrevlex(3);
        let gb = groebner(&r, &gens, &order).unwrap();
        let nf = gb.normal_form(&probe);
        prop_assert_eq!(gb.normal_form(&nf), nf);
        for g in &gens {
            prop_assert!(gb.normal_form(g).is_zero());
        }
    }

    #[test]
    fn ideal_equal_is_an_equivalence(
        gens in proptest::collection::vec(arb_poly(), 1..3),
        extra in arb_poly(),
    ) {
        let r = ring();
        let order = MonomialOrder::degrevlex(3);
        // Reflexive, and invariant under shuffling plus unit scaling.
        prop_assert!(ideal_equal(&r, &gens, &gens, &order).unwrap());
        let mut shuffled: Vec<Polynomial> = gens.iter().rev().cloned().collect();
        shuffled[0] = shuffled[0].scale(&Scalar::from_i64(CoeffField::Rational, -7));
        prop_assert!(ideal_equal(&r, &gens, &shuffled, &order).unwrap());
        // Symmetric on that pair.
        prop_assert!(ideal_equal(&r, &shuffled, &gens, &order).unwrap());
        // Transitive through a third presentation: adjoin a member.
        let gb = groebner(&r, &gens, &order).unwrap();
        let mut with_member = gens.clone();
        let member = extra.mul(&gens[0]).unwrap();
        with_member.push(member);
        prop_assert!(ideal_equal(&r, &shuffled, &with_member, &order).unwrap());
        prop_assert!(ideal_equal(&r, &gens, &with_member, &order).unwrap());
        // Membership consistency: adjoining g leaves the ideal unchanged
        // exactly when g reduces to zero.
        let probe = extra;
        let mut with_probe = gens.clone();
        with_probe.push(probe.clone());
        prop_assert_eq!(
            ideal_equal(&r, &gens, &with_probe, &order).unwrap(),
            gb.normal_form(&probe).is_zero()
        );
    }
}
