mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;
use pruferlab::ideal::{
    annihilator, enumerate_ideals, ideal_colon, ideal_generated_by, ideal_intersection, ideal_predicates,
    ideal_product, ideal_sum, is_locally_principal, Ideal,
};
use pruferlab::ring::FiniteRing;
use pruferlab::Limits;

fn lattices() -> &'static [(FiniteRing, Vec<Ideal>)] {
    static CELL: OnceLock<Vec<(FiniteRing, Vec<Ideal>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        common::rings(32)
            .into_iter()
            .map(|r| {
                let ideals = enumerate_ideals(&r, &Limits::default()).unwrap();
                (r, ideals)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn ideal_arithmetic_laws(r in any::<Index>(), i in any::<Index>(), j in any::<Index>()) {
        let (ring, ideals) = r.get(lattices());
        let (i, j) = (i.get(ideals), j.get(ideals));
        let ij = ideal_product(i, j).unwrap();
        let meet = ideal_intersection(i, j).unwrap();
        prop_assert!(ij.is_subset(&meet), "{}: IJ ⊄ I ∩ J", ring.name());
        let colon = ideal_colon(i, j).unwrap();
        prop_assert!(ideal_product(&colon, j).unwrap().is_subset(i));
        prop_assert!(i.is_subset(&ideal_colon(&ij, j).unwrap()));
        let zero = ideal_generated_by(ring, &[]).unwrap();
        prop_assert_eq!(annihilator(i), ideal_colon(&zero, i).unwrap());
        let sum = ideal_sum(i, j).unwrap();
        prop_assert!(i.is_subset(&sum) && j.is_subset(&sum) && meet.is_subset(i));
    }

    #[test]
    fn regeneration_is_idempotent(r in any::<Index>(), i in any::<Index>()) {
        let (ring, ideals) = r.get(lattices());
        let i = i.get(ideals);
        let again = ideal_generated_by(ring, &i.elements()).unwrap();
        prop_assert_eq!(again.elements(), i.elements());
        let from_gens = ideal_generated_by(ring, i.generators()).unwrap();
        prop_assert_eq!(from_gens.elements(), i.elements());
    }
}

#[test]
fn principal_implies_locally_principal() {
    for (r, ideals) in lattices() {
        let local = r.is_local();
        for i in ideals {
            let principal = ideal_predicates(i).is_principal;
            let lp = is_locally_principal(i).locally_principal;
            assert!(!principal || lp, "{}: {}", r.name(), i.describe());
            if local {
                assert_eq!(principal, lp, "{}: {}", r.name(), i.describe());
            }
        }
    }
}

#[test]
fn enumeration_is_closed_and_distinct() {
    for (r, ideals) in lattices() {
        let mut seen = std::collections::HashSet::new();
        for i in ideals {
            assert!(seen.insert(i.elements()), "{} lists an ideal twice", r.name());
            assert!(i.contains(r.zero()));
            for x in i.elements() {
                for y in i.elements() {
                    assert!(i.contains(r.add(x, y)));
                }
                for a in r.elements() {
                    assert!(i.contains(r.mul(a, x)));
                }
            }
        }
        assert!(ideals.first().is_some_and(Ideal::is_zero));
        assert!(ideals.last().is_some_and(Ideal::is_whole));
    }
}
