//! Property tests for the structural invariants: reduction, serialization
//! round-trips, the affine cluster law, and the chain equations.

use num_traits::Zero;
use proptest::prelude::*;

use birquartic::degree::{DegreeVector, Generator};
use birquartic::incidence::config;
use birquartic::lattice::chain_pullback;
use birquartic::rat::{fmt_rat, parse_rat, rat, ratio, Rat};
use birquartic::word::{cluster_normal_form, free_reduce, ClusterElement, Word};

proptest! {
    #[test]
    fn rational_strings_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let r = ratio(n, d);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn free_reduction_is_idempotent_and_cancels_inverses(letters in proptest::collection::vec(0usize..4, 0..40)) {
        let _cfg = config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1", "P2"], false)],
        );
        let pool = [
            Generator::point("P1"),
            Generator::point("P2"),
            Generator::line("L1"),
            Generator::pair("P1", "P2", "L1"),
        ];
        let w = Word::new(letters.iter().map(|&i| pool[i].clone()).collect());
        let once = free_reduce(&w);
        prop_assert_eq!(free_reduce(&once).letters.len(), once.letters.len());
        // No adjacent equal letters remain.
        prop_assert!(once.letters.windows(2).all(|p| p[0] != p[1]));
        // A word followed by its reverse telescopes away entirely.
        let mut doubled = w.letters.clone();
        doubled.extend(w.letters.iter().rev().cloned());
        prop_assert!(free_reduce(&Word::new(doubled)).letters.is_empty());
    }

    #[test]
    fn cluster_law_is_associative_with_multiplicative_parity(
        coords in proptest::collection::vec((-20i64..20, -20i64..20), 3),
        signs in proptest::collection::vec(proptest::bool::ANY, 3),
    ) {
        let elems: Vec<ClusterElement> = coords
            .iter()
            .zip(&signs)
            .map(|(&(a, b), &s)| ClusterElement {
                parity: if s { 1 } else { -1 },
                translation: vec![a, b],
            })
            .collect();
        let left = elems[0].compose(&elems[1]).compose(&elems[2]);
        let right = elems[0].compose(&elems[1].compose(&elems[2]));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(
            left.parity,
            elems.iter().map(|e| e.parity).product::<i8>()
        );
    }

    #[test]
    fn squares_of_cluster_words_are_translations(letters in proptest::collection::vec(0usize..3, 1..12)) {
        let cfg = config(
            &[("P1", false), ("P2", false), ("P3", false)],
            &[("L1", &["P1", "P2", "P3"], false)],
        );
        let pool = [Generator::point("P1"), Generator::point("P2"), Generator::point("P3")];
        let mut word: Vec<Generator> = letters.iter().map(|&i| pool[i].clone()).collect();
        let copy = word.clone();
        word.extend(copy);
        let (_, elem) = cluster_normal_form(&cfg, &Word::new(word)).unwrap();
        prop_assert_eq!(elem.parity, 1);
    }

    #[test]
    fn degree_vector_json_round_trips(
        mu_num in 1i64..10_000,
        nu1 in 0i64..10_000,
        nu2 in 0i64..10_000,
        denom in 1i64..50,
    ) {
        let cfg = config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1", "P2"], false)],
        );
        let v = DegreeVector::new(
            ratio(mu_num, denom),
            [("P1".into(), ratio(nu1, denom)), ("P2".into(), ratio(nu2, denom))].into(),
            [("L1".into(), rat(0))].into(),
        )
        .unwrap();
        let back = DegreeVector::from_json(&v.to_json().to_string(), &cfg).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn chain_pullback_satisfies_its_defining_equations(k in 1usize..60) {
        let a = chain_pullback(k);
        let get = |t: i64| -> Rat {
            if t == 0 || t == k as i64 + 1 {
                // Boundary convention: a_0 = 0 and the transverse curve
                // contributes 1 at the far end.
                if t == 0 { Rat::zero() } else { rat(1) }
            } else {
                a[(t - 1) as usize].clone()
            }
        };
        for t in 1..=k as i64 {
            let residual = get(t + 1) - rat(2) * get(t) + get(t - 1);
            prop_assert!(residual.is_zero(), "equation at t = {} fails", t);
        }
    }
}
