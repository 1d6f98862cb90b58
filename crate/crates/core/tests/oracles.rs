//! Library results against brute-force oracles built from the definitions.

mod common;

use std::collections::HashMap;

use num_bigint::BigUint;
use partrank::closure::{minimal_genset_search, SearchBudget};
use partrank::invariant::double_coset_key;
use partrank::rank::rank_total;
use partrank::transformation::membership;
use partrank::Membership;

use common::*;

#[test]
fn orders_match_enumeration() {
    for n in 1..=5 {
        for part in partitions(n) {
            let elements = all_of_t(&part);
            assert_eq!(BigUint::from(brute_force_order_t(&part)), part.order_t(), "{part}");
            assert_eq!(BigUint::from(elements.len()), part.order_t(), "{part}");
            let sigma = elements.iter().filter(|f| {
                let mut bm = block_map(&part, f);
                bm.sort_unstable();
                bm.dedup();
                bm.len() == part.num_blocks()
            });
            assert_eq!(BigUint::from(sigma.count()), part.order_sigma(), "{part}");
            let units = elements.iter().filter(|f| f.is_permutation()).count() as u64;
            assert_eq!(units, order_s(&part), "{part}");
            assert_eq!(BigUint::from(units), part.order_s(), "{part}");
        }
    }
}

#[test]
fn membership_matches_definitions() {
    for part in partitions(4) {
        for f in all_of_t(&part) {
            let mut bm = block_map(&part, &f);
            let expected = if f.is_permutation() {
                Membership::InS
            } else {
                bm.sort_unstable();
                bm.dedup();
                if bm.len() == part.num_blocks() {
                    Membership::InSigma
                } else {
                    Membership::InT
                }
            };
            assert_eq!(membership(&part, &f), expected, "{part} {f}");
        }
    }
}

/// The double-coset key must induce exactly the partition of `T` into
/// `S f S` classes, for every partition of at most six points.
#[test]
fn double_coset_key_is_complete() {
    for n in 1..=6 {
        for part in partitions(n) {
            let elements = all_of_t(&part);
            let units = all_units(&part);
            let labels = double_coset_labels(&elements, &units);
            let mut by_key: HashMap<_, usize> = HashMap::new();
            let mut by_label: HashMap<usize, _> = HashMap::new();
            for (f, &label) in elements.iter().zip(&labels) {
                let key = double_coset_key(&part, f).unwrap();
                assert_eq!(*by_key.entry(key.clone()).or_insert(label), label, "{part}: {f} key collides");
                assert_eq!(*by_label.entry(label).or_insert(key.clone()), key, "{part}: {f} coset split");
            }
        }
    }
}

#[test]
fn search_agrees_with_formula_whenever_feasible() {
    for n in 1..=4 {
        for part in partitions(n) {
            if part.order_t() > BigUint::from(200u32) {
                continue;
            }
            let outcome = minimal_genset_search(&part, &SearchBudget::default()).unwrap();
            assert_eq!(outcome.rank(), Some(rank_total(&part).total), "{part}");
        }
    }
}
