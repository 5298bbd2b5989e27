mod common;

use proptest::prelude::*;
use qlat::buried::buried3;
use qlat::enumerate::{box_search, enumerate_binary_by_det, is_primitive, short_vectors};
use qlat::local::buried_in_genus;
use qlat::Lattice;

#[test]
fn embeds_agrees_with_brute_force() {
    let (pairs, bad) = common::embed_mismatches();
    assert!(pairs > 10_000, "corpus too small: {pairs}");
    assert!(bad.is_empty(), "{} mismatches, first {:?}", bad.len(), bad.first());
}

#[test]
fn global_representations_are_local() {
    let (checked, bad) = common::zp_violations();
    assert!(checked > 500);
    assert!(bad.is_empty(), "{:?}", bad.first());
}

#[test]
fn short_vectors_match_box_search() {
    let (n, bad) = common::shortvec_mismatches();
    assert!(n > 100);
    assert_eq!(bad, 0);
}

fn small_lattice() -> impl Strategy<Value = Lattice> {
    (1i128..8, 1i128..8, 1i128..8, 1i128..8, prop::collection::vec(-3i128..4, 6)).prop_filter_map(
        "positive definite",
        |(a, b, c, d, o)| Lattice::from_rows(&[[a, o[0], o[1], o[2]], [o[0], b, o[3], o[4]], [o[1], o[3], c, o[5]], [o[2], o[4], o[5], d]]).ok(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_quaternaries_short_vectors(l in small_lattice(), bound in 1i128..20) {
        prop_assert_eq!(short_vectors(&l, bound).vectors, box_search(&l, bound));
    }
}

/// Pairs of primitive binaries of equal determinant `d ≤ 40`.
fn equal_det_pairs(max_d: i128) -> Vec<(Lattice, Lattice)> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let cls: Vec<Lattice> = enumerate_binary_by_det(d).into_iter().filter(is_primitive).collect();
        for i in 0..cls.len() {
            for j in i..cls.len() {
                out.push((cls[i].clone(), cls[j].clone()));
            }
        }
    }
    out
}

#[test]
fn buried_implies_buried_in_genus() {
    for (l1, l2) in equal_det_pairs(40) {
        let v = buried3(&l1, &l2, 4 * l1.det()).unwrap();
        if v.is_buried() {
            assert!(buried_in_genus(&l1, &l2, 3), "{:?} {:?}", l1.gram(), l2.gram());
            let w = v.witness.unwrap();
            assert_eq!(w.rank(), 3);
            assert!(common::embeds_oracle(&l1, &w) && common::embeds_oracle(&l2, &w));
        }
    }
}

/// Pairs not buried in a genus cannot be buried, whatever the bound.
#[test]
fn genus_obstruction_is_respected() {
    let mut seen = 0;
    for (l1, l2) in equal_det_pairs(60) {
        if !buried_in_genus(&l1, &l2, 3) {
            seen += 1;
            assert!(!buried3(&l1, &l2, 8 * l1.det()).unwrap().is_buried());
        }
    }
    assert!(seen > 0);
}

#[test]
fn displayed_codimension_one_criterion() {
    let (cases, bad) = common::codimension_one_mismatches();
    assert!(cases > 100_000);
    assert_eq!(bad, 0);
}
