mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{max_diag_oracle, path_rows, subset};
use plabic_kappa::combinat::{max_diag, necklace_check, necklace_of_positroid, weakly_separated, young_of};
use plabic_kappa::{Error, KSubset};

/// No `a < b < c < d` alternating between `I∖J` and `J∖I`.
fn weakly_separated_oracle(i: &KSubset, j: &KSubset) -> bool {
    let only_i: Vec<usize> = i.minus(j);
    let only_j: Vec<usize> = j.minus(i);
    let alternates = |x: &[usize], y: &[usize]| {
        x.iter().any(|&a| {
            y.iter().filter(|&&b| b > a).any(|&b| x.iter().filter(|&&c| c > b).any(|&c| y.iter().any(|&d| d > c)))
        })
    };
    !alternates(&only_i, &only_j) && !alternates(&only_j, &only_i)
}

fn arb_subset(n: usize) -> impl Strategy<Value = KSubset> {
    (1..n).prop_flat_map(move |k| {
        proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(move |v| KSubset::new(n, v).unwrap())
    })
}

fn arb_pair(n: usize) -> impl Strategy<Value = (KSubset, KSubset)> {
    (1..n).prop_flat_map(move |k| {
        let pick = move || {
            proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(move |v| KSubset::new(n, v).unwrap())
        };
        (pick(), pick())
    })
}

#[test]
fn parse_forms_agree() {
    assert_eq!(subset("1457", 9), KSubset::parse("1,4,5,7", 9).unwrap());
    assert_eq!(KSubset::parse("2,11", 12).unwrap().to_string(), "2,11");
    assert!(matches!(KSubset::parse("211", 12), Err(Error::Parameter(_))));
    assert!(matches!(KSubset::parse("10", 9), Err(Error::Parameter(_))));
}

#[test]
fn max_diag_matches_cell_count() {
    for (k, n) in [(2, 5), (3, 6), (3, 7)] {
        let all = KSubset::all(k, n);
        for j in &all {
            for i in &all {
                assert_eq!(max_diag(j, i) as i64, max_diag_oracle(j, i), "J = {j}, I = {i}");
            }
        }
    }
}

#[test]
fn young_diagrams_follow_the_lattice_path() {
    for i in KSubset::all(3, 7) {
        let y = young_of(&i);
        assert_eq!(y.parts, path_rows(&i), "{i}");
        assert_eq!(y.to_subset(), i);
    }
}

#[test]
fn uniform_positroid_necklace_is_intervals() {
    for (k, n) in [(2, 5), (3, 7)] {
        let all: BTreeSet<KSubset> = KSubset::all(k, n).into_iter().collect();
        let necklace = necklace_of_positroid(&all).unwrap();
        let intervals: Vec<KSubset> = (1..=n).map(|i| KSubset::interval(n, i, k).unwrap()).collect();
        assert_eq!(necklace, intervals);
        assert!(necklace_check(&necklace).unwrap().holds());
    }
}

#[test]
fn broken_necklace_is_rejected() {
    let mut seq: Vec<KSubset> = (1..=5).map(|i| KSubset::interval(5, i, 2).unwrap()).collect();
    seq.swap(1, 3);
    assert!(!necklace_check(&seq).unwrap().holds());
}

proptest! {
    #[test]
    fn weak_separation_matches_the_alternation_oracle((i, j) in arb_pair(8)) {
        let ws = weakly_separated(&i, &j).unwrap();
        prop_assert_eq!(ws, weakly_separated_oracle(&i, &j));
        prop_assert_eq!(ws, weakly_separated(&j, &i).unwrap());
    }

    #[test]
    fn subset_text_round_trips(i in arb_subset(9)) {
        prop_assert_eq!(KSubset::parse(&i.to_string(), 9).unwrap(), i);
    }

    #[test]
    fn max_diag_vanishes_on_the_diagonal(i in arb_subset(8)) {
        prop_assert_eq!(max_diag(&i, &i), 0);
    }
}
