mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{max_diag_oracle, subset};
use plabic_kappa::cones::gt_inequalities;
use plabic_kappa::fixtures::shark;
use plabic_kappa::plabic::build_rectangles_model;
use plabic_kappa::seeds::{trop_a_mutate, Quiver, Seed};
use plabic_kappa::{Error, KSubset, LatticeMap, LatticeVector};

fn mutable(seed: &Seed) -> Vec<usize> {
    (0..seed.quiver().rank()).filter(|&j| !seed.quiver().is_frozen(j)).collect()
}

#[test]
fn rectangles_quiver_gr24() {
    let s = Seed::rectangles(2, 4).unwrap();
    let q = s.quiver();
    let arrow = |a: &str, b: &str| q.b(q.index(a).unwrap(), q.index(b).unwrap());
    // T_12 → T_11, T_21 → T_11, T_11 → T_22, T_11 → T_∅, T_∅ → T_21, T_∅ → T_12.
    assert_eq!(arrow("14", "13"), 1);
    assert_eq!(arrow("23", "13"), 1);
    assert_eq!(arrow("13", "34"), 1);
    assert_eq!(arrow("13", "12"), 1);
    assert_eq!(arrow("12", "23"), 1);
    assert_eq!(arrow("12", "14"), 1);
    assert_eq!(mutable(&s).len(), 1);
    assert_eq!(s.star_name(), "12");
    assert_eq!(s.quiver().name(s.j_star().unwrap()), "34");
}

#[test]
fn kappa_matches_cell_count_oracle() {
    for (k, n) in [(2, 5), (3, 6), (4, 9)] {
        let s = Seed::rectangles(k, n).unwrap();
        for i in KSubset::all(k, n) {
            let v = s.kappa(&i).unwrap();
            for (t, j) in s.labels().iter().enumerate() {
                assert_eq!(v.coords()[t], max_diag_oracle(j, &i), "κ({j}, {i})");
            }
        }
    }
}

#[test]
fn kappa_gr49_example() {
    let s = Seed::rectangles(4, 9).unwrap();
    let v = s.kappa(&subset("1457", 9)).unwrap();
    assert_eq!(v.get(s.star_name()), Some(0));
    assert_eq!(v.get("1235"), Some(0));
    assert_eq!(v.get("6789"), Some(3));
    let gt = gt_inequalities(4, 9).unwrap();
    assert!(gt.contains(1, &v).unwrap());
    let all: BTreeSet<Vec<i64>> = KSubset::all(4, 9).iter().map(|i| s.kappa(i).unwrap().coords().to_vec()).collect();
    assert_eq!(all.len(), 126);
}

fn assert_beta_identities(s: &Seed) {
    let maps = s.wt_maps().unwrap();
    let beta = s.beta();
    let wb = maps.wt.compose(&beta).unwrap();
    for (c, l) in wb.domain().labels().iter().enumerate() {
        if l == s.star_name() {
            continue;
        }
        for (r, m) in wb.codomain().labels().iter().enumerate() {
            assert_eq!(wb.entry(r, c), -i64::from(l == m), "wt∘β at ({m}, {l})");
        }
    }
    let rb = maps.rk.compose(&beta).unwrap();
    assert!((0..rb.domain().rank()).all(|c| rb.entry(0, c) == 0));
    let ones = LatticeVector::from_coords(beta.domain(), vec![1; beta.domain().rank()]).unwrap();
    assert!(beta.apply(&ones).unwrap().is_zero());
    let id = maps.wt_tilde.compose(&maps.beta_tilde).unwrap();
    assert_eq!(id, LatticeMap::identity(id.domain()));
    let id = maps.beta_tilde.compose(&maps.wt_tilde).unwrap();
    assert_eq!(id, LatticeMap::identity(id.domain()));
    let js = maps.wt_tilde.column(s.j_star().unwrap());
    assert_eq!(js.get("r"), Some(1));
    assert_eq!(js.coords().iter().filter(|&&x| x != 0).count(), 1);
}

#[test]
fn beta_identities_on_rectangles_and_mutations() {
    for (k, n) in [(2, 4), (2, 5), (3, 6), (3, 7)] {
        let s = Seed::rectangles(k, n).unwrap();
        assert_beta_identities(&s);
        for j in mutable(&s) {
            let Ok(t) = s.mutate(j) else { continue };
            assert_beta_identities(&t);
            for l in mutable(&t) {
                if let Ok(u) = t.mutate(l) {
                    assert_beta_identities(&u);
                }
            }
        }
    }
}

#[test]
fn shark_has_no_j_star() {
    let s = Seed::from_model(&shark()).unwrap();
    let beta = s.beta();
    let j = s.quiver().index("24").unwrap();
    assert_eq!(beta.column(j).coords().iter().sum::<i64>(), 0);
    assert!(matches!(s.wt_maps(), Err(Error::Invariant { .. })));
}

#[test]
fn label_mutation_agrees_with_square_move() {
    for (k, n) in [(2, 5), (3, 6)] {
        let model = build_rectangles_model(k, n).unwrap();
        let seed = Seed::from_model(&model).unwrap();
        for j in mutable(&seed) {
            let f = model.face_by_name(seed.quiver().name(j)).unwrap();
            if !model.is_square(f) {
                assert!(matches!(seed.mutate(j), Err(Error::NotPlabicMutable(_))));
                continue;
            }
            let moved = Seed::from_model(&model.square_move(f).unwrap()).unwrap();
            let mutated = seed.mutate(j).unwrap();
            assert!(moved.quiver().same_as(mutated.quiver()), "quiver after move at {}", seed.quiver().name(j));
            let a: BTreeSet<_> = moved.labels().iter().cloned().collect();
            let b: BTreeSet<_> = mutated.labels().iter().cloned().collect();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn frozen_and_non_plabic_mutations_fail() {
    let s = Seed::rectangles(3, 6).unwrap();
    assert!(matches!(s.mutate(s.star()), Err(Error::NotMutable(_))));
    assert!(matches!(s.quiver().fz_mutate(s.star()), Err(Error::NotMutable(_))));
    // The T_22 vertex of Gr(3,6) has six neighbours.
    let j = s.quiver().index("145").unwrap();
    assert!(matches!(s.mutate(j), Err(Error::NotPlabicMutable(_))));
}

#[test]
fn kappa_compatibility_of_tropical_mutation() {
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        let s = Seed::rectangles(k, n).unwrap();
        for j in mutable(&s) {
            let Ok(t) = s.mutate(j) else { continue };
            let old = s.quiver().name(j).to_string();
            let new = t.quiver().name(j).to_string();
            for i in KSubset::all(k, n) {
                let moved = trop_a_mutate(s.quiver(), j, &s.kappa(&i).unwrap()).unwrap();
                let expected = t.kappa(&i).unwrap();
                let renamed = moved.with_lattice(&moved.lattice().renamed(&old, &new).unwrap()).unwrap();
                assert_eq!(renamed, expected, "({k},{n}) at {old}, I = {i}");
            }
        }
    }
}

#[test]
fn fz_mutation_is_an_involution() {
    for (k, n) in [(2, 5), (3, 6), (3, 7)] {
        let q = Seed::rectangles(k, n).unwrap().quiver().clone();
        for j in (0..q.rank()).filter(|&j| !q.is_frozen(j)) {
            let back = q.fz_mutate(j).unwrap().fz_mutate(j).unwrap().renamed(j, q.name(j)).unwrap();
            assert_eq!(back, q);
        }
    }
}

fn gr36_quiver() -> Quiver {
    Seed::rectangles(3, 6).unwrap().quiver().clone()
}

proptest! {
    #[test]
    fn tropical_mutation_involution(coords in prop::collection::vec(-20i64..20, 10), pick in 0usize..4) {
        let q = gr36_quiver();
        let lattice = q.lattice();
        let v = LatticeVector::from_coords(&lattice, coords).unwrap();
        let js: Vec<usize> = (0..q.rank()).filter(|&j| !q.is_frozen(j)).collect();
        let j = js[pick % js.len()];
        let once = trop_a_mutate(&q, j, &v).unwrap();
        let mq = q.fz_mutate(j).unwrap().renamed(j, q.name(j)).unwrap();
        prop_assert_eq!(trop_a_mutate(&mq, j, &once).unwrap(), v);
    }

    #[test]
    fn kappa_is_injective_and_zero_at_base(k in 1usize..4, extra in 1usize..4) {
        let n = k + extra;
        prop_assume!(n >= 3);
        let s = Seed::rectangles(k, n).unwrap();
        let pts: BTreeSet<Vec<i64>> =
            KSubset::all(k, n).iter().map(|i| s.kappa(i).unwrap().coords().to_vec()).collect();
        prop_assert_eq!(pts.len(), KSubset::all(k, n).len());
        let top = KSubset::interval(n, n - k + 1, k).unwrap();
        prop_assert!(s.kappa(&top).unwrap().is_zero());
    }
}
