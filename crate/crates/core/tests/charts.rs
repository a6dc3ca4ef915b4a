mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{max_diag_oracle, subset};
use plabic_kappa::charts::{plucker_failures, x_mutate, Charts};
use plabic_kappa::fixtures::shark;
use plabic_kappa::plabic::build_rectangles_model;
use plabic_kappa::seeds::{Quiver, Seed};
use plabic_kappa::{Error, KSubset, LaurentPoly, PlabicModel};

fn var(p: &LaurentPoly, label: &str) -> LaurentPoly {
    LaurentPoly::var(p.lattice(), label).unwrap()
}

fn int(c: i64) -> BigInt {
    BigInt::from(c)
}

#[test]
fn shark_flow_polynomials() {
    let m = shark();
    let charts = Charts::new(&m).unwrap();
    assert_eq!(charts.base_value().to_string(), "35");
    let f = charts.flow_polynomials().unwrap();
    let f25 = &f[&subset("25", 5)];
    let y34 = var(f25, "34");
    let y24 = var(f25, "24");
    let one = LaurentPoly::one(f25.lattice());
    assert_eq!(*f25, y34.mul(&one.add(&y24).unwrap()).unwrap());
    assert_eq!(f[&subset("35", 5)], one);
    assert!(!f.contains_key(&subset("45", 5)));
    assert_eq!(f.len(), 9);
}

#[test]
fn shark_partition_functions() {
    let m = shark();
    let charts = Charts::new(&m).unwrap();
    assert!(charts.partition_function(&subset("45", 5)).is_zero());
    let p35 = charts.partition_function(&subset("35", 5));
    assert_eq!(p35.as_monomial().map(|(_, c)| c.clone()), Some(int(1)));
    let p = charts.partition_functions();
    let total: usize = p.values().map(LaurentPoly::len).sum();
    assert_eq!(total, m.matchings().len());
}

/// `val(F_I) = κ(T, M_I)` for every `I`, with a unique minimal exponent.
fn assert_valuation_is_kappa(model: &PlabicModel) {
    let charts = Charts::new(model).unwrap();
    let seed = Seed::from_model(model).unwrap();
    for (i, f) in charts.flow_polynomials().unwrap() {
        let (v, unique) = f.min_exponent(None, charts.flow_lattice().labels()).unwrap();
        assert!(unique, "F_{i} has no unique minimal term");
        assert_eq!(charts.valuation(&f).unwrap(), v);
        for (label, x) in v.to_map() {
            let j = seed.labels()[seed.quiver().index(&label).unwrap()].clone();
            assert_eq!(x, max_diag_oracle(&j, &i), "val F_{i} at {label}");
        }
        assert_eq!(v.to_map(), seed.kappa_n_star(&i).unwrap().to_map());
    }
}

#[test]
fn valuation_is_kappa_on_rectangles() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        assert_valuation_is_kappa(&build_rectangles_model(k, n).unwrap());
    }
}

#[test]
fn valuation_is_kappa_after_square_moves() {
    for (k, n) in [(2, 5), (2, 6), (3, 6)] {
        let model = build_rectangles_model(k, n).unwrap();
        for f in (0..model.faces().len()).filter(|&f| model.is_square(f)) {
            assert_valuation_is_kappa(&model.square_move(f).unwrap());
        }
    }
}

#[test]
fn valuation_on_shark() {
    let m = shark();
    let charts = Charts::new(&m).unwrap();
    let seed = Seed::from_model(&m).unwrap();
    for (i, f) in charts.flow_polynomials().unwrap() {
        assert_eq!(charts.valuation(&f).unwrap().to_map(), seed.kappa_n_star(&i).unwrap().to_map(), "{i}");
    }
}

/// `μ_X` at every square face of `model` takes the flow chart of the
/// moved graph back to the flow chart of `model`.
fn assert_x_mutation_identity(model: &PlabicModel) -> usize {
    let charts = Charts::new(model).unwrap();
    let before = charts.flow_polynomials().unwrap();
    let seed = Seed::from_model(model).unwrap();
    let mut checked = 0;
    for j in (0..seed.quiver().rank()).filter(|&j| !seed.quiver().is_frozen(j)) {
        let f = model.face_by_name(seed.quiver().name(j)).unwrap();
        if !model.is_square(f) {
            continue;
        }
        let moved = model.square_move(f).unwrap();
        let moved_charts = Charts::new(&moved).unwrap();
        let old = seed.quiver().name(j);
        let new = model.exchanged_label(f).unwrap().unwrap().to_string();
        for (i, g) in moved_charts.flow_polynomials().unwrap() {
            let g = g.rename(&new, old).unwrap().transport(charts.flow_lattice());
            assert_eq!(x_mutate(seed.quiver(), j, &g).unwrap(), before[&i], "F_{i} at {old}");
        }
        checked += 1;
    }
    checked
}

#[test]
fn x_mutation_relates_flow_charts() {
    for (k, n, squares) in [(2, 4, 1), (2, 5, 2), (3, 6, 3)] {
        let model = build_rectangles_model(k, n).unwrap();
        assert_eq!(assert_x_mutation_identity(&model), squares, "Gr({k},{n})");
    }
}

fn gr24_quiver() -> Quiver {
    Seed::rectangles(2, 4).unwrap().quiver().clone()
}

#[test]
fn x_mutation_of_monomials() {
    let q = gr24_quiver();
    let lattice = q.lattice();
    let j = q.index("13").unwrap();
    let x = |l: &str| LaurentPoly::var(&lattice, l).unwrap();
    let one = LaurentPoly::one(&lattice);
    // x_j ↦ x_j⁻¹.
    let inv = LaurentPoly::monomial(&lattice, vec![0, -1, 0, 0, 0], int(1));
    assert_eq!(x_mutate(&q, j, &x("13")).unwrap(), inv);
    // 14 → 13, so x_14 ↦ x_14 (1 + x_13).
    let expected = x("14").mul(&one.add(&x("13")).unwrap()).unwrap();
    assert_eq!(x_mutate(&q, j, &x("14")).unwrap(), expected);
    // 13 → 34 makes x_34 ↦ x_34 x_13 / (1 + x_13), which is not Laurent.
    assert!(matches!(x_mutate(&q, j, &x("34")), Err(Error::NotLaurent)));
    // Frozen vertices do not mutate.
    assert!(matches!(x_mutate(&q, q.index("12").unwrap(), &one), Err(Error::NotMutable(_))));
}

#[test]
fn plucker_relations_hold_in_both_charts() {
    let models = [
        (2, 4, build_rectangles_model(2, 4).unwrap()),
        (2, 5, build_rectangles_model(2, 5).unwrap()),
        (3, 6, build_rectangles_model(3, 6).unwrap()),
        (2, 5, shark()),
    ];
    for (k, n, m) in &models {
        let charts = Charts::new(m).unwrap();
        assert!(plucker_failures(*k, *n, &charts.partition_functions()).unwrap().is_empty());
        assert!(plucker_failures(*k, *n, &charts.flow_polynomials().unwrap()).unwrap().is_empty());
    }
}

#[test]
fn plucker_check_detects_a_wrong_coordinate() {
    let m = build_rectangles_model(2, 4).unwrap();
    let charts = Charts::new(&m).unwrap();
    let mut f: BTreeMap<KSubset, LaurentPoly> = charts.flow_polynomials().unwrap();
    let key = subset("13", 4);
    let doubled = f[&key].scale(&int(2));
    f.insert(key, doubled);
    assert_eq!(plucker_failures(2, 4, &f).unwrap().len(), 1);
}

fn gr25_flows() -> (Vec<String>, Vec<LaurentPoly>) {
    let m = build_rectangles_model(2, 5).unwrap();
    let charts = Charts::new(&m).unwrap();
    let f = charts.flow_polynomials().unwrap();
    (charts.flow_lattice().labels().to_vec(), f.into_values().collect())
}

proptest! {
    #[test]
    fn valuation_is_additive(a in 0usize..10, b in 0usize..10) {
        let (order, f) = gr25_flows();
        let v = |p: &LaurentPoly| p.min_exponent(None, &order).unwrap().0;
        let product = f[a].mul(&f[b]).unwrap();
        prop_assert_eq!(v(&product), v(&f[a]).add(&v(&f[b])).unwrap());
    }
}
