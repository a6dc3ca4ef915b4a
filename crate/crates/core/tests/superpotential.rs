use std::collections::BTreeSet;

use num_bigint::BigInt;

use plabic_kappa::cones::{cone_from_tropical, gt_inequalities};
use plabic_kappa::seeds::{trop_a_mutate, Seed};
use plabic_kappa::superpotential::{
    a_mutate_w, beta_dual_image, gvector_cone_image, q_lattice, quotient_f_polynomial, verify_wformula, w_rectangles,
    w_x_rectangles, w_x_summands, Q_LABEL,
};
use plabic_kappa::{LatticeVector, LaurentPoly};

#[test]
fn rectangles_superpotential_gr24() {
    let w = w_rectangles(2, 4).unwrap();
    // p13/p12 + p14/p13 + p23/p13 + p34 p12/(p13 p14) + p34 p12/(p13 p23) + q p13/p34.
    let l = w.lattice().clone();
    let mono = |pairs: &[(&str, i64)]| {
        let mut exp = vec![0i64; l.rank()];
        for &(x, e) in pairs {
            exp[l.require(x).unwrap()] += e;
        }
        LaurentPoly::monomial(&l, exp, BigInt::from(1))
    };
    let expected = [
        mono(&[("13", 1), ("12", -1)]),
        mono(&[("14", 1), ("13", -1)]),
        mono(&[(Q_LABEL, 1), ("13", 1), ("34", -1)]),
        mono(&[("23", 1), ("13", -1)]),
        mono(&[("34", 1), ("12", 1), ("13", -1), ("14", -1)]),
        mono(&[("34", 1), ("12", 1), ("13", -1), ("23", -1)]),
    ]
    .iter()
    .fold(LaurentPoly::zero(&l), |acc, m| acc.add(m).unwrap());
    assert_eq!(w, expected);
}

#[test]
fn superpotential_term_counts() {
    for (k, n) in [(2, 4), (2, 5), (3, 6), (3, 7), (4, 8)] {
        let m = n - k;
        assert_eq!(w_rectangles(k, n).unwrap().len(), 2 + k * (m - 1) + (k - 1) * m, "Gr({k},{n})");
        let summands = w_x_summands(k, n).unwrap();
        assert_eq!(summands.len(), n);
        let terms: usize = summands.iter().map(|s| s.factors.len() + 1).sum();
        assert_eq!(w_x_rectangles(k, n).unwrap().len(), terms);
    }
}

#[test]
fn quotient_f_polynomial_of_a_uniserial_module() {
    let l = plabic_kappa::Lattice::new(["a", "b", "c"]).unwrap();
    let f = quotient_f_polynomial(&l, &["a".into(), "b".into(), "c".into()]).unwrap();
    let terms: BTreeSet<Vec<i64>> = f.terms().map(|(e, _)| e.clone()).collect();
    let expected: BTreeSet<Vec<i64>> = [vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]].into();
    assert_eq!(terms, expected);
}

#[test]
fn module_and_rectangles_superpotentials_agree() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6), (3, 7)] {
        let report = verify_wformula(k, n).unwrap();
        assert!(report.ok, "Gr({k},{n}): {}", report.diff().unwrap().pretty(&|l| l.to_string()));
        assert!(report.diff().unwrap().is_zero());
    }
}

#[test]
fn gvector_image_is_gt() {
    for (k, n) in [(2, 4), (2, 5), (3, 6), (3, 7)] {
        assert!(gvector_cone_image(k, n).unwrap().canonical_eq(&gt_inequalities(k, n).unwrap()));
    }
}

#[test]
fn beta_dual_image_of_a_simple() {
    let seed = Seed::rectangles(2, 4).unwrap();
    let lattice = seed.lattice();
    let js = seed.quiver().name(seed.j_star().unwrap()).to_string();
    let image = beta_dual_image(&seed, &LaurentPoly::var(&lattice, &js).unwrap()).unwrap();
    let (exp, _) = image.as_monomial().unwrap();
    assert_eq!(exp[q_lattice(&seed).require(Q_LABEL).unwrap()], 1);
}

/// Tropical A-mutation of a point agrees with evaluating the tropicalized
/// mutated superpotential: `Trop(μ_A W)(μ_A v) = Trop(W)(v)`.
#[test]
fn a_mutation_commutes_with_tropicalization() {
    for (k, n) in [(2, 5), (3, 6)] {
        let seed = Seed::rectangles(k, n).unwrap();
        let w = w_rectangles(k, n).unwrap();
        let lattice = seed.lattice();
        let trop = |p: &LaurentPoly, r: i64, v: &LatticeVector| -> i64 {
            p.terms()
                .map(|(e, _)| {
                    e.iter()
                        .zip(p.lattice().labels())
                        .map(|(x, l)| x * if l == Q_LABEL { r } else { v.get(l).unwrap() })
                        .sum::<i64>()
                })
                .min()
                .unwrap()
        };
        for j in (0..seed.quiver().rank()).filter(|&j| !seed.quiver().is_frozen(j)) {
            let Ok((moved, mw)) = a_mutate_w(&seed, &w, j) else { continue };
            let old = seed.quiver().name(j);
            let new = moved.quiver().name(j);
            for coords in [vec![0i64; lattice.rank()], (0..lattice.rank() as i64).collect(), vec![1; lattice.rank()]] {
                let v = LatticeVector::from_coords(&lattice, coords).unwrap();
                let mv = trop_a_mutate(seed.quiver(), j, &v).unwrap();
                let mv = mv.with_lattice(&mv.lattice().renamed(old, new).unwrap()).unwrap();
                assert_eq!(trop(&mw, 1, &mv), trop(&w, 1, &v), "Gr({k},{n}) at {old}");
            }
        }
    }
}

#[test]
fn mutated_superpotential_keeps_gt_points() {
    let seed = Seed::rectangles(2, 5).unwrap();
    let w = w_rectangles(2, 5).unwrap();
    let j = (0..seed.quiver().rank()).find(|&j| !seed.quiver().is_frozen(j)).unwrap();
    let (moved, mw) = a_mutate_w(&seed, &w, j).unwrap();
    let cone = cone_from_tropical(&mw, Q_LABEL, moved.star_name()).unwrap();
    for i in plabic_kappa::KSubset::all(2, 5) {
        assert!(cone.contains(1, &moved.kappa_n_star(&i).unwrap()).unwrap(), "{i}");
    }
}
