use std::collections::BTreeSet;

use plabic_kappa::fixtures::{shark, SHARK};
use plabic_kappa::plabic::build_rectangles_model;
use plabic_kappa::{KSubset, PlabicModel};

fn subsets(k: usize, n: usize) -> BTreeSet<KSubset> {
    KSubset::all(k, n).into_iter().collect()
}

#[test]
fn shark_structure() {
    let m = shark();
    assert_eq!(m.faces().len(), 6);
    assert_eq!(m.face_name(m.star()), "12");
    let interior: Vec<String> = (0..6).filter(|&f| !m.faces()[f].on_boundary).map(|f| m.face_name(f)).collect();
    assert_eq!(interior, ["24"]);
    let mut p = subsets(2, 5);
    p.remove(&KSubset::parse("45", 5).unwrap());
    assert_eq!(m.positroid().unwrap(), p);
    let (_, star) = m.base_matching().unwrap();
    assert_eq!(star.to_string(), "35");
}

#[test]
fn shark_dual_quiver() {
    let m = shark();
    let mut arrows: Vec<(String, String)> =
        m.arrows().iter().map(|a| (m.face_name(a.tail), m.face_name(a.head))).collect();
    arrows.sort();
    let mut expected: Vec<(String, String)> = [
        ("23", "12"),
        ("23", "34"),
        ("12", "15"),
        ("24", "23"),
        ("15", "14"),
        ("24", "14"),
        ("12", "24"),
        ("34", "24"),
        ("14", "12"),
        ("14", "34"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    expected.sort();
    assert_eq!(arrows, expected);
}

#[test]
fn text_round_trip() {
    let m = shark();
    let again = PlabicModel::parse(&m.to_text()).unwrap();
    assert_eq!(again.to_text(), m.to_text());
    assert_eq!(PlabicModel::parse(SHARK).unwrap().to_text(), m.to_text());
}

#[test]
fn parse_errors_carry_lines() {
    let bad = SHARK.replace("node B3 white", "node B3 green");
    match PlabicModel::parse(&bad) {
        Err(plabic_kappa::Error::Parse { line, .. }) => assert_eq!(line, 5),
        other => panic!("unexpected {other:?}"),
    }
    let broken = SHARK.replace("rot B1 e7 e6 e8", "rot B1 e6 e7 e8");
    assert!(matches!(PlabicModel::parse(&broken), Err(plabic_kappa::Error::Invariant { .. })));
}

#[test]
fn rectangles_models_have_full_positroid() {
    for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5), (3, 6), (1, 4), (3, 4)] {
        let m = build_rectangles_model(k, n).unwrap();
        assert_eq!(m.faces().len(), k * (n - k) + 1, "faces of ({k},{n})");
        assert_eq!(m.positroid().unwrap(), subsets(k, n), "positroid of ({k},{n})");
        let (_, star) = m.base_matching().unwrap();
        assert_eq!(star, KSubset::interval(n, n - k + 1, k).unwrap());
        assert_eq!(m.face_name(m.star()), KSubset::interval(n, 1, k).unwrap().to_string());
    }
}

#[test]
fn flows_match_matchings() {
    for m in [shark(), build_rectangles_model(2, 5).unwrap(), build_rectangles_model(3, 6).unwrap()] {
        let (base, star) = m.base_matching().unwrap();
        for i in m.positroid().unwrap() {
            let flows = m.flows(&i, &base, &star).unwrap();
            let mut from_flows: Vec<Vec<i64>> = Vec::new();
            for f in &flows {
                let mt = m.matching_of_flow(f, &base);
                assert_eq!(m.boundary_value(&mt), i);
                let w = m.flow_weight(f, &base);
                assert_eq!(w, m.matching_weight(&mt, &base).unwrap(), "weight of {i}");
                from_flows.push(w);
            }
            let mut from_matchings: Vec<Vec<i64>> =
                m.matchings_with_boundary(&i).iter().map(|mt| m.matching_weight(mt, &base).unwrap()).collect();
            from_flows.sort();
            from_matchings.sort();
            assert_eq!(from_flows, from_matchings, "flows of {i}");
        }
    }
}

#[test]
fn square_move_round_trip() {
    let m = build_rectangles_model(2, 4).unwrap();
    let f = m.face_by_name("13").unwrap();
    let moved = m.square_move(f).unwrap();
    assert!(moved.face_by_name("24").is_ok());
    assert_eq!(moved.positroid().unwrap(), subsets(2, 4));
    let back = moved.square_move(moved.face_by_name("24").unwrap()).unwrap();
    let names: BTreeSet<String> = back.face_names().into_iter().collect();
    let orig: BTreeSet<String> = m.face_names().into_iter().collect();
    assert_eq!(names, orig);
    assert!(m.square_move(m.star()).is_err());
}
