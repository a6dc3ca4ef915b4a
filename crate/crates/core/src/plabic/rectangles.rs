//! The rectangles plabic graph for `Gr(k,n)`, built as the planar dual of
//! the rectangles quiver. Faces are `T_ij` (`1 ≤ i ≤ k`, `1 ≤ j ≤ n−k`) and
//! `T_∅`; counterclockwise quiver cycles become white nodes and clockwise
//! cycles black nodes.

use std::collections::{BTreeMap, BTreeSet};

use super::{Color, PlabicModel, RawEnd, RawModel};
use crate::combinat::KSubset;
use crate::error::{param, Result};

/// `K_ij = [1, k−i] ∪ [k−i+j+1, k+j]`; `(0, 0)` stands for `T_∅ = [1,k]`.
pub fn rectangle_label(k: usize, n: usize, i: usize, j: usize) -> KSubset {
    if i == 0 || j == 0 {
        return KSubset::interval(n, 1, k).expect("k < n");
    }
    KSubset::new(n, (1..=k - i).chain(k - i + j + 1..=k + j)).expect("rectangle inside box")
}

/// Face keys: `Some((i, j))` for `T_ij`, `None` for `T_∅`.
type FaceKey = Option<(usize, usize)>;

pub fn build_rectangles_model(k: usize, n: usize) -> Result<PlabicModel> {
    if k == 0 || k >= n || n < 3 {
        return param(format!("need 1 ≤ k ≤ n−1 and n ≥ 3, got (k,n) = ({k},{n})"));
    }
    let m = n - k;
    let h = |i: usize, j: usize| format!("H{i}_{j}");
    let v = |i: usize, j: usize| format!("V{i}_{j}");
    let d = |i: usize, j: usize| format!("D{i}_{j}");

    // Arrows with tail and head faces.
    let mut arrows: Vec<(String, FaceKey, FaceKey)> = Vec::new();
    for i in 1..=k {
        for j in 1..m {
            arrows.push((h(i, j), Some((i, j + 1)), Some((i, j))));
        }
    }
    for i in 1..k {
        for j in 1..=m {
            arrows.push((v(i, j), Some((i + 1, j)), Some((i, j))));
        }
    }
    for i in 1..k {
        for j in 1..m {
            arrows.push((d(i, j), Some((i, j)), Some((i + 1, j + 1))));
        }
    }
    arrows.push(("A0".into(), Some((1, 1)), None));
    arrows.push(("AL".into(), None, Some((k, 1))));
    arrows.push(("AB".into(), None, Some((1, m))));

    // Quiver cycles (nodes) with their arrows in counterclockwise order.
    let mut nodes: Vec<(String, Color, Vec<String>)> = Vec::new();
    for i in 1..k {
        for j in 1..m {
            nodes.push((format!("w{i}_{j}"), Color::White, vec![d(i, j), h(i + 1, j), v(i, j)]));
            nodes.push((format!("b{i}_{j}"), Color::Black, vec![h(i, j), v(i, j + 1), d(i, j)]));
        }
    }
    let mut left = vec!["A0".to_string()];
    left.extend((1..k).map(|i| v(i, 1)));
    left.push("AL".into());
    nodes.push(("L".into(), Color::Black, left));
    let mut bottom = vec!["AB".to_string()];
    bottom.extend((1..m).rev().map(|j| h(1, j)));
    bottom.push("A0".into());
    nodes.push(("R".into(), Color::White, bottom));

    let mut holders: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (id, _, rot) in &nodes {
        for a in rot {
            holders.entry(a.as_str()).or_default().push(id.as_str());
        }
    }
    let boundary_label = |a: &str| -> Option<usize> {
        match a {
            "AL" => Some(1),
            "AB" => Some(n),
            _ => {
                let (kind, rest) = a.split_at(1);
                let (i, j) = rest.split_once('_')?;
                let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
                match kind {
                    "H" if i == k => Some(j + 1),
                    "V" if j == m => Some(n - i),
                    _ => None,
                }
            }
        }
    };
    let mut edges = Vec::new();
    for (id, _, _) in &arrows {
        let ends = &holders[id.as_str()];
        let edge = match ends.as_slice() {
            [a, b] => (id.clone(), RawEnd::Node(a.to_string()), RawEnd::Node(b.to_string())),
            [a] => {
                let label = boundary_label(id).expect("boundary arrow has a label");
                (id.clone(), RawEnd::Node(a.to_string()), RawEnd::Boundary(label))
            }
            _ => unreachable!("each arrow lies on one or two quiver cycles"),
        };
        edges.push(edge);
    }

    let mut spec: BTreeMap<FaceKey, BTreeSet<String>> = BTreeMap::new();
    for (id, tail, head) in &arrows {
        spec.entry(*tail).or_default().insert(id.clone());
        spec.entry(*head).or_default().insert(id.clone());
    }
    let labels = spec
        .iter()
        .map(|(key, s)| {
            let (i, j) = key.unwrap_or((0, 0));
            (s.clone(), rectangle_label(k, n, i, j))
        })
        .collect();

    let raw = RawModel {
        k,
        n,
        nodes: nodes.iter().map(|(id, c, _)| (id.clone(), *c)).collect(),
        edges,
        rotations: nodes.into_iter().map(|(id, _, rot)| (id, rot)).collect(),
        labels,
        star: Some(spec[&None].clone()),
    };
    PlabicModel::from_raw(&raw)
}
