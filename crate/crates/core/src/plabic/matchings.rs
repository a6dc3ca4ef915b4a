//! Perfect matchings, boundary values, matching weights and flows for the
//! perfect orientation of the base matching.

use std::collections::{BTreeSet, VecDeque};

use super::{Color, End, PlabicModel};
use crate::combinat::KSubset;
use crate::error::{invariant, Error, Result};

/// A perfect matching, as the sorted list of its edge indices.
pub type Matching = Vec<usize>;

/// A flow: vertex-disjoint directed paths, each given as its edge indices
/// from source to sink.
pub type Flow = Vec<Vec<usize>>;

impl PlabicModel {
    /// All perfect matchings (every internal node covered exactly once;
    /// boundary points unconstrained), sorted.
    pub fn matchings(&self) -> Vec<Matching> {
        let mut covered = vec![false; self.nodes.len()];
        let mut current = Vec::new();
        let mut out = Vec::new();
        self.extend_matching(&mut covered, &mut current, &mut out);
        for m in &mut out {
            m.sort_unstable();
        }
        out.sort();
        out
    }

    fn extend_matching(&self, covered: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Matching>) {
        let Some(v) = covered.iter().position(|c| !c) else {
            out.push(current.clone());
            return;
        };
        for &e in &self.nodes[v].rotation {
            let other = self.edges[e].ends.iter().find_map(|end| match *end {
                End::Node(u) if u != v => Some(Some(u)),
                End::Boundary(_) => Some(None),
                _ => None,
            });
            let other = other.expect("edge has two ends");
            if other.is_some_and(|u| covered[u]) {
                continue;
            }
            covered[v] = true;
            if let Some(u) = other {
                covered[u] = true;
            }
            current.push(e);
            self.extend_matching(covered, current, out);
            current.pop();
            covered[v] = false;
            if let Some(u) = other {
                covered[u] = false;
            }
        }
    }

    /// Boundary value `∂m`.
    pub fn boundary_value(&self, m: &[usize]) -> KSubset {
        let elems = (1..=self.n).filter(|&l| {
            let e = self.boundary_edge(l);
            let (u, _) = self.edges[e].boundary().expect("boundary edge");
            let used = m.contains(&e);
            match self.nodes[u].color {
                Color::White => used,
                Color::Black => !used,
            }
        });
        KSubset::new(self.n, elems).expect("labels inside [n]")
    }

    /// Boundary values of all matchings; each must have size `k`.
    pub fn positroid(&self) -> Result<BTreeSet<KSubset>> {
        let mut out = BTreeSet::new();
        for m in self.matchings() {
            let b = self.boundary_value(&m);
            if b.k() != self.k {
                return invariant("helicity", format!("boundary value {b} has size {} instead of {}", b.k(), self.k));
            }
            out.insert(b);
        }
        if out.is_empty() {
            return invariant("perfect matchings", "the graph has no perfect matching");
        }
        Ok(out)
    }

    /// Matchings with boundary value `i`.
    pub fn matchings_with_boundary(&self, i: &KSubset) -> Vec<Matching> {
        self.matchings().into_iter().filter(|m| &self.boundary_value(m) == i).collect()
    }

    /// The unique matching whose boundary value `I✱` is lexicographically
    /// largest.
    pub fn base_matching(&self) -> Result<(Matching, KSubset)> {
        let all = self.matchings();
        let best = all.iter().map(|m| self.boundary_value(m)).max().ok_or_else(|| Error::Invariant {
            invariant: "perfect matchings",
            detail: "the graph has no perfect matching".into(),
        })?;
        let mut hits = all.into_iter().filter(|m| self.boundary_value(m) == best);
        let m = hits.next().expect("maximum is attained");
        if hits.next().is_some() {
            return invariant("base matching", format!("boundary value {best} has several matchings"));
        }
        Ok((m, best))
    }

    /// Face weight of `m` relative to the base matching: the potential `w`
    /// with `w(head) − w(tail) = m✱(a) − m(a)` on every dual arrow and
    /// `w(✱) = 0`.
    pub fn matching_weight(&self, m: &[usize], base: &[usize]) -> Result<Vec<i64>> {
        let delta = |e: usize| i64::from(base.contains(&e)) - i64::from(m.contains(&e));
        let faces = self.faces.len();
        let mut w: Vec<Option<i64>> = vec![None; faces];
        w[self.star] = Some(0);
        let mut queue = VecDeque::from([self.star]);
        while let Some(f) = queue.pop_front() {
            let wf = w[f].expect("visited");
            for a in &self.arrows {
                let (g, val) = if a.tail == f {
                    (a.head, wf + delta(a.edge))
                } else if a.head == f {
                    (a.tail, wf - delta(a.edge))
                } else {
                    continue;
                };
                match w[g] {
                    None => {
                        w[g] = Some(val);
                        queue.push_back(g);
                    }
                    Some(x) if x != val => {
                        return invariant("matching weight", "m✱ − m is not a coboundary");
                    }
                    Some(_) => {}
                }
            }
        }
        w.into_iter()
            .map(|x| {
                x.ok_or_else(|| Error::Invariant {
                    invariant: "connected",
                    detail: "dual graph is disconnected".into(),
                })
            })
            .collect()
    }

    /// Direction of edge `e` in the perfect orientation of `base`: base edges
    /// point white → black, the others black → white. Boundary points take the
    /// color opposite to their node. Returns `(from, to)` as ends.
    pub fn oriented(&self, e: usize, base: &[usize]) -> (End, End) {
        let [a, b] = self.edges[e].ends;
        let white_first = match (a, b) {
            (End::Node(u), _) => self.nodes[u].color == Color::White,
            (End::Boundary(_), End::Node(v)) => self.nodes[v].color == Color::Black,
            _ => unreachable!("validated"),
        };
        if white_first == base.contains(&e) {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// All flows from the sources labelled `I ∖ I✱` to the sinks labelled
    /// `I✱ ∖ I` in the perfect orientation of `base`, sorted.
    pub fn flows(&self, i: &KSubset, base: &[usize], base_value: &KSubset) -> Result<Vec<Flow>> {
        if i.n() != self.n || i.k() != self.k {
            return Err(Error::Parameter(format!("{i} is not a {}-subset of [{}]", self.k, self.n)));
        }
        let sources: Vec<usize> = i.minus(base_value);
        let sinks: BTreeSet<usize> = base_value.minus(i).into_iter().collect();
        let mut out_edges: Vec<Vec<(usize, End)>> = vec![Vec::new(); self.nodes.len()];
        for e in 0..self.edges.len() {
            if let (End::Node(u), to) = self.oriented(e, base) {
                out_edges[u].push((e, to));
            }
        }
        let mut search = FlowSearch {
            model: self,
            out_edges: &out_edges,
            sinks: &sinks,
            used_nodes: vec![false; self.nodes.len()],
            used_sinks: BTreeSet::new(),
            paths: Vec::new(),
            out: Vec::new(),
        };
        search.route(&sources, base)?;
        let mut flows = search.out;
        flows.sort();
        Ok(flows)
    }

    /// Symmetric difference of the base matching with the edges of a flow.
    pub fn matching_of_flow(&self, flow: &Flow, base: &[usize]) -> Matching {
        let mut m: BTreeSet<usize> = base.iter().copied().collect();
        for &e in flow.iter().flatten() {
            if !m.remove(&e) {
                m.insert(e);
            }
        }
        m.into_iter().collect()
    }

    /// Face weight of a flow: each path contributes 1 on every face to its
    /// left.
    pub fn flow_weight(&self, flow: &Flow, base: &[usize]) -> Vec<i64> {
        let mut w = vec![0i64; self.faces.len()];
        for path in flow {
            let on_path: BTreeSet<usize> = path.iter().copied().collect();
            let mut left = vec![false; self.faces.len()];
            let mut queue = VecDeque::new();
            for &e in path {
                let (l, r) = self.sides[e];
                let forward = self.oriented(e, base).0 == self.edges[e].ends[0];
                let f = if forward { l } else { r };
                if !left[f] {
                    left[f] = true;
                    queue.push_back(f);
                }
            }
            while let Some(f) = queue.pop_front() {
                for &e in &self.faces[f].edges {
                    if on_path.contains(&e) {
                        continue;
                    }
                    let (l, r) = self.sides[e];
                    let g = if l == f { r } else { l };
                    if !left[g] {
                        left[g] = true;
                        queue.push_back(g);
                    }
                }
            }
            for (x, &is_left) in w.iter_mut().zip(&left) {
                *x += i64::from(is_left);
            }
        }
        w
    }
}

struct FlowSearch<'a> {
    model: &'a PlabicModel,
    out_edges: &'a [Vec<(usize, End)>],
    sinks: &'a BTreeSet<usize>,
    used_nodes: Vec<bool>,
    used_sinks: BTreeSet<usize>,
    paths: Vec<Vec<usize>>,
    out: Vec<Flow>,
}

impl FlowSearch<'_> {
    fn route(&mut self, sources: &[usize], base: &[usize]) -> Result<()> {
        let Some((&s, rest)) = sources.split_first() else {
            self.out.push(self.paths.clone());
            return Ok(());
        };
        let e = self.model.boundary_edge(s);
        let (from, to) = self.model.oriented(e, base);
        let End::Node(start) = to else {
            return invariant("perfect orientation", format!("boundary edge {s} is not a source"));
        };
        debug_assert_eq!(from, End::Boundary(s));
        if self.used_nodes[start] {
            return Ok(());
        }
        self.used_nodes[start] = true;
        let mut path = vec![e];
        self.walk(start, &mut path, rest, base)?;
        self.used_nodes[start] = false;
        Ok(())
    }

    fn walk(&mut self, v: usize, path: &mut Vec<usize>, rest: &[usize], base: &[usize]) -> Result<()> {
        for &(e, to) in &self.out_edges[v] {
            match to {
                End::Boundary(l) => {
                    if self.sinks.contains(&l) && !self.used_sinks.contains(&l) {
                        self.used_sinks.insert(l);
                        path.push(e);
                        self.paths.push(path.clone());
                        self.route(rest, base)?;
                        self.paths.pop();
                        path.pop();
                        self.used_sinks.remove(&l);
                    }
                }
                End::Node(u) => {
                    if self.used_nodes[u] {
                        continue;
                    }
                    self.used_nodes[u] = true;
                    path.push(e);
                    self.walk(u, path, rest, base)?;
                    path.pop();
                    self.used_nodes[u] = false;
                }
            }
        }
        Ok(())
    }
}
