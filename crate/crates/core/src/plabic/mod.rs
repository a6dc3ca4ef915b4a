//! Plabic graphs on the disc: a bipartite planar graph with `n` labelled
//! boundary edges and a counterclockwise rotation system. Faces, the dual
//! quiver and all matching data are derived from the rotation system.
//!
//! Conventions (fixed by the shark fixture):
//! * boundary labels increase clockwise;
//! * a boundary label belongs to `∂m` when its edge is at a white node and in
//!   `m`, or at a black node and not in `m`;
//! * the dual arrow of an edge crosses it from right to left when the edge is
//!   traversed away from its white endpoint.

mod matchings;
mod moves;
mod rectangles;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

pub use matchings::{Flow, Matching};
pub use rectangles::{build_rectangles_model, rectangle_label};

use crate::combinat::KSubset;
use crate::error::{invariant, param, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

/// One end of an edge: an internal node (by id) or a boundary label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RawEnd {
    Node(String),
    Boundary(usize),
}

/// Unvalidated model description, as read from text or produced by builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawModel {
    pub k: usize,
    pub n: usize,
    /// `(id, color)` in declaration order.
    pub nodes: Vec<(String, Color)>,
    /// `(id, end, end)` in declaration order.
    pub edges: Vec<(String, RawEnd, RawEnd)>,
    /// Counterclockwise edge ids around each node.
    pub rotations: BTreeMap<String, Vec<String>>,
    /// Face labels keyed by the set of edge ids bounding the face.
    pub labels: Vec<(BTreeSet<String>, KSubset)>,
    pub star: Option<BTreeSet<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Node(usize),
    Boundary(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub color: Color,
    /// Incident edge indices, counterclockwise.
    pub rotation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: [End; 2],
}

impl Edge {
    /// The node end and boundary label of a boundary edge.
    pub fn boundary(&self) -> Option<(usize, usize)> {
        match self.ends {
            [End::Node(u), End::Boundary(b)] | [End::Boundary(b), End::Node(u)] => Some((u, b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Model edges on the face boundary.
    pub edges: BTreeSet<usize>,
    /// True when the face touches the boundary circle.
    pub on_boundary: bool,
    pub label: Option<KSubset>,
}

/// A dual arrow: crosses `edge` from face `tail` to face `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub edge: usize,
}

/// A validated plabic graph with derived faces and dual quiver.
#[derive(Debug, Clone)]
pub struct PlabicModel {
    k: usize,
    n: usize,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    star: usize,
    /// Left and right face of each edge traversed from `ends[0]` to `ends[1]`.
    sides: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
    boundary_edge: Vec<usize>,
}

/// Vertices of the augmented graph: nodes, then boundary points `1..n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Vertex {
    Node(usize),
    Point(usize),
}

/// Edges of the augmented graph: model edges, then boundary arcs
/// (`arc i` joins points `i` and `i+1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum AEdge {
    Model(usize),
    Arc(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Dart {
    edge: AEdge,
    from: Vertex,
    to: Vertex,
}

impl PlabicModel {
    pub fn from_raw(raw: &RawModel) -> Result<Self> {
        let (k, n) = (raw.k, raw.n);
        if k == 0 || k >= n {
            return param(format!("need 1 ≤ k ≤ n−1, got (k,n) = ({k},{n})"));
        }
        let mut node_index = HashMap::new();
        let mut nodes = Vec::with_capacity(raw.nodes.len());
        for (id, color) in &raw.nodes {
            if node_index.insert(id.clone(), nodes.len()).is_some() {
                return invariant("unique ids", format!("node {id} declared twice"));
            }
            nodes.push(Node { id: id.clone(), color: *color, rotation: Vec::new() });
        }
        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut boundary_edge = vec![usize::MAX; n];
        for (id, a, b) in &raw.edges {
            if edge_index.insert(id.clone(), edges.len()).is_some() {
                return invariant("unique ids", format!("edge {id} declared twice"));
            }
            let resolve = |e: &RawEnd| -> Result<End> {
                match e {
                    RawEnd::Node(v) => node_index.get(v).map(|&t| End::Node(t)).ok_or_else(|| Error::Invariant {
                        invariant: "known nodes",
                        detail: format!("edge {id} uses undeclared node {v}"),
                    }),
                    RawEnd::Boundary(l) if (1..=n).contains(l) => Ok(End::Boundary(*l)),
                    RawEnd::Boundary(l) => invariant("boundary labels", format!("label {l} outside 1..{n}")),
                }
            };
            let ends = [resolve(a)?, resolve(b)?];
            match ends {
                [End::Boundary(_), End::Boundary(_)] => {
                    return invariant("boundary edges", format!("edge {id} joins two boundary points"))
                }
                [End::Node(u), End::Node(v)] => {
                    if u == v {
                        return invariant("no loops", format!("edge {id} is a loop"));
                    }
                    if nodes[u].color == nodes[v].color {
                        return invariant("bipartite", format!("edge {id} joins two {} nodes", nodes[u].color));
                    }
                }
                [End::Node(_), End::Boundary(l)] | [End::Boundary(l), End::Node(_)] => {
                    if boundary_edge[l - 1] != usize::MAX {
                        return invariant("boundary labels", format!("label {l} used twice"));
                    }
                    boundary_edge[l - 1] = edges.len();
                }
            }
            edges.push(Edge { id: id.clone(), ends });
        }
        if let Some(l) = boundary_edge.iter().position(|&e| e == usize::MAX) {
            return invariant("boundary labels", format!("label {} has no edge", l + 1));
        }
        for (nid, rot) in &raw.rotations {
            let &v = node_index.get(nid).ok_or_else(|| Error::Invariant {
                invariant: "known nodes",
                detail: format!("rotation for undeclared node {nid}"),
            })?;
            for eid in rot {
                let &e = edge_index.get(eid).ok_or_else(|| Error::Invariant {
                    invariant: "known edges",
                    detail: format!("rotation of {nid} mentions undeclared edge {eid}"),
                })?;
                nodes[v].rotation.push(e);
            }
        }
        for (v, node) in nodes.iter().enumerate() {
            let mut expected: Vec<usize> =
                edges.iter().enumerate().filter(|(_, e)| e.ends.contains(&End::Node(v))).map(|(t, _)| t).collect();
            let mut got = node.rotation.clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return invariant(
                    "rotation system",
                    format!("rotation of {} must list each incident edge once", node.id),
                );
            }
            if node.rotation.len() < 2 {
                return invariant("node degree", format!("node {} has degree < 2", node.id));
            }
        }

        let mut model = PlabicModel {
            k,
            n,
            nodes,
            edges,
            faces: Vec::new(),
            star: 0,
            sides: Vec::new(),
            arrows: Vec::new(),
            boundary_edge,
        };
        model.trace_faces()?;
        model.check_connected()?;
        model.derive_arrows();
        model.attach_labels(raw)?;
        model.check_quiver()?;
        Ok(model)
    }

    fn rotation_of(&self, v: Vertex) -> Vec<AEdge> {
        match v {
            Vertex::Node(u) => self.nodes[u].rotation.iter().map(|&e| AEdge::Model(e)).collect(),
            Vertex::Point(i) => {
                let prev = if i == 1 { self.n } else { i - 1 };
                vec![AEdge::Arc(prev), AEdge::Model(self.boundary_edge[i - 1]), AEdge::Arc(i)]
            }
        }
    }

    fn other_end(&self, e: AEdge, v: Vertex) -> Vertex {
        match e {
            AEdge::Arc(i) => {
                let j = i % self.n + 1;
                if v == Vertex::Point(i) {
                    Vertex::Point(j)
                } else {
                    Vertex::Point(i)
                }
            }
            AEdge::Model(t) => {
                let to_vertex = |end: End| match end {
                    End::Node(u) => Vertex::Node(u),
                    End::Boundary(b) => Vertex::Point(b),
                };
                let [a, b] = self.edges[t].ends;
                if to_vertex(a) == v {
                    to_vertex(b)
                } else {
                    to_vertex(a)
                }
            }
        }
    }

    /// Traces faces with the face on the left of every dart; the successor of
    /// `u → v` leaves `v` along the edge clockwise-next after the one from `u`.
    fn trace_faces(&mut self) -> Result<()> {
        let mut darts = Vec::new();
        for t in 0..self.edges.len() {
            let a = self.edges[t].ends[0];
            let va = match a {
                End::Node(u) => Vertex::Node(u),
                End::Boundary(l) => Vertex::Point(l),
            };
            let vb = self.other_end(AEdge::Model(t), va);
            darts.push(Dart { edge: AEdge::Model(t), from: va, to: vb });
            darts.push(Dart { edge: AEdge::Model(t), from: vb, to: va });
        }
        for i in 1..=self.n {
            let j = i % self.n + 1;
            darts.push(Dart { edge: AEdge::Arc(i), from: Vertex::Point(i), to: Vertex::Point(j) });
            darts.push(Dart { edge: AEdge::Arc(i), from: Vertex::Point(j), to: Vertex::Point(i) });
        }
        let mut face_of: HashMap<Dart, usize> = HashMap::new();
        let mut orbits: Vec<Vec<Dart>> = Vec::new();
        for &d0 in &darts {
            if face_of.contains_key(&d0) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = d0;
            loop {
                face_of.insert(d, orbits.len());
                orbit.push(d);
                let rot = self.rotation_of(d.to);
                let pos = rot.iter().position(|&e| e == d.edge).expect("edge in rotation");
                let next_edge = rot[(pos + rot.len() - 1) % rot.len()];
                let next_to = self.other_end(next_edge, d.to);
                d = Dart { edge: next_edge, from: d.to, to: next_to };
                if d == d0 {
                    break;
                }
                if face_of.contains_key(&d) {
                    return invariant("rotation system", "face tracing did not close up");
                }
            }
            orbits.push(orbit);
        }
        let vertices = self.nodes.len() + self.n;
        let edge_count = self.edges.len() + self.n;
        if vertices + orbits.len() != edge_count + 2 {
            return invariant(
                "planar",
                format!(
                    "Euler characteristic {} ≠ 2 for {} vertices, {} edges, {} faces",
                    vertices as i64 - edge_count as i64 + orbits.len() as i64,
                    vertices,
                    edge_count,
                    orbits.len()
                ),
            );
        }
        let outer: Vec<usize> = orbits
            .iter()
            .enumerate()
            .filter(|(_, o)| o.iter().all(|d| matches!(d.edge, AEdge::Arc(_))))
            .map(|(t, _)| t)
            .collect();
        if outer.len() != 1 {
            return invariant("planar", "boundary order is not compatible with the rotation system");
        }
        let outer = outer[0];
        let mut renumber = vec![usize::MAX; orbits.len()];
        let mut faces = Vec::new();
        for (t, orbit) in orbits.iter().enumerate() {
            if t == outer {
                continue;
            }
            renumber[t] = faces.len();
            faces.push(Face {
                edges: orbit
                    .iter()
                    .filter_map(|d| match d.edge {
                        AEdge::Model(e) => Some(e),
                        AEdge::Arc(_) => None,
                    })
                    .collect(),
                on_boundary: orbit.iter().any(|d| matches!(d.edge, AEdge::Arc(_))),
                label: None,
            });
        }
        let sides = (0..self.edges.len())
            .map(|t| {
                let fwd = darts[2 * t];
                let bwd = darts[2 * t + 1];
                (renumber[face_of[&fwd]], renumber[face_of[&bwd]])
            })
            .collect::<Vec<_>>();
        if sides.iter().any(|&(l, r)| l == usize::MAX || r == usize::MAX) {
            return invariant("planar", "a model edge lies on the outer face");
        }
        // Default base face: the one between boundary edges n and 1.
        let arc_dart = Dart { edge: AEdge::Arc(self.n), from: Vertex::Point(1), to: Vertex::Point(self.n) };
        self.star = renumber[face_of[&arc_dart]];
        self.faces = faces;
        self.sides = sides;
        Ok(())
    }

    fn check_connected(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return invariant("connected", "model has no internal nodes");
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &e in &self.nodes[u].rotation {
                if let Some(End::Node(v)) = self.edges[e].ends.iter().find(|&&x| x != End::Node(u)) {
                    if !seen[*v] {
                        seen[*v] = true;
                        queue.push_back(*v);
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            invariant("connected", "internal nodes do not form a connected graph")
        }
    }

    fn derive_arrows(&mut self) {
        self.arrows = (0..self.edges.len())
            .map(|t| {
                let (left, right) = self.sides[t];
                // Orient the edge away from its white endpoint, or towards a black one.
                let away_from_white = match self.edges[t].ends[0] {
                    End::Node(u) => self.nodes[u].color == Color::White,
                    End::Boundary(_) => match self.edges[t].ends[1] {
                        End::Node(v) => self.nodes[v].color == Color::Black,
                        End::Boundary(_) => unreachable!("validated"),
                    },
                };
                if away_from_white {
                    Arrow { tail: right, head: left, edge: t }
                } else {
                    Arrow { tail: left, head: right, edge: t }
                }
            })
            .collect();
    }

    fn face_by_spec(&self, spec: &BTreeSet<String>) -> Result<usize> {
        let ids: BTreeSet<usize> = spec
            .iter()
            .map(|id| {
                self.edges
                    .iter()
                    .position(|e| &e.id == id)
                    .ok_or_else(|| Error::Invariant { invariant: "face spec", detail: format!("unknown edge {id}") })
            })
            .collect::<Result<_>>()?;
        let hits: Vec<usize> = (0..self.faces.len()).filter(|&f| self.faces[f].edges == ids).collect();
        match hits.as_slice() {
            [f] => Ok(*f),
            [] => invariant("face spec", format!("no face is bounded by {spec:?}")),
            _ => invariant("face spec", format!("face spec {spec:?} is ambiguous")),
        }
    }

    fn attach_labels(&mut self, raw: &RawModel) -> Result<()> {
        for (spec, label) in &raw.labels {
            let f = self.face_by_spec(spec)?;
            if label.n() != self.n || label.k() != self.k {
                return invariant("face labels", format!("label {label} is not a {}-subset of [{}]", self.k, self.n));
            }
            if self.faces[f].label.is_some() {
                return invariant("face labels", format!("face {spec:?} labelled twice"));
            }
            self.faces[f].label = Some(label.clone());
        }
        if let Some(spec) = &raw.star {
            self.star = self.face_by_spec(spec)?;
        }
        if !self.faces[self.star].on_boundary {
            return invariant("base face", "the base face must touch the boundary");
        }
        Ok(())
    }

    fn check_quiver(&self) -> Result<()> {
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for a in &self.arrows {
            if a.tail == a.head {
                if !self.faces[a.tail].on_boundary {
                    return invariant("2-acyclic dual quiver", format!("loop at face {}", self.face_name(a.tail)));
                }
                continue;
            }
            *count.entry((a.tail, a.head)).or_default() += 1;
        }
        for &(t, h) in count.keys() {
            let mutable_pair = !self.faces[t].on_boundary || !self.faces[h].on_boundary;
            if mutable_pair && count.contains_key(&(h, t)) {
                return invariant(
                    "2-acyclic dual quiver",
                    format!("2-cycle between faces {} and {}", self.face_name(t), self.face_name(h)),
                );
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Index of the base face ✱.
    pub fn star(&self) -> usize {
        self.star
    }

    /// Left and right faces of edge `e` traversed from `ends[0]` to `ends[1]`.
    pub fn sides(&self, e: usize) -> (usize, usize) {
        self.sides[e]
    }

    pub fn boundary_edge(&self, label: usize) -> usize {
        self.boundary_edge[label - 1]
    }

    pub fn is_labelled(&self) -> bool {
        self.faces.iter().all(|f| f.label.is_some())
    }

    /// Face name used as a lattice label: its Plücker label, or `f<index>`.
    pub fn face_name(&self, f: usize) -> String {
        match &self.faces[f].label {
            Some(l) => l.to_string(),
            None => format!("f{f}"),
        }
    }

    pub fn face_names(&self) -> Vec<String> {
        (0..self.faces.len()).map(|f| self.face_name(f)).collect()
    }

    pub fn face_by_name(&self, name: &str) -> Result<usize> {
        (0..self.faces.len())
            .find(|&f| self.face_name(f) == name)
            .ok_or_else(|| Error::Parameter(format!("no face named {name}")))
    }

    /// Edge ids bounding face `f`, as used by face specs.
    pub fn face_spec(&self, f: usize) -> BTreeSet<String> {
        self.faces[f].edges.iter().map(|&e| self.edges[e].id.clone()).collect()
    }

    /// Signed arrow counts `b[t][h] = #(t→h) − #(h→t)` between faces.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.faces.len();
        let mut b = vec![vec![0i64; m]; m];
        for a in &self.arrows {
            if a.tail != a.head {
                b[a.tail][a.head] += 1;
                b[a.head][a.tail] -= 1;
            }
        }
        b
    }

    /// Back to the unvalidated description (declaration order preserved).
    pub fn to_raw(&self) -> RawModel {
        let end = |e: End| match e {
            End::Node(u) => RawEnd::Node(self.nodes[u].id.clone()),
            End::Boundary(b) => RawEnd::Boundary(b),
        };
        RawModel {
            k: self.k,
            n: self.n,
            nodes: self.nodes.iter().map(|v| (v.id.clone(), v.color)).collect(),
            edges: self.edges.iter().map(|e| (e.id.clone(), end(e.ends[0]), end(e.ends[1]))).collect(),
            rotations: self
                .nodes
                .iter()
                .map(|v| (v.id.clone(), v.rotation.iter().map(|&e| self.edges[e].id.clone()).collect()))
                .collect(),
            labels: (0..self.faces.len())
                .filter_map(|f| self.faces[f].label.clone().map(|l| (self.face_spec(f), l)))
                .collect(),
            star: Some(self.face_spec(self.star)),
        }
    }
}
