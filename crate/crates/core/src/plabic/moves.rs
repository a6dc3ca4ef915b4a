//! The square move at an internal quadrilateral face, for arbitrary node
//! degrees: every corner changes color; a corner with a single external edge
//! to an internal node is contracted into that node, any other corner with
//! external edges is split off a new node of its old color.

use std::collections::{BTreeSet, HashSet};

use super::{Color, End, PlabicModel, RawEnd, RawModel};
use crate::combinat::KSubset;
use crate::error::{Error, Result};

fn fresh(taken: &HashSet<String>, base: String) -> String {
    let mut id = base;
    while taken.contains(&id) {
        id.push('\'');
    }
    id
}

impl PlabicModel {
    /// The four corner nodes of face `f` when it is an internal square.
    fn square_corners(&self, f: usize) -> Result<Vec<usize>> {
        let face = self.faces.get(f).ok_or_else(|| Error::Parameter(format!("no face {f}")))?;
        let name = self.face_name(f);
        if face.on_boundary || face.edges.len() != 4 {
            return Err(Error::NotMutable(name));
        }
        let mut corners = BTreeSet::new();
        for &e in &face.edges {
            for end in self.edges[e].ends {
                match end {
                    End::Node(u) => {
                        corners.insert(u);
                    }
                    End::Boundary(_) => return Err(Error::NotMutable(name)),
                }
            }
        }
        if corners.len() != 4 {
            return Err(Error::NotMutable(name));
        }
        Ok(corners.into_iter().collect())
    }

    /// Whether the square move applies at face `f`.
    pub fn is_square(&self, f: usize) -> bool {
        self.square_corners(f).is_ok()
    }

    /// Label produced by the square move at `f`: the neighbour labels are
    /// `Sab, Sbc, Scd, Sad` and the old label `Sac` becomes `Sbd`.
    pub fn exchanged_label(&self, f: usize) -> Result<Option<KSubset>> {
        let Some(old) = self.faces[f].label.clone() else {
            return Ok(None);
        };
        let neighbours: Vec<&KSubset> = self.faces[f]
            .edges
            .iter()
            .map(|&e| {
                let (l, r) = self.sides[e];
                let g = if l == f { r } else { l };
                self.faces[g].label.as_ref().ok_or_else(|| Error::Invariant {
                    invariant: "face labels",
                    detail: "partially labelled model".into(),
                })
            })
            .collect::<Result<_>>()?;
        let union: BTreeSet<usize> = neighbours.iter().flat_map(|l| l.elems().iter().copied()).collect();
        let common: BTreeSet<usize> = neighbours
            .iter()
            .map(|l| l.elems().iter().copied().collect::<BTreeSet<_>>())
            .reduce(|a, b| &a & &b)
            .unwrap_or_default();
        let elems = union.iter().filter(|x| !old.contains(**x)).chain(common.iter()).copied();
        let new = KSubset::new(self.n, elems)?;
        if new.k() != self.k {
            return Err(Error::NotPlabicMutable(old.to_string()));
        }
        Ok(Some(new))
    }

    /// Applies the square move at face `f`.
    pub fn square_move(&self, f: usize) -> Result<PlabicModel> {
        let corners = self.square_corners(f)?;
        let new_label = self.exchanged_label(f)?;
        let square: BTreeSet<usize> = self.faces[f].edges.clone();
        let mut raw = self.to_raw();
        raw.labels.clear();
        raw.star = None;
        let mut taken: HashSet<String> = raw.nodes.iter().map(|(id, _)| id.clone()).collect();
        taken.extend(raw.edges.iter().map(|(id, _, _)| id.clone()));

        for &v in &corners {
            let id = self.nodes[v].id.clone();
            let rot = &self.nodes[v].rotation;
            let d = rot.len();
            let start = (0..d)
                .find(|&p| square.contains(&rot[p]) && square.contains(&rot[(p + 1) % d]))
                .expect("corner edges are consecutive");
            let ordered: Vec<usize> = (0..d).map(|t| rot[(start + t) % d]).collect();
            let sq: Vec<String> = ordered[..2].iter().map(|&e| self.edges[e].id.clone()).collect();
            let ext: Vec<usize> = ordered[2..].to_vec();
            let flipped = match self.nodes[v].color {
                Color::Black => Color::White,
                Color::White => Color::Black,
            };
            let old_color = self.nodes[v].color;
            set_color(&mut raw, &id, flipped);
            if ext.is_empty() {
                continue;
            }
            let target = match ext.as_slice() {
                [x] => self.edges[*x].ends.iter().find_map(|end| match *end {
                    End::Node(u) if u != v && !corners.contains(&u) => Some(u),
                    _ => None,
                }),
                _ => None,
            };
            if let Some(x) = target {
                let link = self.edges[ext[0]].id.clone();
                let xid = self.nodes[x].id.clone();
                let xrot = raw.rotations.get_mut(&xid).expect("node has rotation");
                let pos = xrot.iter().position(|e| *e == link).expect("link at target");
                xrot.splice(pos..=pos, sq.iter().cloned());
                raw.rotations.remove(&id);
                raw.nodes.retain(|(n, _)| *n != id);
                raw.edges.retain(|(e, _, _)| *e != link);
                reattach(&mut raw, &sq, &id, &xid);
            } else {
                let twin = fresh(&taken, format!("{id}'"));
                taken.insert(twin.clone());
                let bridge = fresh(&taken, format!("{id}-{twin}"));
                taken.insert(bridge.clone());
                let ext_ids: Vec<String> = ext.iter().map(|&e| self.edges[e].id.clone()).collect();
                reattach(&mut raw, &ext_ids, &id, &twin);
                let pos = raw.nodes.iter().position(|(n, _)| *n == id).expect("node present");
                raw.nodes.insert(pos + 1, (twin.clone(), old_color));
                raw.edges.push((bridge.clone(), RawEnd::Node(id.clone()), RawEnd::Node(twin.clone())));
                let mut twin_rot = ext_ids;
                twin_rot.push(bridge.clone());
                raw.rotations.insert(twin.clone(), twin_rot);
                let mut own = sq.clone();
                own.push(bridge);
                raw.rotations.insert(id.clone(), own);
            }
        }

        let mut out = PlabicModel::from_raw(&raw)?;
        let square_ids: BTreeSet<String> = square.iter().map(|&e| self.edges[e].id.clone()).collect();
        let new_square = (0..out.faces.len())
            .find(|&g| out.face_spec(g) == square_ids)
            .ok_or_else(|| Error::Internal("square face lost by the move".into()))?;
        for g in 0..out.faces.len() {
            if g == new_square {
                out.faces[g].label = new_label.clone();
                continue;
            }
            let old = out.faces[g]
                .edges
                .iter()
                .find_map(|&e| {
                    let t = self.edges.iter().position(|x| x.id == out.edges[e].id)?;
                    let (l, _) = out.sides[e];
                    let (ol, or) = self.sides[t];
                    Some(if l == g { ol } else { or })
                })
                .ok_or_else(|| Error::Internal("face without surviving edge".into()))?;
            out.faces[g].label = self.faces[old].label.clone();
            if old == self.star {
                out.star = g;
            }
            if old == f {
                return Err(Error::Internal("square face matched a neighbour".into()));
            }
        }
        Ok(out)
    }
}

fn set_color(raw: &mut RawModel, id: &str, color: Color) {
    if let Some(entry) = raw.nodes.iter_mut().find(|(n, _)| n == id) {
        entry.1 = color;
    }
}

/// Moves the `edges` ends at node `from` to node `to`.
fn reattach(raw: &mut RawModel, edges: &[String], from: &str, to: &str) {
    for (id, a, b) in raw.edges.iter_mut() {
        if edges.contains(id) {
            for end in [a, b] {
                if *end == RawEnd::Node(from.to_string()) {
                    *end = RawEnd::Node(to.to_string());
                }
            }
        }
    }
}
