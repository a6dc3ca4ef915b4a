//! Quivers with frozen vertices, Plücker-labelled seeds, κ-vectors, the map
//! `β` from simples to projectives and the weight maps `rk`, `wt`, `w̃t`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::combinat::{max_diag, weakly_separated, KSubset};
use crate::error::{invariant, param, Error, Result};
use crate::lattice::{Lattice, LatticeMap, LatticeVector};
use crate::plabic::{build_rectangles_model, PlabicModel};

/// A quiver without loops or 2-cycles, stored as its exchange matrix
/// `b[i][j] = #(i→j) − #(j→i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    frozen: Vec<bool>,
    b: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn new(names: Vec<String>, frozen: Vec<bool>, b: Vec<Vec<i64>>) -> Result<Self> {
        let r = names.len();
        Lattice::new(names.clone())?;
        if frozen.len() != r || b.len() != r || b.iter().any(|row| row.len() != r) {
            return param("quiver data has inconsistent sizes");
        }
        for i in 0..r {
            for j in 0..r {
                if b[i][j] != -b[j][i] {
                    return param(format!("exchange matrix not skew at ({}, {})", names[i], names[j]));
                }
            }
        }
        Ok(Quiver { names, frozen, b })
    }

    /// The dual quiver of a plabic graph; boundary faces are frozen.
    pub fn from_model(model: &PlabicModel) -> Self {
        Quiver {
            names: model.face_names(),
            frozen: model.faces().iter().map(|f| f.on_boundary).collect(),
            b: model.exchange_matrix(),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|x| x == name).ok_or_else(|| Error::Parameter(format!("no vertex named {name}")))
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn lattice(&self) -> Arc<Lattice> {
        Lattice::new(self.names.clone()).expect("vertex names are distinct")
    }

    /// Vertices with arrows into `j`, with multiplicity.
    pub fn in_neighbours(&self, j: usize) -> Vec<(usize, i64)> {
        (0..self.rank()).filter(|&i| self.b[i][j] > 0).map(|i| (i, self.b[i][j])).collect()
    }

    /// Vertices with arrows out of `j`, with multiplicity.
    pub fn out_neighbours(&self, j: usize) -> Vec<(usize, i64)> {
        (0..self.rank()).filter(|&i| self.b[j][i] > 0).map(|i| (i, self.b[j][i])).collect()
    }

    /// Fomin–Zelevinsky mutation at `j`; the vertex is renamed `name'`.
    pub fn fz_mutate(&self, j: usize) -> Result<Quiver> {
        if self.frozen[j] {
            return Err(Error::NotMutable(self.names[j].clone()));
        }
        let r = self.rank();
        let mut b = self.b.clone();
        for i in 0..r {
            for k in 0..r {
                b[i][k] = if i == j || k == j {
                    -self.b[i][k]
                } else {
                    let (bij, bjk) = (self.b[i][j], self.b[j][k]);
                    self.b[i][k] + (bij.abs() * bjk + bij * bjk.abs()) / 2
                };
            }
        }
        let mut names = self.names.clone();
        names[j].push('\'');
        Quiver::new(names, self.frozen.clone(), b)
    }

    pub fn renamed(&self, j: usize, name: &str) -> Result<Quiver> {
        let mut names = self.names.clone();
        names[j] = name.to_string();
        Quiver::new(names, self.frozen.clone(), self.b.clone())
    }

    /// Equality up to reordering of the vertices (matched by name).
    pub fn same_as(&self, other: &Quiver) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let Ok(perm) = self.names.iter().map(|x| other.index(x)).collect::<Result<Vec<_>>>() else {
            return false;
        };
        (0..self.rank()).all(|i| {
            self.frozen[i] == other.frozen[perm[i]]
                && (0..self.rank()).all(|j| self.b[i][j] == other.b[perm[i]][perm[j]])
        })
    }
}

/// A quiver whose vertices carry pairwise weakly separated Plücker labels;
/// vertex names are the label strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    k: usize,
    n: usize,
    quiver: Quiver,
    labels: Vec<KSubset>,
    star: usize,
    /// For a frozen vertex `i`, the multiplicities of the summands of the
    /// minimal approximation `E_i → rad T_i`; empty rows at mutable vertices.
    approx: Vec<Vec<i64>>,
}

/// The weight maps of a seed: `rk` to `ℤ`, `wt` to `N_✱`, their sum
/// `w̃t` to `ℤ ⊕ N_✱` and its inverse `β̃`.
#[derive(Debug, Clone)]
pub struct WtMaps {
    pub rk: LatticeMap,
    pub wt: LatticeMap,
    pub wt_tilde: LatticeMap,
    pub beta_tilde: LatticeMap,
}

impl Seed {
    pub fn from_model(model: &PlabicModel) -> Result<Seed> {
        if !model.is_labelled() {
            return invariant("face labels", "every face needs a Plücker label");
        }
        let labels: Vec<KSubset> = model.faces().iter().map(|f| f.label.clone().expect("labelled")).collect();
        Seed::new(model.k(), model.n(), Quiver::from_model(model), labels, model.star())
    }

    pub fn new(k: usize, n: usize, quiver: Quiver, labels: Vec<KSubset>, star: usize) -> Result<Seed> {
        if labels.len() != quiver.rank() {
            return param("one label per vertex is required");
        }
        for (t, l) in labels.iter().enumerate() {
            if l.k() != k || l.n() != n || quiver.name(t) != l.to_string() {
                return invariant("face labels", format!("vertex {} carries label {l}", quiver.name(t)));
            }
        }
        for a in 0..labels.len() {
            for b in a + 1..labels.len() {
                if !weakly_separated(&labels[a], &labels[b])? {
                    return invariant(
                        "weak separation",
                        format!("labels {} and {} are not weakly separated", labels[a], labels[b]),
                    );
                }
            }
        }
        let approx = (0..quiver.rank())
            .map(|i| {
                if quiver.is_frozen(i) {
                    (0..quiver.rank()).map(|t| quiver.b(i, t).max(0)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Ok(Seed { k, n, quiver, labels, star, approx })
    }

    /// The rectangles seed of `Gr(k,n)`.
    pub fn rectangles(k: usize, n: usize) -> Result<Seed> {
        Seed::from_model(&build_rectangles_model(k, n)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn labels(&self) -> &[KSubset] {
        &self.labels
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn star_name(&self) -> &str {
        self.quiver.name(self.star)
    }

    /// The vertex labelled `[n−k+1, n]`, whose module is `J✱`.
    pub fn j_star(&self) -> Result<usize> {
        let target = KSubset::interval(self.n, self.n - self.k + 1, self.k)?;
        self.labels
            .iter()
            .position(|l| *l == target)
            .ok_or_else(|| Error::Invariant {
                invariant: "J✱ summand", detail: format!("no vertex labelled {target}")
            })
    }

    /// `ℤ^{Q₀}` with the vertex names as labels.
    pub fn lattice(&self) -> Arc<Lattice> {
        self.quiver.lattice()
    }

    /// `N_✱`: the vertex lattice without ✱.
    pub fn n_star_lattice(&self) -> Arc<Lattice> {
        Lattice::new(self.quiver.names().iter().enumerate().filter(|&(t, _)| t != self.star).map(|(_, x)| x.clone()))
            .expect("vertex names are distinct")
    }

    /// `κ(T, M_I)`: coordinate at `J` is the longest diagonal of `λ_J ∖ λ_I`.
    pub fn kappa(&self, i: &KSubset) -> Result<LatticeVector> {
        self.check_subset(i)?;
        let coords = self.labels.iter().map(|j| max_diag(j, i) as i64).collect();
        LatticeVector::from_coords(&self.lattice(), coords)
    }

    /// `κ(T, M_I)` as a vector of `N_✱` (the ✱ coordinate is always zero).
    pub fn kappa_n_star(&self, i: &KSubset) -> Result<LatticeVector> {
        self.kappa(i)?.transport(&self.n_star_lattice())
    }

    fn check_subset(&self, i: &KSubset) -> Result<()> {
        if i.k() != self.k || i.n() != self.n {
            return param(format!("{i} is not a {}-subset of [{}]", self.k, self.n));
        }
        Ok(())
    }

    /// Mutation at `j` with the Plücker exchange `Sac ↦ Sbd`, defined when the
    /// in- and out-neighbours of `j` are `{Sab, Scd}` and `{Sad, Sbc}` in some
    /// order, each with a single arrow.
    pub fn mutate(&self, j: usize) -> Result<Seed> {
        let q = &self.quiver;
        if j >= q.rank() {
            return param(format!("no vertex {j}"));
        }
        if q.is_frozen(j) {
            return Err(Error::NotMutable(q.name(j).to_string()));
        }
        let fail = || Error::NotPlabicMutable(q.name(j).to_string());
        let ins = q.in_neighbours(j);
        let outs = q.out_neighbours(j);
        if ins.len() != 2 || outs.len() != 2 || ins.iter().chain(&outs).any(|&(_, m)| m != 1) {
            return Err(fail());
        }
        let old = &self.labels[j];
        let set = |l: &KSubset| l.elems().iter().copied().collect::<BTreeSet<usize>>();
        let old_set = set(old);
        let neighbours: Vec<BTreeSet<usize>> = ins.iter().chain(&outs).map(|&(i, _)| set(&self.labels[i])).collect();
        let common: BTreeSet<usize> = neighbours.iter().fold(old_set.clone(), |acc, l| &acc & l);
        let ac: Vec<usize> = old_set.difference(&common).copied().collect();
        let union: BTreeSet<usize> = neighbours.iter().flatten().copied().collect();
        let bd: Vec<usize> = union.difference(&old_set).copied().collect();
        if common.len() + 2 != self.k || ac.len() != 2 || bd.len() != 2 {
            return Err(fail());
        }
        let (a, c) = (ac[0], ac[1]);
        let (b, d) = (bd[0], bd[1]);
        let interleaved = (a < b && b < c && c < d) || (b < a && a < d && d < c);
        if !interleaved {
            return Err(fail());
        }
        let with = |x: usize, y: usize| -> BTreeSet<usize> {
            let mut s = common.clone();
            s.insert(x);
            s.insert(y);
            s
        };
        let side = |pair: &[(usize, i64)]| -> BTreeSet<BTreeSet<usize>> {
            pair.iter().map(|&(i, _)| set(&self.labels[i])).collect()
        };
        let one: BTreeSet<_> = [with(a, b), with(c, d)].into_iter().collect();
        let other: BTreeSet<_> = [with(a, d), with(b, c)].into_iter().collect();
        let (si, so) = (side(&ins), side(&outs));
        if !((si == one && so == other) || (si == other && so == one)) {
            return Err(fail());
        }
        let new_label = KSubset::new(self.n, with(b, d))?;
        let quiver = q.fz_mutate(j)?.renamed(j, &new_label.to_string())?;
        let mut labels = self.labels.clone();
        labels[j] = new_label;
        let approx = self.mutated_approx(j);
        let seed = Seed { approx, ..Seed::new(self.k, self.n, quiver, labels, self.star)? };
        seed.check_approx()?;
        Ok(seed)
    }

    /// Approximations of the radicals of frozen summands after mutating at
    /// `j`. When `j → i`, `E'_i = E_i ⊕ (T_j*)^{b_ji} ⊖ (E_i ∩ F_j^{b_ji})`
    /// with `F_j = ⊕_{p→j} T_p`. When `i → j`, `E_i = Ē_i ⊕ T_j^{b_ij}` and
    /// `E'_i = Ē_i ⊕ E_j^{b_ij} ⊖ (K_i ∩ E_j^{b_ij})` with `E_j = ⊕_{j→p} T_p`
    /// and `K_i` the interior in-neighbours of `i`.
    fn mutated_approx(&self, j: usize) -> Vec<Vec<i64>> {
        let q = &self.quiver;
        let r = q.rank();
        (0..r)
            .map(|i| {
                let mut e = self.approx[i].clone();
                if !q.is_frozen(i) {
                    return e;
                }
                let bij = q.b(i, j);
                if bij < 0 {
                    let bji = -bij;
                    for p in 0..r {
                        let f = bji * q.b(p, j).max(0);
                        e[p] -= e[p].min(f);
                    }
                    e[j] += bji;
                } else if bij > 0 {
                    e[j] -= bij;
                    for p in 0..r {
                        let ej = bij * q.b(j, p).max(0);
                        let k = if q.is_frozen(p) { 0 } else { q.b(p, i).max(0) };
                        e[p] += ej - k.min(ej);
                    }
                }
                e
            })
            .collect()
    }

    /// The interior part of every tracked approximation must be the set of
    /// out-arrows to mutable vertices.
    fn check_approx(&self) -> Result<()> {
        let q = &self.quiver;
        for i in (0..q.rank()).filter(|&i| q.is_frozen(i)) {
            for t in (0..q.rank()).filter(|&t| !q.is_frozen(t)) {
                if self.approx[i][t] != q.b(i, t).max(0) {
                    return invariant(
                        "radical approximation",
                        format!("E_{} disagrees with the quiver at {}", q.name(i), q.name(t)),
                    );
                }
            }
        }
        Ok(())
    }

    /// `β`: simple `S_i` to its class in the projectives, both indexed by
    /// the vertices. Column `i` is `Σ_{j→i} e_j − Σ_{i→j} e_j` at mutable
    /// vertices and `e_i − [E_i] + Σ_{j→i, j mutable} e_j` at frozen ones,
    /// where `E_i → rad T_i` is the minimal approximation. In a seed read from
    /// a plabic graph `E_i` is taken to be the out-neighbours of `i`, which is
    /// correct for the rectangles seed; mutation tracks it from there.
    pub fn beta(&self) -> LatticeMap {
        let q = &self.quiver;
        let r = q.rank();
        let lattice = self.lattice();
        let columns = (0..r)
            .map(|i| {
                let mut col = vec![0i64; r];
                if !q.is_frozen(i) {
                    for (j, c) in col.iter_mut().enumerate() {
                        *c = -q.b(i, j);
                    }
                    return col;
                }
                col[i] = 1;
                for j in 0..r {
                    col[j] -= self.approx[i][j];
                    if !q.is_frozen(j) {
                        col[j] += q.b(j, i).max(0);
                    }
                }
                col
            })
            .collect();
        LatticeMap::from_columns(&lattice, &lattice, columns).expect("square matrix")
    }

    pub fn wt_maps(&self) -> Result<WtMaps> {
        let q_lat = self.lattice();
        let n_star = self.n_star_lattice();
        let r_lat = Lattice::new(["r"])?;
        let mut tilde_labels = vec!["r".to_string()];
        tilde_labels.extend(n_star.labels().iter().cloned());
        let tilde = Lattice::new(tilde_labels)?;
        let kappas: Vec<LatticeVector> = self.labels.iter().map(|l| self.kappa_n_star(l)).collect::<Result<_>>()?;
        let rk = LatticeMap::from_columns(&q_lat, &r_lat, vec![vec![1]; q_lat.rank()])?;
        let wt = LatticeMap::from_columns(&q_lat, &n_star, kappas.iter().map(|v| v.coords().to_vec()).collect())?;
        let wt_tilde = LatticeMap::from_columns(
            &q_lat,
            &tilde,
            kappas.iter().map(|v| std::iter::once(1).chain(v.coords().iter().copied()).collect()).collect(),
        )?;
        let beta = self.beta();
        let js = self.j_star()?;
        let mut columns = vec![LatticeVector::basis(&q_lat, self.quiver.name(js))?.coords().to_vec()];
        for u in n_star.labels() {
            let col = beta.column(self.quiver.index(u)?).scale(-1);
            columns.push(col.coords().to_vec());
        }
        let beta_tilde = LatticeMap::from_columns(&tilde, &q_lat, columns)?;
        Ok(WtMaps { rk, wt, wt_tilde, beta_tilde })
    }
}

/// Tropical A-mutation at `j` of a vector indexed by (a subset of) the
/// vertex names; missing coordinates count as zero:
/// `v'_j = min(Σ_{j→t} b v_t, Σ_{t→j} b v_t) − v_j`.
pub fn trop_a_mutate(q: &Quiver, j: usize, v: &LatticeVector) -> Result<LatticeVector> {
    if q.is_frozen(j) {
        return Err(Error::NotMutable(q.name(j).to_string()));
    }
    let at = |t: usize| v.get(q.name(t)).unwrap_or(0);
    let out: i64 = q.out_neighbours(j).iter().map(|&(t, m)| m * at(t)).sum();
    let inc: i64 = q.in_neighbours(j).iter().map(|&(t, m)| m * at(t)).sum();
    let pos = v.lattice().require(q.name(j))?;
    let mut coords = v.coords().to_vec();
    coords[pos] = out.min(inc) - coords[pos];
    LatticeVector::from_coords(v.lattice(), coords)
}
