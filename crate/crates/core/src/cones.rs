//! Rational polyhedral cones in `ℤ ⊕ ℤ^V` given by inequalities
//! `⟨m, (r, v)⟩ ≥ 0`, with `r` the level: Gelfand–Tsetlin cones, cones of
//! tropicalized superpotentials, level-slice lattice points and convex
//! hulls of κ-points.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::combinat::KSubset;
use crate::error::{param, Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, q, LpOutcome, Q};
use crate::plabic::rectangle_label;
use crate::seeds::{trop_a_mutate, Quiver, Seed};

/// Label of the level coordinate.
pub const LEVEL: &str = "r";

/// A cone `{x : ⟨m, x⟩ ≥ 0 for all m}`; the first ambient label is the
/// level `r`. Covectors are primitive, deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient: Arc<Lattice>,
    ineqs: Vec<Vec<i64>>,
}

fn primitive_int(m: &[i64]) -> Vec<i64> {
    let g = m.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        m.to_vec()
    } else {
        m.iter().map(|x| x / g).collect()
    }
}

impl Cone {
    pub fn new(ambient: &Arc<Lattice>, ineqs: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        if ambient.labels().first().map(String::as_str) != Some(LEVEL) {
            return param("the first ambient coordinate of a cone must be the level r");
        }
        let mut set = BTreeSet::new();
        for m in ineqs {
            if m.len() != ambient.rank() {
                return Err(Error::LatticeMismatch("covector length differs from ambient rank".into()));
            }
            if m.iter().any(|&x| x != 0) {
                set.insert(primitive_int(&m));
            }
        }
        Ok(Cone { ambient: ambient.clone(), ineqs: set.into_iter().collect() })
    }

    pub fn ambient(&self) -> &Arc<Lattice> {
        &self.ambient
    }

    pub fn ineqs(&self) -> &[Vec<i64>] {
        &self.ineqs
    }

    /// The lattice of the slice coordinates (ambient without `r`).
    pub fn slice_lattice(&self) -> Arc<Lattice> {
        Lattice::new(self.ambient.labels()[1..].iter().cloned()).expect("distinct labels")
    }

    /// Covectors keyed by label, independent of coordinate order.
    pub fn canonical(&self) -> BTreeSet<BTreeMap<String, i64>> {
        self.ineqs
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(t, &c)| (self.ambient.label(t).to_string(), c))
                    .collect()
            })
            .collect()
    }

    pub fn canonical_eq(&self, other: &Cone) -> bool {
        self.canonical() == other.canonical()
    }

    /// Whether `(r, v)` satisfies every inequality; `v` is matched by label.
    pub fn contains(&self, r: i64, v: &LatticeVector) -> Result<bool> {
        let mut x = vec![r];
        for l in &self.ambient.labels()[1..] {
            x.push(v.get(l).ok_or_else(|| Error::LatticeMismatch(format!("point lacks coordinate {l}")))?);
        }
        for (t, l) in v.lattice().labels().iter().enumerate() {
            if v.coords()[t] != 0 && self.ambient.index_of(l).is_none() {
                return Err(Error::LatticeMismatch(format!("cone lacks coordinate {l}")));
            }
        }
        Ok(self.ineqs.iter().all(|m| m.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() >= 0))
    }

    /// The level-`r` slice as `A v ≤ b`.
    fn slice_system(&self, r: i64) -> (Vec<Vec<Q>>, Vec<Q>) {
        let a = self.ineqs.iter().map(|m| m[1..].iter().map(|&x| q(-x)).collect()).collect();
        let b = self.ineqs.iter().map(|m| q(m[0] * r)).collect();
        (a, b)
    }

    /// All lattice points of the level-`r` slice, in lexicographic order.
    pub fn lattice_points(&self, r: i64) -> Result<Vec<LatticeVector>> {
        let dim = self.ambient.rank() - 1;
        let lattice = self.slice_lattice();
        let (a, b) = self.slice_system(r);
        let Some(bounds) = linalg::bounding_box(&a, &b, dim)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut x = vec![0i64; dim];
        self.enumerate(r, &bounds, 0, &mut x, &mut out);
        out.into_iter().map(|c| LatticeVector::from_coords(&lattice, c)).collect()
    }

    fn enumerate(&self, r: i64, bounds: &[(i64, i64)], t: usize, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        // Prune with the best value each inequality can still reach.
        for m in &self.ineqs {
            let mut best = m[0] * r;
            for (s, &c) in m[1..].iter().enumerate() {
                best += if s < t {
                    c * x[s]
                } else if c > 0 {
                    c * bounds[s].1
                } else {
                    c * bounds[s].0
                };
            }
            if best < 0 {
                return;
            }
        }
        if t == x.len() {
            out.push(x.clone());
            return;
        }
        for val in bounds[t].0..=bounds[t].1 {
            x[t] = val;
            self.enumerate(r, bounds, t + 1, x, out);
        }
        x[t] = 0;
    }

    /// Minimum of `⟨a, v⟩` over the level-`r` slice (`None` if empty).
    fn slice_min(&self, r: i64, a: &[Q]) -> Result<Option<Q>> {
        let (sa, sb) = self.slice_system(r);
        let neg: Vec<Q> = a.iter().map(|x| -x).collect();
        match linalg::maximize(&sa, &sb, &neg) {
            LpOutcome::Optimal(v) => Ok(Some(-v)),
            LpOutcome::Unbounded => Err(Error::Unbounded),
            LpOutcome::Infeasible => Ok(None),
        }
    }

    pub fn to_json(&self) -> Value {
        let ineqs: Vec<Value> = self
            .canonical()
            .into_iter()
            .map(|m| Value::Object(m.into_iter().map(|(k, v)| (k, json!(v))).collect()))
            .collect();
        json!({ "ambient": self.ambient.labels(), "ineqs": ineqs })
    }
}

/// Gelfand–Tsetlin inequalities at level `r` on `v_ij` (`1 ≤ i ≤ k`,
/// `1 ≤ j ≤ n−k`, labelled `K_ij`), with `u_ij = v_ij − v_{i−1,j−1}`:
/// `v_11 ≥ 0`, `u_ij ≥ u_{i−1,j}`, `u_ij ≥ u_{i,j−1}` and `r ≥ u_{k,n−k}`.
pub fn gt_inequalities(k: usize, n: usize) -> Result<Cone> {
    if k == 0 || k >= n {
        return param(format!("need 1 ≤ k ≤ n−1, got ({k},{n})"));
    }
    let m = n - k;
    let mut labels = vec![LEVEL.to_string()];
    for i in 1..=k {
        for j in 1..=m {
            labels.push(rectangle_label(k, n, i, j).to_string());
        }
    }
    let ambient = Lattice::new(labels)?;
    let slot = |i: usize, j: usize| 1 + (i - 1) * m + (j - 1);
    let width = ambient.rank();
    // Covector of u_ij (zero when i or j is zero).
    let u = |i: usize, j: usize| -> Vec<i64> {
        let mut c = vec![0i64; width];
        if i >= 1 && j >= 1 {
            c[slot(i, j)] += 1;
            if i >= 2 && j >= 2 {
                c[slot(i - 1, j - 1)] -= 1;
            }
        }
        c
    };
    let diff = |a: Vec<i64>, b: Vec<i64>| a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>();
    let mut ineqs = vec![u(1, 1)];
    for i in 1..=k {
        for j in 1..=m {
            if i >= 2 {
                ineqs.push(diff(u(i, j), u(i - 1, j)));
            }
            if j >= 2 {
                ineqs.push(diff(u(i, j), u(i, j - 1)));
            }
        }
    }
    let mut top = u(k, m).iter().map(|x| -x).collect::<Vec<_>>();
    top[0] = 1;
    ineqs.push(top);
    Cone::new(&ambient, ineqs)
}

/// The cone `Trop(W) ≥ 0` of a Laurent polynomial in `q` and cluster
/// variables: one covector per monomial, the `q` exponent in the `r` slot
/// and the `star` exponent dropped.
pub fn cone_from_tropical(w: &LaurentPoly, q_label: &str, star: &str) -> Result<Cone> {
    if w.is_zero() {
        return param("cannot tropicalize the zero polynomial");
    }
    let lattice = w.lattice();
    let qpos = lattice.require(q_label)?;
    let mut labels = vec![LEVEL.to_string()];
    labels.extend(lattice.labels().iter().filter(|l| *l != q_label && *l != star).cloned());
    let ambient = Lattice::new(labels)?;
    let ineqs = w.tropicalize().into_iter().map(|m| {
        let mut c = vec![m.coords()[qpos]];
        c.extend(ambient.labels()[1..].iter().map(|l| m.get(l).expect("label from lattice")));
        c
    });
    Cone::new(&ambient, ineqs)
}

/// `dim V_{rω_k} = ∏_{i ≤ k, j ≤ n−k} (r+i+j−1)/(i+j−1)`.
pub fn weyl_dim(k: usize, n: usize, r: u64) -> BigInt {
    let mut acc = BigRational::one();
    for i in 1..=k as u64 {
        for j in 1..=(n - k) as u64 {
            acc *= BigRational::new(BigInt::from(r + i + j - 1), BigInt::from(i + j - 1));
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// Level-1 GT patterns `v(I) = κ(T_□, M_I)` of the rectangles seed, in the
/// slice coordinates of `gt_inequalities(k, n)`.
pub fn level_one_patterns(k: usize, n: usize) -> Result<Vec<(KSubset, LatticeVector)>> {
    let seed = Seed::rectangles(k, n)?;
    let slice = gt_inequalities(k, n)?.slice_lattice();
    KSubset::all(k, n)
        .into_iter()
        .map(|i| {
            let v = seed.kappa(&i)?.transport(&slice)?;
            Ok((i, v))
        })
        .collect()
}

/// Writes a GT pattern at level `r` as a sum of `r` level-one patterns by
/// repeatedly peeling the support of `u_ij = v_ij − v_{i−1,j−1}`.
pub fn gt_decompose(k: usize, n: usize, r: i64, v: &LatticeVector) -> Result<Vec<KSubset>> {
    let cone = gt_inequalities(k, n)?;
    let slice = cone.slice_lattice();
    let v = v.transport(&slice)?;
    if r < 0 || !cone.contains(r, &v)? {
        return param(format!("{v} is not a GT pattern at level {r}"));
    }
    let m = n - k;
    let at = |x: &[i64], i: usize, j: usize| if i == 0 || j == 0 { 0 } else { x[(i - 1) * m + (j - 1)] };
    let patterns = level_one_patterns(k, n)?;
    let lookup: BTreeMap<Vec<i64>, KSubset> = patterns.into_iter().map(|(i, p)| (p.coords().to_vec(), i)).collect();
    let mut rest = v.coords().to_vec();
    let mut out = Vec::new();
    for _ in 0..r {
        let mut support = vec![0i64; k * m];
        for i in 1..=k {
            for j in 1..=m {
                support[(i - 1) * m + (j - 1)] = i64::from(at(&rest, i, j) - at(&rest, i - 1, j - 1) > 0);
            }
        }
        // Cumulative pattern of the support indicator.
        let mut p = vec![0i64; k * m];
        for i in 1..=k {
            for j in 1..=m {
                p[(i - 1) * m + (j - 1)] = support[(i - 1) * m + (j - 1)] + at(&p, i - 1, j - 1);
            }
        }
        let subset = lookup
            .get(&p)
            .ok_or_else(|| Error::Internal(format!("support pattern {p:?} is not a level-one pattern")))?;
        out.push(subset.clone());
        for (a, b) in rest.iter_mut().zip(&p) {
            *a -= b;
        }
    }
    if rest.iter().any(|&x| x != 0) {
        return Err(Error::Internal("peeling left a nonzero remainder".into()));
    }
    Ok(out)
}

/// `{κ(T, M_I) : I}` over `N_✱`, one point per k-subset in lexicographic order.
pub fn no_body_level1(seed: &Seed) -> Result<Vec<LatticeVector>> {
    KSubset::all(seed.k(), seed.n()).iter().map(|i| seed.kappa_n_star(i)).collect()
}

/// Coordinatewise tropical A-mutation of a point set.
pub fn trop_mutate_points(q: &Quiver, j: usize, pts: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    pts.iter().map(|p| trop_a_mutate(q, j, p)).collect()
}

/// Facets `a·x ≥ b` of the convex hull of full-dimensional integer points,
/// found by brute force over affinely independent subsets.
pub fn hull_facets(points: &[Vec<i64>]) -> Result<Vec<(Vec<i64>, i64)>> {
    let Some(d) = points.first().map(Vec::len) else {
        return param("hull of an empty point set");
    };
    let lifted: Vec<Vec<Q>> =
        points.iter().map(|p| p.iter().map(|&x| q(x)).chain(std::iter::once(Q::one())).collect()).collect();
    if !linalg::kernel(&lifted, d + 1).is_empty() {
        return Err(Error::Internal("point set is not full-dimensional".into()));
    }
    let mut facets = BTreeSet::new();
    let mut chosen = Vec::with_capacity(d);
    let mut search = FacetSearch { points, d, facets: &mut facets };
    search.choose(0, &mut chosen);
    if facets.is_empty() {
        return Err(Error::Internal("point set is not full-dimensional".into()));
    }
    Ok(facets.into_iter().collect())
}

struct FacetSearch<'a> {
    points: &'a [Vec<i64>],
    d: usize,
    facets: &'a mut BTreeSet<(Vec<i64>, i64)>,
}

impl FacetSearch<'_> {
    fn choose(&mut self, start: usize, chosen: &mut Vec<usize>) {
        if chosen.len() == self.d {
            self.test(chosen);
            return;
        }
        for t in start..self.points.len() {
            if self.points.len() - t < self.d - chosen.len() {
                break;
            }
            chosen.push(t);
            self.choose(t + 1, chosen);
            chosen.pop();
        }
    }

    fn test(&mut self, chosen: &[usize]) {
        let Some(h) = hyperplane_through(chosen.iter().map(|&t| self.points[t].as_slice())) else {
            return;
        };
        // h·(x, 1) = 0 on the chosen points: a·x + c with a = h[..d], c = h[d].
        let values: Vec<i64> =
            self.points.iter().map(|p| p.iter().zip(&h).map(|(x, a)| x * a).sum::<i64>() + h[self.d]).collect();
        let sign = if values.iter().all(|&s| s >= 0) {
            1
        } else if values.iter().all(|&s| s <= 0) {
            -1
        } else {
            return;
        };
        let a: Vec<i64> = h[..self.d].iter().map(|x| sign * x).collect();
        self.facets.insert((a, -sign * h[self.d]));
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for t in c + 1..n {
                m[r][t] = (m[r][t] * m[c][c] - m[r][c] * m[c][t]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    sign * m[n - 1][n - 1]
}

/// Primitive normal `h` with `h·(x, 1) = 0` on `d` affinely independent
/// points of `ℤ^d`, from the signed maximal minors; `None` if dependent.
fn hyperplane_through<'p>(points: impl Iterator<Item = &'p [i64]>) -> Option<Vec<i64>> {
    let rows: Vec<Vec<i128>> =
        points.map(|p| p.iter().map(|&x| i128::from(x)).chain(std::iter::once(1)).collect()).collect();
    let width = rows.first()?.len();
    let h: Vec<i128> = (0..width)
        .map(|c| {
            let minor =
                rows.iter().map(|r| r.iter().enumerate().filter(|&(t, _)| t != c).map(|(_, &x)| x).collect()).collect();
            let det = bareiss_det(minor);
            if c % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    let g = h.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g == 0 {
        return None;
    }
    h.iter().map(|x| i64::try_from(x / g).ok()).collect()
}

/// Compares the convex hull of level-one points with the full-dimensional
/// level-one slice of `cone`: every point must lie in the cone, the points
/// must span the slice, and every hull facet must hold on the whole slice. Points are matched to slice coordinates by label.
pub fn hull_equals_slice(points: &[LatticeVector], cone: &Cone) -> Result<bool> {
    let slice = cone.slice_lattice();
    let mut coords = Vec::with_capacity(points.len());
    for p in points {
        if !cone.contains(1, p)? {
            return Ok(false);
        }
        coords.push(p.transport(&slice)?.coords().to_vec());
    }
    let facets = match hull_facets(&coords) {
        Ok(f) => f,
        Err(Error::Internal(_)) if !coords.is_empty() => return Ok(false),
        Err(e) => return Err(e),
    };
    for (a, b) in facets {
        let aq: Vec<Q> = a.iter().map(|&x| q(x)).collect();
        match cone.slice_min(1, &aq)? {
            Some(min) if min >= q(b) => {}
            Some(_) => return Ok(false),
            None => return Err(Error::Internal("empty level-one slice".into())),
        }
    }
    Ok(true)
}

/// Whether every point lies in the level-one slice of `cone`.
pub fn points_in_cone(points: &[LatticeVector], cone: &Cone) -> Result<bool> {
    for p in points {
        if !cone.contains(1, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(weyl_dim(2, 4, 1), BigInt::from(6));
        assert_eq!(weyl_dim(2, 4, 2), BigInt::from(20));
        assert_eq!(weyl_dim(3, 7, 0), BigInt::from(1));
        assert!(!weyl_dim(3, 6, 1).is_zero());
    }

    #[test]
    fn gt_count_formula() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 9)] {
            let c = gt_inequalities(k, n).unwrap();
            assert_eq!(c.ineqs().len(), 2 + (k - 1) * (n - k) + k * (n - k - 1), "({k},{n})");
        }
    }

    #[test]
    fn hull_of_square() {
        let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let f = hull_facets(&pts).unwrap();
        assert_eq!(f.len(), 4);
    }
}
