//! Laurent charts of a plabic graph: boundary measurements `P_I` over the
//! edge lattice, flow polynomials `F_I` over `N_✱`, their valuations and the
//! cluster X-mutation between flow charts.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinat::KSubset;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::laurent::LaurentPoly;
use crate::plabic::{Matching, PlabicModel};
use crate::seeds::Quiver;

/// Matching data of a model, enumerated once.
#[derive(Debug, Clone)]
pub struct Charts<'a> {
    model: &'a PlabicModel,
    base: Matching,
    base_value: KSubset,
    by_boundary: BTreeMap<KSubset, Vec<Matching>>,
    edge_lattice: Arc<Lattice>,
    flow_lattice: Arc<Lattice>,
}

impl<'a> Charts<'a> {
    pub fn new(model: &'a PlabicModel) -> Result<Self> {
        let (base, base_value) = model.base_matching()?;
        let mut by_boundary: BTreeMap<KSubset, Vec<Matching>> = BTreeMap::new();
        for m in model.matchings() {
            by_boundary.entry(model.boundary_value(&m)).or_default().push(m);
        }
        let edge_lattice = Lattice::new(model.edges().iter().map(|e| e.id.clone()))?;
        let flow_lattice =
            Lattice::new((0..model.faces().len()).filter(|&f| f != model.star()).map(|f| model.face_name(f)))?;
        Ok(Charts { model, base, base_value, by_boundary, edge_lattice, flow_lattice })
    }

    pub fn model(&self) -> &PlabicModel {
        self.model
    }

    pub fn base_matching(&self) -> &Matching {
        &self.base
    }

    /// `I✱ = ∂m✱`.
    pub fn base_value(&self) -> &KSubset {
        &self.base_value
    }

    pub fn matchings(&self, i: &KSubset) -> &[Matching] {
        self.by_boundary.get(i).map_or(&[], Vec::as_slice)
    }

    /// The positroid: boundary values of all matchings.
    pub fn positroid(&self) -> impl Iterator<Item = &KSubset> {
        self.by_boundary.keys()
    }

    pub fn edge_lattice(&self) -> &Arc<Lattice> {
        &self.edge_lattice
    }

    /// `N_✱`: face names without the base face.
    pub fn flow_lattice(&self) -> &Arc<Lattice> {
        &self.flow_lattice
    }

    /// `P_I = Σ x^m` over matchings with `∂m = I`, in the edge variables.
    pub fn partition_function(&self, i: &KSubset) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&self.edge_lattice);
        for m in self.matchings(i) {
            let mut exp = vec![0i64; self.edge_lattice.rank()];
            for &e in m {
                exp[e] = 1;
            }
            p = p.add(&LaurentPoly::monomial(&self.edge_lattice, exp, BigInt::one())).expect("same lattice");
        }
        p
    }

    fn weight_vector(&self, w: &[i64]) -> Vec<i64> {
        let star = self.model.star();
        w.iter().enumerate().filter(|&(f, _)| f != star).map(|(_, &x)| x).collect()
    }

    /// `F_I = Σ x^{wt(m)}` over matchings with `∂m = I`, computed from matching
    /// weights and from flows in the perfect orientation of `m✱`; the two
    /// must agree.
    pub fn flow_polynomial(&self, i: &KSubset) -> Result<LaurentPoly> {
        let model = self.model;
        let mut by_matching = LaurentPoly::zero(&self.flow_lattice);
        for m in self.matchings(i) {
            let w = model.matching_weight(m, &self.base)?;
            let mono = LaurentPoly::monomial(&self.flow_lattice, self.weight_vector(&w), BigInt::one());
            by_matching = by_matching.add(&mono)?;
        }
        let mut by_flow = LaurentPoly::zero(&self.flow_lattice);
        for flow in model.flows(i, &self.base, &self.base_value)? {
            let w = model.flow_weight(&flow, &self.base);
            let mono = LaurentPoly::monomial(&self.flow_lattice, self.weight_vector(&w), BigInt::one());
            by_flow = by_flow.add(&mono)?;
        }
        if by_flow != by_matching {
            return Err(Error::Internal(format!("flow and matching expansions of F_{i} differ")));
        }
        Ok(by_flow)
    }

    /// Flow polynomials of every subset in the positroid.
    pub fn flow_polynomials(&self) -> Result<BTreeMap<KSubset, LaurentPoly>> {
        self.by_boundary.keys().map(|i| Ok((i.clone(), self.flow_polynomial(i)?))).collect()
    }

    /// Partition functions of every subset in the positroid.
    pub fn partition_functions(&self) -> BTreeMap<KSubset, LaurentPoly> {
        self.by_boundary.keys().map(|i| (i.clone(), self.partition_function(i))).collect()
    }

    /// Minimal exponent of `f` in the face order of the model.
    pub fn valuation(&self, f: &LaurentPoly) -> Result<LatticeVector> {
        let (v, _) = f.min_exponent(None, self.flow_lattice.labels())?;
        Ok(v)
    }
}

/// Cluster X-mutation at vertex `j` of `q`, as a substitution in a Laurent
/// polynomial over (a subset of) the vertex names:
/// `x_j ↦ x_j⁻¹` and `x_i ↦ x_i (1 + x_j^{sgn b_ij})^{b_ij}` for `i ≠ j`.
/// The result is over the same lattice.
pub fn x_mutate(q: &Quiver, j: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
    if q.is_frozen(j) {
        return Err(Error::NotMutable(q.name(j).to_string()));
    }
    let lattice = f.lattice();
    let r = lattice.rank();
    let sj = lattice.require(q.name(j))?;
    // Image of x_t is x^{shift_t} (1 + x_j)^{power_t}.
    let mut shift = vec![vec![0i64; r]; r];
    let mut power = vec![0i64; r];
    for t in 0..r {
        if t == sj {
            shift[t][sj] = -1;
            continue;
        }
        shift[t][t] = 1;
        let b = match q.index(lattice.label(t)) {
            Ok(i) => q.b(i, j),
            Err(_) => 0,
        };
        if b < 0 {
            shift[t][sj] = -b;
        }
        power[t] = b;
    }
    let mut powers: Vec<(Vec<i64>, BigInt, i64)> = Vec::new();
    for (e, c) in f.terms() {
        let mut exp = vec![0i64; r];
        let mut p = 0i64;
        for (t, &x) in e.iter().enumerate() {
            if x != 0 {
                for (acc, s) in exp.iter_mut().zip(&shift[t]) {
                    *acc += x * s;
                }
                p += x * power[t];
            }
        }
        powers.push((exp, c.clone(), p));
    }
    let Some(low) = powers.iter().map(|&(_, _, p)| p).min() else {
        return Ok(f.clone());
    };
    let mut xj = vec![0i64; r];
    xj[sj] = 1;
    let binomial = LaurentPoly::one(lattice).add(&LaurentPoly::monomial(lattice, xj, BigInt::one()))?;
    let mut numerator = LaurentPoly::zero(lattice);
    for (exp, c, p) in powers {
        let term = LaurentPoly::monomial(lattice, exp, c).mul(&binomial.pow((p - low) as u32))?;
        numerator = numerator.add(&term)?;
    }
    if low >= 0 {
        numerator.mul(&binomial.pow(low as u32))
    } else {
        numerator.exact_div(&binomial.pow((-low) as u32))
    }
}

/// Plücker relations `P_{Sac} P_{Sbd} = P_{Sab} P_{Scd} + P_{Sad} P_{Sbc}`
/// for all `S` and `a < b < c < d` outside `S`; subsets without a polynomial
/// count as zero. Returns the failing relations as text.
pub fn plucker_failures(k: usize, n: usize, polys: &BTreeMap<KSubset, LaurentPoly>) -> Result<Vec<String>> {
    let lattice = polys
        .values()
        .next()
        .map(|p| p.lattice().clone())
        .ok_or_else(|| Error::Parameter("no polynomials to check".into()))?;
    let zero = LaurentPoly::zero(&lattice);
    let get = |s: &KSubset| polys.get(s).unwrap_or(&zero);
    let mut failures = Vec::new();
    if k < 2 {
        return Ok(failures);
    }
    for s in KSubset::all(k - 2, n) {
        let rest: Vec<usize> = (1..=n).filter(|&x| !s.contains(x)).collect();
        for (ia, &a) in rest.iter().enumerate() {
            for (ib, &b) in rest.iter().enumerate().skip(ia + 1) {
                for (ic, &c) in rest.iter().enumerate().skip(ib + 1) {
                    for &d in rest.iter().skip(ic + 1) {
                        let with = |x: usize, y: usize| {
                            KSubset::new(n, s.elems().iter().copied().chain([x, y])).expect("disjoint")
                        };
                        let lhs = get(&with(a, c)).mul(get(&with(b, d)))?;
                        let rhs =
                            get(&with(a, b)).mul(get(&with(c, d)))?.add(&get(&with(a, d)).mul(get(&with(b, c)))?)?;
                        if lhs != rhs {
                            failures.push(format!("S={s} a={a} b={b} c={c} d={d}"));
                        }
                    }
                }
            }
        }
    }
    Ok(failures)
}
