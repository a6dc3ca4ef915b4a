//! Exact Laurent polynomials with big-integer coefficients over a labelled
//! lattice, with substitution, exact division and tropicalization.
//!
//! Tropicalization and valuations use the *min* convention throughout: the
//! valuation of `f` is its minimal exponent and `Trop(f)(v) = min ⟨m, v⟩`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{same_lattice, Lattice, LatticeVector};

pub type Exponent = Vec<i64>;

/// A finitely supported `ℤ`-valued function on a lattice, read as `Σ c_m x^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    lattice: Arc<Lattice>,
    terms: BTreeMap<Exponent, BigInt>,
}

fn add_exp(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_exp(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl LaurentPoly {
    pub fn zero(lattice: &Arc<Lattice>) -> Self {
        LaurentPoly { lattice: lattice.clone(), terms: BTreeMap::new() }
    }

    pub fn one(lattice: &Arc<Lattice>) -> Self {
        Self::monomial(lattice, vec![0; lattice.rank()], BigInt::one())
    }

    pub fn monomial(lattice: &Arc<Lattice>, exp: Exponent, coeff: BigInt) -> Self {
        assert_eq!(exp.len(), lattice.rank(), "exponent length must match lattice rank");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { lattice: lattice.clone(), terms }
    }

    pub fn from_vector(v: &LatticeVector) -> Self {
        Self::monomial(v.lattice(), v.coords().to_vec(), BigInt::one())
    }

    pub fn var(lattice: &Arc<Lattice>, label: &str) -> Result<Self> {
        Ok(Self::from_vector(&LatticeVector::basis(lattice, label)?))
    }

    pub fn from_terms(lattice: &Arc<Lattice>, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(lattice);
        for (e, c) in terms {
            if e.len() != lattice.rank() {
                return Err(Error::LatticeMismatch("exponent of wrong length".into()));
            }
            p.accumulate(e, c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, exp: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn exponents(&self) -> Vec<LatticeVector> {
        self.terms.keys().map(|e| LatticeVector::from_coords(&self.lattice, e.clone()).expect("rank")).collect()
    }

    pub fn as_monomial(&self) -> Option<(&Exponent, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &other.lattice)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.lattice);
        }
        LaurentPoly {
            lattice: self.lattice.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            lattice: self.lattice.clone(),
            terms: self.terms.iter().map(|(e, c)| (add_exp(e, shift), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &other.lattice)?;
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(add_exp(ea, eb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { lattice: self.lattice.clone(), terms: acc })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.lattice);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same lattice");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same lattice");
            }
        }
        result
    }

    /// Coordinatewise minimum and maximum of the exponents.
    fn exponent_box(&self) -> Option<(Exponent, Exponent)> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        let (mut lo, mut hi) = (first.clone(), first);
        for e in it {
            for t in 0..e.len() {
                lo[t] = lo[t].min(e[t]);
                hi[t] = hi[t].max(e[t]);
            }
        }
        Some((lo, hi))
    }

    /// Returns `h` with `self = divisor · h`, or [`Error::NotLaurent`].
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &divisor.lattice)?;
        if divisor.is_zero() {
            return Err(Error::Parameter("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.lattice));
        }
        // The Newton polytope of a quotient is the Minkowski difference, so
        // every quotient exponent lies in this box.
        let (flo, fhi) = self.exponent_box().expect("nonzero");
        let (glo, ghi) = divisor.exponent_box().expect("nonzero");
        let lo = sub_exp(&flo, &glo);
        let hi = sub_exp(&fhi, &ghi);
        let (glead, gcoeff) = divisor.terms.iter().next_back().expect("nonzero");
        let mut rem = self.clone();
        let mut quotient = Self::zero(&self.lattice);
        while let Some((lead, coeff)) = rem.terms.iter().next_back() {
            let e = sub_exp(lead, glead);
            if e.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, h))| x < l || x > h) {
                return Err(Error::NotLaurent);
            }
            if !(coeff % gcoeff).is_zero() {
                return Err(Error::NotLaurent);
            }
            let c = coeff / gcoeff;
            let step = divisor.shift(&e).scale(&c);
            rem = rem.sub(&step)?;
            quotient.accumulate(e, c);
        }
        Ok(quotient)
    }

    /// Ring homomorphism sending the basis variable `t` of this lattice to
    /// `images[t]`. Negative powers are only allowed for monomial images.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<Self> {
        if images.len() != self.lattice.rank() {
            return Err(Error::LatticeMismatch("one image per variable required".into()));
        }
        let target = images
            .first()
            .map(|p| p.lattice.clone())
            .ok_or_else(|| Error::Parameter("substitution into empty lattice".into()))?;
        for img in images {
            same_lattice(&target, &img.lattice)?;
        }
        let mut cache: BTreeMap<(usize, i64), LaurentPoly> = BTreeMap::new();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::monomial(&target, vec![0; target.rank()], c.clone());
            for (t, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let factor = match cache.get(&(t, p)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = power_of(&images[t], p)
                            .ok_or_else(|| Error::NotInvertible(self.lattice.label(t).to_string()))?;
                        cache.insert((t, p), f.clone());
                        f
                    }
                };
                term = term.mul(&factor)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Monomial change of variables along an exponent map.
    pub fn pushforward(&self, map: &crate::lattice::LatticeMap) -> Result<Self> {
        same_lattice(&self.lattice, map.domain())?;
        let mut out = Self::zero(map.codomain());
        for (e, c) in &self.terms {
            let v = LatticeVector::from_coords(&self.lattice, e.clone())?;
            out.accumulate(map.apply(&v)?.coords().to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Minimal exponent. If a unique minimum exists for the product order on
    /// the coordinates `sub` (all coordinates if `None`), it is returned with
    /// `true`; otherwise the lexicographic minimum for `tiebreak` (labels
    /// compared in that order, remaining labels afterwards) with `false`.
    pub fn min_exponent(&self, sub: Option<&[usize]>, tiebreak: &[String]) -> Result<(LatticeVector, bool)> {
        if self.is_zero() {
            return Err(Error::Parameter("minimal exponent of the zero polynomial".into()));
        }
        let all: Vec<usize> = (0..self.lattice.rank()).collect();
        let coords = sub.unwrap_or(&all);
        let exps: Vec<&Exponent> = self.terms.keys().collect();
        let below = |a: &Exponent, b: &Exponent| coords.iter().all(|&t| a[t] <= b[t]);
        let unique: Vec<&&Exponent> = exps.iter().filter(|a| exps.iter().all(|b| below(a, b))).collect();
        if unique.len() == 1 {
            let v = LatticeVector::from_coords(&self.lattice, (*unique[0]).clone())?;
            return Ok((v, true));
        }
        let mut order: Vec<usize> = Vec::new();
        for l in tiebreak {
            let t = self.lattice.require(l)?;
            if !order.contains(&t) {
                order.push(t);
            }
        }
        order.extend((0..self.lattice.rank()).filter(|t| !tiebreak.iter().any(|l| l == self.lattice.label(*t))));
        let key = |e: &Exponent| order.iter().map(|&t| e[t]).collect::<Vec<_>>();
        let best = exps.iter().min_by_key(|e| key(e)).expect("nonzero");
        Ok((LatticeVector::from_coords(&self.lattice, (*best).clone())?, false))
    }

    /// Deduplicated exponents, read as covectors of `Trop(f)(v) = min ⟨m, v⟩`.
    pub fn tropicalize(&self) -> Vec<LatticeVector> {
        self.exponents()
    }

    /// Replaces the lattice by one with the same rank (relabelling).
    pub fn with_lattice(&self, lattice: &Arc<Lattice>) -> Result<Self> {
        if lattice.rank() != self.lattice.rank() {
            return Err(Error::LatticeMismatch("relabelling must preserve rank".into()));
        }
        Ok(LaurentPoly { lattice: lattice.clone(), terms: self.terms.clone() })
    }

    pub fn rename(&self, from: &str, to: &str) -> Result<Self> {
        let lattice = self.lattice.renamed(from, to)?;
        self.with_lattice(&lattice)
    }

    /// Moves every term into `target` by matching labels. Labels missing from
    /// `target` are set to 1 (their exponents are dropped); labels new in
    /// `target` get exponent 0.
    pub fn transport(&self, target: &Arc<Lattice>) -> Self {
        let map: Vec<Option<usize>> = self.lattice.labels().iter().map(|l| target.index_of(l)).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; target.rank()];
            for (t, &x) in e.iter().enumerate() {
                if let Some(u) = map[t] {
                    ne[u] = x;
                }
            }
            out.accumulate(ne, c.clone());
        }
        out
    }

    /// Sum of coefficients (evaluation at all variables equal to one).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exp: serde_json::Map<String, Value> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(t, &x)| (self.lattice.label(t).to_string(), json!(x)))
                    .collect();
                let coeff = match c.to_i64() {
                    Some(x) => json!(x),
                    None => json!(c.to_string()),
                };
                json!({ "coeff": coeff, "exp": exp })
            })
            .collect();
        json!({ "lattice": self.lattice.labels(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parameter(format!("malformed polynomial JSON: {m}"));
        let labels: Vec<String> = v["lattice"]
            .as_array()
            .ok_or_else(|| bad("missing lattice"))?
            .iter()
            .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("label not a string")))
            .collect::<Result<_>>()?;
        let lattice = Lattice::new(labels)?;
        let mut p = Self::zero(&lattice);
        for term in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let coeff: BigInt = match &term["coeff"] {
                Value::Number(x) => x.as_i64().map(BigInt::from).ok_or_else(|| bad("non-integer coefficient"))?,
                Value::String(s) => s.parse().map_err(|_| bad("coefficient string"))?,
                _ => return Err(bad("coefficient")),
            };
            let mut e = vec![0i64; lattice.rank()];
            for (l, x) in term["exp"].as_object().ok_or_else(|| bad("exp"))? {
                e[lattice.require(l)?] = x.as_i64().ok_or_else(|| bad("exponent"))?;
            }
            p.accumulate(e, coeff);
        }
        Ok(p)
    }

    /// Human-readable form with the common monomial factored out, e.g.
    /// `y34*(1+y24)`. `name` maps a lattice label to a variable name.
    pub fn pretty(&self, name: &dyn Fn(&str) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (lo, _) = self.exponent_box().expect("nonzero");
        let factor_out = self.terms.len() > 1 && lo.iter().any(|&x| x != 0);
        let common = if factor_out { lo } else { vec![0; self.lattice.rank()] };
        let mut rest: Vec<(Exponent, &BigInt)> = self.terms.iter().map(|(e, c)| (sub_exp(e, &common), c)).collect();
        rest.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut sum = String::new();
        for (t, (e, c)) in rest.iter().enumerate() {
            let mono = self.monomial_string(e, name);
            let neg = c.is_negative();
            let abs = c.abs();
            if t > 0 {
                sum.push(if neg { '-' } else { '+' });
            } else if neg {
                sum.push('-');
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(sum, "{abs}").unwrap(),
                (false, true) => sum.push_str(&mono),
                (false, false) => write!(sum, "{abs}*{mono}").unwrap(),
            }
        }
        if !factor_out {
            return sum;
        }
        let prefix = self.monomial_string(&common, name);
        format!("{prefix}*({sum})")
    }

    fn monomial_string(&self, e: &[i64], name: &dyn Fn(&str) -> String) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(t, &x)| {
                let v = name(self.lattice.label(t));
                if x == 1 {
                    v
                } else {
                    format!("{v}^{x}")
                }
            })
            .collect();
        parts.join("*")
    }
}

/// `f^p` for any integer `p`; `None` if `p < 0` and `f` is not a monomial
/// with unit coefficient.
fn power_of(f: &LaurentPoly, p: i64) -> Option<LaurentPoly> {
    if p >= 0 {
        return Some(f.pow(p as u32));
    }
    let (e, c) = f.as_monomial()?;
    if !c.abs().is_one() {
        return None;
    }
    let exp: Exponent = e.iter().map(|x| x * p).collect();
    let coeff = if c.is_negative() && p % 2 != 0 { -BigInt::one() } else { BigInt::one() };
    Some(LaurentPoly::monomial(&f.lattice, exp, coeff))
}
