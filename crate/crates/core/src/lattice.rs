//! Labelled integer lattices `ℤ^labels`, their vectors and linear maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct basis labels.
#[derive(Debug, Clone)]
pub struct Lattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (t, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), t).is_some() {
                return Err(Error::Parameter(format!("duplicate lattice label {l:?}")));
            }
        }
        Ok(Arc::new(Lattice { labels, index }))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::LatticeMismatch(format!("no label {label:?} in lattice")))
    }

    /// Same lattice with one label replaced.
    pub fn renamed(&self, from: &str, to: &str) -> Result<Arc<Self>> {
        let t = self.require(from)?;
        let mut labels = self.labels.clone();
        labels[t] = to.to_string();
        Lattice::new(labels)
    }
}

pub(crate) fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch(format!("{:?} vs {:?}", a.labels(), b.labels())))
    }
}

/// An integer vector in a labelled lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Arc<Lattice>,
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn zero(lattice: &Arc<Lattice>) -> Self {
        LatticeVector { lattice: lattice.clone(), coords: vec![0; lattice.rank()] }
    }

    pub fn from_coords(lattice: &Arc<Lattice>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::LatticeMismatch(format!(
                "{} coordinates for a rank {} lattice",
                coords.len(),
                lattice.rank()
            )));
        }
        Ok(LatticeVector { lattice: lattice.clone(), coords })
    }

    pub fn basis(lattice: &Arc<Lattice>, label: &str) -> Result<Self> {
        let mut v = Self::zero(lattice);
        v.coords[lattice.require(label)?] = 1;
        Ok(v)
    }

    pub fn from_map(lattice: &Arc<Lattice>, map: &BTreeMap<String, i64>) -> Result<Self> {
        let mut v = Self::zero(lattice);
        for (l, &c) in map {
            v.coords[lattice.require(l)?] = c;
        }
        Ok(v)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn get(&self, label: &str) -> Option<i64> {
        self.lattice.index_of(label).map(|t| self.coords[t])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Nonzero entries keyed by label.
    pub fn to_map(&self) -> BTreeMap<String, i64> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| (self.lattice.label(t).to_string(), c))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &other.lattice)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn dot(&self, other: &Self) -> Result<i64> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum())
    }

    /// Reinterprets the coordinates in another lattice of the same rank.
    pub fn with_lattice(&self, lattice: &Arc<Lattice>) -> Result<Self> {
        Self::from_coords(lattice, self.coords.clone())
    }

    /// Transports coordinates label by label into `target`; labels missing
    /// from `target` must carry zero.
    pub fn transport(&self, target: &Arc<Lattice>) -> Result<Self> {
        let mut v = Self::zero(target);
        for (t, &c) in self.coords.iter().enumerate() {
            match target.index_of(self.lattice.label(t)) {
                Some(u) => v.coords[u] = c,
                None if c == 0 => {}
                None => {
                    return Err(Error::LatticeMismatch(format!("label {} has no counterpart", self.lattice.label(t))))
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coords.iter().enumerate().map(|(t, c)| format!("{}:{}", self.lattice.label(t), c)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A linear map between labelled lattices, stored by the images of the
/// domain basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    domain: Arc<Lattice>,
    codomain: Arc<Lattice>,
    columns: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn from_columns(domain: &Arc<Lattice>, codomain: &Arc<Lattice>, columns: Vec<Vec<i64>>) -> Result<Self> {
        if columns.len() != domain.rank() || columns.iter().any(|c| c.len() != codomain.rank()) {
            return Err(Error::LatticeMismatch("matrix shape does not match lattices".into()));
        }
        Ok(LatticeMap { domain: domain.clone(), codomain: codomain.clone(), columns })
    }

    pub fn identity(lattice: &Arc<Lattice>) -> Self {
        let r = lattice.rank();
        let columns = (0..r).map(|c| (0..r).map(|t| i64::from(t == c)).collect()).collect();
        LatticeMap { domain: lattice.clone(), codomain: lattice.clone(), columns }
    }

    pub fn domain(&self) -> &Arc<Lattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Lattice> {
        &self.codomain
    }

    /// Entry in codomain row `row` and domain column `col`.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col][row]
    }

    pub fn column(&self, col: usize) -> LatticeVector {
        LatticeVector { lattice: self.codomain.clone(), coords: self.columns[col].clone() }
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        same_lattice(&self.domain, &v.lattice)?;
        let mut out = vec![0i64; self.codomain.rank()];
        for (col, &x) in v.coords.iter().enumerate() {
            if x != 0 {
                for (o, a) in out.iter_mut().zip(&self.columns[col]) {
                    *o += a * x;
                }
            }
        }
        Ok(LatticeVector { lattice: self.codomain.clone(), coords: out })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LatticeMap) -> Result<LatticeMap> {
        same_lattice(&self.domain, &first.codomain)?;
        let columns =
            (0..first.domain.rank()).map(|c| self.apply(&first.column(c)).map(|v| v.coords)).collect::<Result<_>>()?;
        Ok(LatticeMap { domain: first.domain.clone(), codomain: self.codomain.clone(), columns })
    }

    /// The dual map on the same labels (matrix transpose).
    pub fn transpose(&self) -> LatticeMap {
        let columns = (0..self.codomain.rank()).map(|r| self.columns.iter().map(|col| col[r]).collect()).collect();
        LatticeMap { domain: self.codomain.clone(), codomain: self.domain.clone(), columns }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_basics() {
        let l = Lattice::new(["a", "b"]).unwrap();
        let m = LatticeMap::from_columns(&l, &l, vec![vec![1, 2], vec![0, 1]]).unwrap();
        let v = LatticeVector::from_coords(&l, vec![1, 1]).unwrap();
        assert_eq!(m.apply(&v).unwrap().coords(), &[1, 3]);
        assert_eq!(m.transpose().apply(&v).unwrap().coords(), &[3, 1]);
        assert_eq!(m.compose(&LatticeMap::identity(&l)).unwrap(), m);
        assert!(Lattice::new(["a", "a"]).is_err());
    }
}
