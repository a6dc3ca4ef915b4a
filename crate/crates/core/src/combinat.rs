//! Cyclic-set combinatorics: k-subsets of `[n]`, weak separation, Grassmann
//! necklaces, Young diagrams in the `k × (n−k)` box and diagonal lengths.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{param, Error, Result};

/// A k-element subset of the cyclically ordered set `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    n: usize,
    elems: Vec<usize>,
}

impl KSubset {
    pub fn new(n: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = elems.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return param(format!("repeated element in subset {v:?}"));
        }
        if let Some(&bad) = v.iter().find(|&&e| e == 0 || e > n) {
            return param(format!("element {bad} outside 1..{n}"));
        }
        Ok(KSubset { n, elems: v })
    }

    /// The cyclic interval `[start, start+len−1]` (indices mod n, 1-based).
    pub fn interval(n: usize, start: usize, len: usize) -> Result<Self> {
        if len > n || start == 0 || start > n {
            return param(format!("interval [{start},+{len}) not inside [{n}]"));
        }
        Self::new(n, (0..len).map(|t| (start - 1 + t) % n + 1))
    }

    /// Parses `"1457"` (single digits, n ≤ 9) or `"1,4,5,7"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let elems: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parameter(format!("bad subset {s:?}: {e}")))?
        } else {
            if n > 9 && !s.is_empty() {
                return param(format!("subset {s:?} must be comma separated when n > 9"));
            }
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parameter(format!("bad subset {s:?}")))?
        };
        Self::new(n, elems)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    pub fn minus(&self, other: &KSubset) -> Vec<usize> {
        self.elems.iter().copied().filter(|&e| !other.contains(e)).collect()
    }

    /// All k-subsets of `[n]` in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<KSubset> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<KSubset>) {
            if cur.len() == k {
                out.push(KSubset { n, elems: cur.clone() });
                return;
            }
            for e in start..=n {
                if n - e + 1 < k - cur.len() {
                    break;
                }
                cur.push(e);
                rec(e + 1, k, n, cur, out);
                cur.pop();
            }
        }
        if k <= n {
            rec(1, k, n, &mut cur, &mut out);
        }
        out
    }

    /// Elements listed in the cyclic order `i < i+1 < … < i−1`.
    pub fn sorted_from(&self, i: usize) -> Vec<usize> {
        let key = |e: &usize| (e + self.n - i) % self.n;
        let mut v = self.elems.clone();
        v.sort_by_key(key);
        v
    }

    /// Lexicographic comparison with `[n]` reordered to start at `i`.
    pub fn cmp_from(&self, other: &KSubset, i: usize) -> Ordering {
        let key = |e: usize| (e + self.n - i) % self.n;
        let a: Vec<usize> = self.sorted_from(i).into_iter().map(key).collect();
        let b: Vec<usize> = other.sorted_from(i).into_iter().map(key).collect();
        a.cmp(&b)
    }

    fn check_compatible(&self, other: &KSubset) -> Result<()> {
        if self.n != other.n || self.k() != other.k() {
            return param(format!("subsets {self} and {other} live in different Grassmannians"));
        }
        Ok(())
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { "," } else { "" };
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// True iff `I∖J` and `J∖I` are separated by a chord of the circle.
pub fn weakly_separated(i: &KSubset, j: &KSubset) -> Result<bool> {
    i.check_compatible(j)?;
    // Walk the circle over the symmetric difference and count side changes.
    let sides: Vec<bool> = (1..=i.n)
        .filter_map(|e| match (i.contains(e), j.contains(e)) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        })
        .collect();
    if sides.is_empty() {
        return Ok(true);
    }
    let changes = (0..sides.len()).filter(|&t| sides[t] != sides[(t + 1) % sides.len()]).count();
    Ok(changes <= 2)
}

/// Which of the three equivalent necklace criteria hold for a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NecklaceVerdict {
    pub successor: bool,
    pub interval: bool,
    pub order_and_separation: bool,
}

impl NecklaceVerdict {
    pub fn holds(&self) -> bool {
        self.successor
    }
}

/// Tests a sequence `I_1, …, I_n` against the three necklace criteria:
/// `I_i∖{i} ⊆ I_{i+1}`; `I_i∖I_j ⊆ [i, j)`; `I_i ≤_i I_j` with pairwise weak
/// separation. The criteria are equivalent, so disagreement is an internal error.
pub fn necklace_check(seq: &[KSubset]) -> Result<NecklaceVerdict> {
    let n = seq.len();
    if n == 0 {
        return param("empty sequence");
    }
    let k = seq[0].k();
    if let Some(bad) = seq.iter().find(|s| s.n != n || s.k() != k) {
        return param(format!("term {bad} is not a {k}-subset of [{n}]"));
    }
    let next = |i: usize| i % n + 1;
    let term = |i: usize| &seq[i - 1];

    let successor = (1..=n).all(|i| term(i).elems.iter().all(|&e| e == i || term(next(i)).contains(e)));

    let in_half_open = |e: usize, i: usize, j: usize| (e + n - i) % n < (j + n - i) % n;
    let interval = (1..=n).all(|i| (1..=n).all(|j| term(i).minus(term(j)).into_iter().all(|e| in_half_open(e, i, j))));

    let mut order_and_separation = true;
    for i in 1..=n {
        for j in 1..=n {
            if term(i).cmp_from(term(j), i) == Ordering::Greater || !weakly_separated(term(i), term(j))? {
                order_and_separation = false;
            }
        }
    }

    let verdict = NecklaceVerdict { successor, interval, order_and_separation };
    if successor != interval || successor != order_and_separation {
        return Err(Error::Internal(format!("necklace criteria disagree: {verdict:?}")));
    }
    Ok(verdict)
}

/// The Grassmann necklace of a positroid: `I_i` is the `≤_i`-minimum of `P`.
pub fn necklace_of_positroid(p: &BTreeSet<KSubset>) -> Result<Vec<KSubset>> {
    let first = p.iter().next().ok_or_else(|| Error::Parameter("empty positroid".into()))?;
    let n = first.n;
    Ok((1..=n).map(|i| p.iter().min_by(|a, b| a.cmp_from(b, i)).cloned().expect("nonempty")).collect())
}

/// A partition fitting in the `k × (n−k)` box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    pub k: usize,
    pub n: usize,
    pub parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && row <= self.k && col >= 1 && col <= self.parts[row - 1]
    }

    /// Cells `(row, col)`, 1-based, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
    }

    /// The `i × j` rectangle.
    pub fn rectangle(k: usize, n: usize, i: usize, j: usize) -> Self {
        let parts = (1..=k).map(|r| if r <= i { j } else { 0 }).collect();
        YoungDiagram { k, n, parts }
    }

    /// Inverse of [`young_of`].
    pub fn to_subset(&self) -> KSubset {
        let k = self.k;
        let elems = (1..=k).map(|s| self.parts[k - s] + s);
        KSubset::new(self.n, elems).expect("diagram inside box")
    }
}

/// `λ_t = i_{k+1−t} − (k+1−t)` for `I = {i_1 < … < i_k}`.
pub fn young_of(i: &KSubset) -> YoungDiagram {
    let k = i.k();
    let parts = (1..=k).map(|t| i.elems[k - t] - (k + 1 - t)).collect();
    YoungDiagram { k, n: i.n, parts }
}

/// Largest number of cells on one diagonal `col − row = d` of `λ_J ∖ λ_I`
/// (set difference of cells, no containment assumed).
pub fn max_diag(j: &KSubset, i: &KSubset) -> usize {
    diag_max(&young_of(j), &young_of(i))
}

pub(crate) fn diag_max(outer: &YoungDiagram, inner: &YoungDiagram) -> usize {
    let k = outer.k as i64;
    let offset = k;
    let mut counts = vec![0usize; (outer.n as i64 + k + 1) as usize];
    for (r, c) in outer.cells() {
        if !inner.contains(r, c) {
            counts[(c as i64 - r as i64 + offset) as usize] += 1;
        }
    }
    counts.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str, n: usize) -> KSubset {
        KSubset::parse(t, n).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("1,4,5,7", 9), s("1457", 9));
        assert_eq!(s("1457", 9).to_string(), "1457");
        assert_eq!(s("1,10", 10).to_string(), "1,10");
        assert!(KSubset::parse("1,1", 4).is_err());
        assert!(KSubset::parse("15", 4).is_err());
        assert!(KSubset::parse("12", 10).is_err());
    }

    #[test]
    fn separation_examples() {
        assert!(!weakly_separated(&s("13", 4), &s("24", 4)).unwrap());
        assert!(weakly_separated(&s("12", 4), &s("34", 4)).unwrap());
        assert!(weakly_separated(&s("13", 4), &s("13", 4)).unwrap());
        assert!(weakly_separated(&s("12", 4), &s("123", 4)).is_err());
    }

    #[test]
    fn necklace_examples() {
        let seq = |ts: &[&str]| ts.iter().map(|t| s(t, 5)).collect::<Vec<_>>();
        assert!(necklace_check(&seq(&["12", "23", "34", "14", "15"])).unwrap().holds());
        assert!(!necklace_check(&seq(&["13", "24", "34", "45", "15"])).unwrap().holds());
        assert!(necklace_check(&seq(&["12", "23", "34", "45", "15"])).unwrap().holds());
    }

    #[test]
    fn necklace_of_shark_positroid() {
        let p: BTreeSet<KSubset> = KSubset::all(2, 5).into_iter().filter(|x| *x != s("45", 5)).collect();
        let neck: Vec<String> = necklace_of_positroid(&p).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(neck, ["12", "23", "34", "14", "15"]);
        assert!(necklace_of_positroid(&BTreeSet::new()).is_err());
    }

    #[test]
    fn young_examples() {
        assert_eq!(young_of(&s("1457", 9)).parts, vec![3, 2, 2, 0]);
        assert_eq!(young_of(&s("123", 7)).parts, vec![0, 0, 0]);
        assert_eq!(young_of(&s("567", 7)).parts, vec![4, 4, 4]);
        assert_eq!(young_of(&s("1457", 9)).to_subset(), s("1457", 9));
    }

    #[test]
    fn max_diag_examples() {
        assert_eq!(max_diag(&s("24", 4), &s("13", 4)), 1);
        assert_eq!(max_diag(&s("13", 4), &s("24", 4)), 0);
        assert_eq!(max_diag(&s("6789", 9), &s("1457", 9)), 3);
        assert_eq!(max_diag(&s("1457", 9), &s("1457", 9)), 0);
    }
}
