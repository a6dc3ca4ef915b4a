//! Exact rational linear algebra: kernels and a small two-phase
//! simplex method for `max c·x` subject to `A x ≤ b` with free variables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) type Q = BigRational;

pub(crate) fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&t| !m[t][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for t in 0..rows {
            if t != r && !m[t][c].is_zero() {
                let f = m[t][c].clone();
                for u in 0..cols {
                    let d = &m[r][u] * &f;
                    m[t][u] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// A basis of the right kernel of the matrix given by rows.
pub(crate) fn kernel(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub(crate) enum LpOutcome {
    Optimal(Q),
    Unbounded,
    Infeasible,
}

/// `max c·x` subject to `A x ≤ b`, `x` free, by the two-phase simplex
/// method with Bland's rule on `x = x⁺ − x⁻`.
pub(crate) fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let nv = c.len();
    // Columns: x⁺ (nv), x⁻ (nv), slacks (m), artificials (m).
    let width = 2 * nv + 2 * m;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut rhs: Vec<Q> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for r in 0..m {
        let sign = if b[r].is_negative() { -Q::one() } else { Q::one() };
        let mut row = vec![Q::zero(); width];
        for j in 0..nv {
            row[j] = &a[r][j] * &sign;
            row[nv + j] = -&a[r][j] * &sign;
        }
        row[2 * nv + r] = sign.clone();
        row[2 * nv + m + r] = Q::one();
        tab.push(row);
        rhs.push(&b[r] * &sign);
        basis.push(2 * nv + m + r);
    }
    let mut phase1 = vec![Q::zero(); width];
    for j in 2 * nv + m..width {
        phase1[j] = -Q::one();
    }
    if !run_simplex(&mut tab, &mut rhs, &mut basis, &phase1, width) {
        return LpOutcome::Unbounded;
    }
    let infeas: Q = basis.iter().zip(&rhs).filter(|(&j, _)| j >= 2 * nv + m).map(|(_, v)| v.clone()).sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if basis[r] >= 2 * nv + m {
            if let Some(j) = (0..2 * nv + m).find(|&j| !tab[r][j].is_zero()) {
                pivot(&mut tab, &mut rhs, &mut basis, r, j);
            }
        }
    }
    let mut obj = vec![Q::zero(); width];
    for j in 0..nv {
        obj[j] = c[j].clone();
        obj[nv + j] = -c[j].clone();
    }
    let allowed = 2 * nv + m;
    if !run_simplex(&mut tab, &mut rhs, &mut basis, &obj, allowed) {
        return LpOutcome::Unbounded;
    }
    let value = basis.iter().zip(&rhs).map(|(&j, v)| if j < width { &obj[j] * v } else { Q::zero() }).sum();
    LpOutcome::Optimal(value)
}

fn pivot(tab: &mut [Vec<Q>], rhs: &mut [Q], basis: &mut [usize], r: usize, j: usize) {
    let inv = tab[r][j].recip();
    for x in tab[r].iter_mut() {
        *x *= &inv;
    }
    rhs[r] *= &inv;
    for t in 0..tab.len() {
        if t != r && !tab[t][j].is_zero() {
            let f = tab[t][j].clone();
            for u in 0..tab[t].len() {
                let d = &tab[r][u] * &f;
                tab[t][u] -= d;
            }
            let d = &rhs[r] * &f;
            rhs[t] -= d;
        }
    }
    basis[r] = j;
}

/// Maximizes `obj` over columns `< allowed`; false when unbounded.
fn run_simplex(tab: &mut [Vec<Q>], rhs: &mut [Q], basis: &mut [usize], obj: &[Q], allowed: usize) -> bool {
    loop {
        let reduced = |j: usize| -> Q {
            let mut z = obj[j].clone();
            for (r, &bj) in basis.iter().enumerate() {
                if !tab[r][j].is_zero() {
                    z -= &obj[bj] * &tab[r][j];
                }
            }
            z
        };
        let Some(enter) = (0..allowed).find(|&j| !basis.contains(&j) && reduced(j).is_positive()) else {
            return true;
        };
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..tab.len() {
            if tab[r][enter].is_positive() {
                let ratio = &rhs[r] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return false;
        };
        pivot(tab, rhs, basis, r, enter);
    }
}

/// Integer bounds `⌈min x_t⌉ ..= ⌊max x_t⌋` of every coordinate over
/// `{x : A x ≤ b}`; `None` when the polyhedron is empty.
pub(crate) fn bounding_box(a: &[Vec<Q>], b: &[Q], dim: usize) -> Result<Option<Vec<(i64, i64)>>> {
    let mut out = Vec::with_capacity(dim);
    for t in 0..dim {
        let mut e = vec![Q::zero(); dim];
        e[t] = Q::one();
        let hi = match maximize(a, b, &e) {
            LpOutcome::Optimal(v) => v.floor().to_integer(),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
            LpOutcome::Infeasible => return Ok(None),
        };
        e[t] = -Q::one();
        let lo = match maximize(a, b, &e) {
            LpOutcome::Optimal(v) => (-v).ceil().to_integer(),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
            LpOutcome::Infeasible => return Ok(None),
        };
        let to_i64 = |x: BigInt| i64::try_from(x).map_err(|_| Error::Internal("bound overflow".into()));
        out.push((to_i64(lo)?, to_i64(hi)?));
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn kernel_dimension() {
        let k = kernel(&[qs(&[1, 1, 1])], 3);
        assert_eq!(k.len(), 2);
        assert!(kernel(&[qs(&[1, 0]), qs(&[0, 1])], 2).is_empty());
    }

    #[test]
    fn simplex_box() {
        // Triangle x ≥ 0, y ≥ 0, x + y ≤ 3, with a redundant x ≥ −5.
        let a = vec![qs(&[-1, 0]), qs(&[0, -1]), qs(&[1, 1]), qs(&[-1, 0])];
        let b = qs(&[0, 0, 3, 5]);
        assert_eq!(bounding_box(&a, &b, 2).unwrap(), Some(vec![(0, 3), (0, 3)]));
        // Shifted: 1 ≤ x, x + y ≤ 3, y ≥ 0 needs phase one.
        let a = vec![qs(&[-1, 0]), qs(&[0, -1]), qs(&[1, 1])];
        let b = qs(&[-1, 0, 3]);
        assert_eq!(bounding_box(&a, &b, 2).unwrap(), Some(vec![(1, 3), (0, 2)]));
        let a = vec![qs(&[-1, 0])];
        assert!(matches!(bounding_box(&a, &qs(&[0]), 2), Err(Error::Unbounded)));
        let a = vec![qs(&[1]), qs(&[-1])];
        assert_eq!(bounding_box(&a, &qs(&[-1, -1]), 1).unwrap(), None);
    }
}
