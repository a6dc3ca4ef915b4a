//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

use plabic_kappa::KSubset;

/// Row lengths of the Young diagram cut out by the lattice path of `i`:
/// walking `1..=n`, members step down and non-members step right, and
/// each row collects the right steps taken before its down step.
pub fn path_rows(i: &KSubset) -> Vec<usize> {
    let mut rows = Vec::new();
    let mut right = 0;
    for x in 1..=i.n() {
        if i.contains(x) {
            rows.push(right);
        } else {
            right += 1;
        }
    }
    rows.reverse();
    rows
}

/// Longest diagonal of the cells of `λ_J` not in `λ_I`, by direct cell count.
pub fn max_diag_oracle(j: &KSubset, i: &KSubset) -> i64 {
    let (outer, inner) = (path_rows(j), path_rows(i));
    let mut counts = std::collections::HashMap::new();
    for (row, &len) in outer.iter().enumerate() {
        for col in 0..len {
            if col >= inner[row] {
                *counts.entry(col as i64 - row as i64).or_insert(0i64) += 1;
            }
        }
    }
    counts.values().copied().max().unwrap_or(0)
}

/// Hook-content formula for the dimension of the `GL_n` representation with
/// rectangular highest weight `(r^k)`.
pub fn hook_content_dim(k: usize, n: usize, r: usize) -> BigInt {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for row in 0..k {
        for col in 0..r {
            let content = n as i64 + col as i64 - row as i64;
            let hook = (r - col) + (k - row) - 1;
            acc *= BigRational::new(BigInt::from(content), BigInt::from(hook as i64));
        }
    }
    acc.to_integer()
}

pub fn subset(s: &str, n: usize) -> KSubset {
    KSubset::parse(s, n).unwrap()
}
