//! Exact combinatorics of plabic graphs on the disc: perfect matchings,
//! flow polynomials, κ-vectors of rank-one modules, seed mutations and the
//! Gelfand–Tsetlin toric degeneration of the Grassmannian with its
//! superpotential.

#![allow(clippy::needless_range_loop)]

pub mod charts;
pub mod combinat;
pub mod cones;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod laurent;
mod linalg;
pub mod plabic;
pub mod seeds;
pub mod superpotential;

pub use combinat::KSubset;
pub use error::{Error, Result};
pub use lattice::{Lattice, LatticeMap, LatticeVector};
pub use laurent::LaurentPoly;
pub use plabic::PlabicModel;

/// Parses `"k,n"` with `1 ≤ k ≤ n−1`.
pub fn parse_kn(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parameter(format!("expected k,n but got {s:?}"));
    let (k, n) = s.split_once(',').ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!("need 1 ≤ k ≤ n−1, got ({k},{n})")));
    }
    Ok((k, n))
}
