//! Superpotentials of `Gr(k,n)`: the rectangles form `W_□` in Plücker
//! variables and `q`, the module-theoretic form `W_X` over the simples
//! lattice, the comparison between them through `β`, and A-mutation of `W`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::cones::{cone_from_tropical, Cone};
use crate::error::{param, Error, Result};
use crate::lattice::Lattice;
use crate::laurent::LaurentPoly;
use crate::plabic::rectangle_label;
use crate::seeds::Seed;

/// Label of the quantum parameter.
pub const Q_LABEL: &str = "q";

fn rect_name(k: usize, n: usize, i: usize, j: usize) -> String {
    rectangle_label(k, n, i, j).to_string()
}

/// `ℤ{q} ⊕ ℤ^{Q₀}` for a seed.
pub fn q_lattice(seed: &Seed) -> Arc<Lattice> {
    let mut labels = vec![Q_LABEL.to_string()];
    labels.extend(seed.quiver().names().iter().cloned());
    Lattice::new(labels).expect("vertex names differ from q")
}

/// `W_□ = p_11/p_∅ + Σ p_ij p_{i−1,j−2} / (p_{i−1,j−1} p_{i,j−1})
/// + q p_{k−1,n−k−1}/p_{k,n−k} + Σ p_ij p_{i−2,j−1} / (p_{i−1,j−1} p_{i−1,j})`,
/// with `p_ij = p_∅` when `i = 0` or `j = 0`.
pub fn w_rectangles(k: usize, n: usize) -> Result<LaurentPoly> {
    let seed = Seed::rectangles(k, n)?;
    let lattice = q_lattice(&seed);
    let m = n - k;
    let mut w = LaurentPoly::zero(&lattice);
    let mut term = |factors: &[(String, i64)]| -> Result<()> {
        let mut exp = vec![0i64; lattice.rank()];
        for (l, e) in factors {
            exp[lattice.require(l)?] += e;
        }
        w = w.add(&LaurentPoly::monomial(&lattice, exp, BigInt::one()))?;
        Ok(())
    };
    let p = |i: usize, j: usize| rect_name(k, n, i, j);
    term(&[(p(1, 1), 1), (p(0, 0), -1)])?;
    for i in 1..=k {
        for j in 2..=m {
            term(&[(p(i, j), 1), (p(i - 1, j - 2), 1), (p(i - 1, j - 1), -1), (p(i, j - 1), -1)])?;
        }
    }
    term(&[(Q_LABEL.to_string(), 1), (p(k - 1, m - 1), 1), (p(k, m), -1)])?;
    for i in 2..=k {
        for j in 1..=m {
            term(&[(p(i, j), 1), (p(i - 2, j - 1), 1), (p(i - 1, j - 1), -1), (p(i - 1, j), -1)])?;
        }
    }
    Ok(w)
}

/// One summand of `W_X`: the vertex carrying `P_s` and the composition
/// factors of `E_s` from socle to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WxSummand {
    pub s: usize,
    pub vertex: String,
    pub factors: Vec<String>,
}

/// The summands of `W_X` for the rectangles seed, `s = 1, …, n`.
pub fn w_x_summands(k: usize, n: usize) -> Result<Vec<WxSummand>> {
    if k == 0 || k >= n {
        return param(format!("need 1 ≤ k ≤ n−1, got ({k},{n})"));
    }
    let m = n - k;
    let name = |i: usize, j: usize| rect_name(k, n, i, j);
    Ok((1..=n)
        .map(|s| {
            let vertex = if s == n {
                name(0, 0)
            } else if s <= m {
                name(k, s)
            } else {
                name(n - s, m)
            };
            let factors = if s < m {
                (1..k).map(|i| name(i, s)).collect()
            } else if s > m && s < n {
                (1..m).map(|j| name(n - s, j)).collect()
            } else {
                Vec::new()
            };
            WxSummand { s, vertex, factors }
        })
        .collect())
}

/// `F` of the quotient Grassmannian of a uniserial module:
/// `Σ_t x^{sum of the top t factors}`.
pub fn quotient_f_polynomial(lattice: &Arc<Lattice>, factors: &[String]) -> Result<LaurentPoly> {
    let mut f = LaurentPoly::one(lattice);
    let mut exp = vec![0i64; lattice.rank()];
    for l in factors.iter().rev() {
        exp[lattice.require(l)?] += 1;
        f = f.add(&LaurentPoly::monomial(lattice, exp.clone(), BigInt::one()))?;
    }
    Ok(f)
}

/// `W_X = Σ_s x^{[S_{P_s}]} F^{quot}(E_s)` over the simples lattice of the
/// rectangles seed.
pub fn w_x_rectangles(k: usize, n: usize) -> Result<LaurentPoly> {
    let seed = Seed::rectangles(k, n)?;
    let lattice = seed.lattice();
    let mut w = LaurentPoly::zero(&lattice);
    for summand in w_x_summands(k, n)? {
        let top = LaurentPoly::var(&lattice, &summand.vertex)?;
        w = w.add(&top.mul(&quotient_f_polynomial(&lattice, &summand.factors)?)?)?;
    }
    Ok(w)
}

/// Image of a polynomial in the simples under `β̂∨`: a monomial `x^c`
/// becomes `q^{c_{J✱}} p^{−βᵀc}`.
pub fn beta_dual_image(seed: &Seed, w: &LaurentPoly) -> Result<LaurentPoly> {
    let lattice = seed.lattice();
    let w = w.transport(&lattice);
    let beta = seed.beta();
    let js = seed.j_star()?;
    let target = q_lattice(seed);
    let mut out = LaurentPoly::zero(&target);
    for (c, coeff) in w.terms() {
        let mut exp = vec![c[js]];
        for u in 0..lattice.rank() {
            let pairing: i64 = (0..lattice.rank()).map(|i| c[i] * beta.entry(i, u)).sum();
            exp.push(-pairing);
        }
        out = out.add(&LaurentPoly::monomial(&target, exp, coeff.clone()))?;
    }
    Ok(out)
}

/// Outcome of comparing `β̂∨(W_X)` with `W_□` after setting `p_∅ = 1`.
#[derive(Debug, Clone)]
pub struct WformulaReport {
    pub ok: bool,
    pub from_modules: LaurentPoly,
    pub from_rectangles: LaurentPoly,
}

impl WformulaReport {
    /// Monomials present on one side only.
    pub fn diff(&self) -> Result<LaurentPoly> {
        self.from_modules.sub(&self.from_rectangles)
    }
}

pub fn verify_wformula(k: usize, n: usize) -> Result<WformulaReport> {
    let seed = Seed::rectangles(k, n)?;
    let mut labels = vec![Q_LABEL.to_string()];
    labels.extend(seed.n_star_lattice().labels().iter().cloned());
    let reduced = Lattice::new(labels)?;
    let from_modules = beta_dual_image(&seed, &w_x_rectangles(k, n)?)?.transport(&reduced);
    let from_rectangles = w_rectangles(k, n)?.transport(&reduced);
    Ok(WformulaReport { ok: from_modules == from_rectangles, from_modules, from_rectangles })
}

/// The g-vector cone of `W_X` pulled back along `β̃` to `ℤ ⊕ N_✱`.
pub fn gvector_cone_image(k: usize, n: usize) -> Result<Cone> {
    let seed = Seed::rectangles(k, n)?;
    let image = beta_dual_image(&seed, &w_x_rectangles(k, n)?)?;
    cone_from_tropical(&image, Q_LABEL, seed.star_name())
}

/// A-mutation of a superpotential at `j`: substitutes
/// `x_j = (M_in + M_out) / x'_j` with `M_in = Π_{i→j} x_i`,
/// `M_out = Π_{j→i} x_i`, clears one global denominator and divides
/// exactly. Returns the mutated seed and `W` in its variables.
pub fn a_mutate_w(seed: &Seed, w: &LaurentPoly, j: usize) -> Result<(Seed, LaurentPoly)> {
    let mutated = seed.mutate(j)?;
    let old_name = seed.quiver().name(j).to_string();
    let new_name = mutated.quiver().name(j).to_string();
    let lattice = w.lattice().clone();
    let sj = lattice.require(&old_name)?;
    let q = seed.quiver();
    let mut m_in = vec![0i64; lattice.rank()];
    let mut m_out = vec![0i64; lattice.rank()];
    for (i, mult) in q.in_neighbours(j) {
        m_in[lattice.require(q.name(i))?] += mult;
    }
    for (i, mult) in q.out_neighbours(j) {
        m_out[lattice.require(q.name(i))?] += mult;
    }
    let binomial = LaurentPoly::monomial(&lattice, m_in, BigInt::one()).add(&LaurentPoly::monomial(
        &lattice,
        m_out,
        BigInt::one(),
    ))?;
    let low = w.terms().map(|(e, _)| e[sj]).min().unwrap_or(0).min(0);
    let mut numerator = LaurentPoly::zero(&lattice);
    for (e, c) in w.terms() {
        let mut exp = e.clone();
        exp[sj] = -e[sj];
        let power = u32::try_from(e[sj] - low).map_err(|_| Error::Internal("exponent overflow".into()))?;
        let term = LaurentPoly::monomial(&lattice, exp, c.clone()).mul(&binomial.pow(power))?;
        numerator = numerator.add(&term)?;
    }
    let result = numerator.exact_div(&binomial.pow((-low) as u32))?;
    Ok((mutated, result.rename(&old_name, &new_name)?))
}

/// Exponents of `W` grouped by the summand they came from, for display.
pub fn summand_table(k: usize, n: usize) -> Result<BTreeMap<usize, LaurentPoly>> {
    let seed = Seed::rectangles(k, n)?;
    let lattice = seed.lattice();
    w_x_summands(k, n)?
        .into_iter()
        .map(|s| {
            let top = LaurentPoly::var(&lattice, &s.vertex)?;
            Ok((s.s, top.mul(&quotient_f_polynomial(&lattice, &s.factors)?)?))
        })
        .collect()
}
