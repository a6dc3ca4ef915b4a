//! Named property suites run by `verify`.

use plabic_kappa::charts::{plucker_failures, x_mutate, Charts};
use plabic_kappa::cones::{cone_from_tropical, gt_inequalities, weyl_dim};
use plabic_kappa::seeds::{trop_a_mutate, Seed};
use plabic_kappa::superpotential::{gvector_cone_image, verify_wformula, w_rectangles, Q_LABEL};
use plabic_kappa::{Error, KSubset, LatticeVector, PlabicModel, Result};

use crate::render::{pretty_poly, Check, Vars};

pub const SUITES: [&str; 7] = ["plucker", "valuation-kappa", "xflow", "trop-a", "gt-trop", "wformula", "weyl-count"];

fn check(suite: &str, instance: &str, failure: Option<String>, passed: String) -> Check {
    Check {
        suite: suite.to_string(),
        instance: instance.to_string(),
        pass: failure.is_none(),
        detail: failure.unwrap_or(passed),
    }
}

fn mutable(seed: &Seed) -> Vec<usize> {
    (0..seed.quiver().rank()).filter(|&j| !seed.quiver().is_frozen(j)).collect()
}

pub fn plucker(name: &str, model: &PlabicModel) -> Result<Vec<Check>> {
    let charts = Charts::new(model)?;
    let (k, n) = (model.k(), model.n());
    let mut out = Vec::new();
    for (chart, polys) in [("P", charts.partition_functions()), ("F", charts.flow_polynomials()?)] {
        let failures = plucker_failures(k, n, &polys)?;
        let instance = format!("{name} {chart}");
        let failure = failures.first().map(|f| format!("relation fails: {f}"));
        out.push(check("plucker", &instance, failure, format!("{} coordinates", polys.len())));
    }
    Ok(out)
}

fn valuation_failure(model: &PlabicModel) -> Result<(Option<String>, usize)> {
    let charts = Charts::new(model)?;
    let seed = Seed::from_model(model)?;
    let flows = charts.flow_polynomials()?;
    for (i, f) in &flows {
        let v = charts.valuation(f)?;
        let kappa = seed.kappa_n_star(i)?;
        if v.to_map() != kappa.to_map() {
            return Ok((Some(format!("I = {i}: valuation {v} but kappa {kappa}")), flows.len()));
        }
    }
    Ok((None, flows.len()))
}

pub fn valuation_kappa(name: &str, model: &PlabicModel) -> Result<Vec<Check>> {
    let (failure, count) = valuation_failure(model)?;
    let mut out = vec![check("valuation-kappa", name, failure, format!("{count} subsets"))];
    for f in (0..model.faces().len()).filter(|&f| model.is_square(f)) {
        let moved = model.square_move(f)?;
        let (failure, count) = valuation_failure(&moved)?;
        let instance = format!("{name} after {}", model.face_name(f));
        out.push(check("valuation-kappa", &instance, failure, format!("{count} subsets")));
    }
    Ok(out)
}

pub fn xflow(name: &str, model: &PlabicModel) -> Result<Vec<Check>> {
    let charts = Charts::new(model)?;
    let before = charts.flow_polynomials()?;
    let seed = Seed::from_model(model)?;
    let mut out = Vec::new();
    for j in mutable(&seed) {
        let old = seed.quiver().name(j);
        let f = model.face_by_name(old)?;
        let instance = format!("{name} at {old}");
        if !model.is_square(f) {
            out.push(check("xflow", &instance, None, "skipped: not a square face".into()));
            continue;
        }
        let moved = model.square_move(f)?;
        let new = model.exchanged_label(f)?.map_or_else(|| model.face_name(f), |l| l.to_string());
        let moved_flows = Charts::new(&moved)?.flow_polynomials()?;
        let mut failure = None;
        for (i, g) in &moved_flows {
            let g = g.rename(&new, old)?.transport(charts.flow_lattice());
            match x_mutate(seed.quiver(), j, &g) {
                Ok(h) if before.get(i) == Some(&h) => {}
                Ok(h) => {
                    failure = Some(format!("I = {i}: got {}", pretty_poly(&h, Vars::Prefixed('y'))));
                    break;
                }
                Err(Error::NotLaurent) => {
                    failure = Some(format!("I = {i}: image is not Laurent"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        out.push(check("xflow", &instance, failure, format!("{} subsets", moved_flows.len())));
    }
    Ok(out)
}

pub fn trop_a(k: usize, n: usize) -> Result<Vec<Check>> {
    let seed = Seed::rectangles(k, n)?;
    let q = seed.quiver();
    let subsets = KSubset::all(k, n);
    let kappas = subsets.iter().map(|i| seed.kappa(i)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for j in mutable(&seed) {
        let old = q.name(j);
        let instance = format!("Gr({k},{n}) at {old}");
        let moved = match seed.mutate(j) {
            Ok(t) => t,
            Err(Error::NotPlabicMutable(_)) => {
                out.push(check("trop-a", &instance, None, "skipped: no Plücker exchange".into()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let new = moved.quiver().name(j);
        let mut failure = None;
        for (i, v) in subsets.iter().zip(&kappas) {
            let image = trop_a_mutate(q, j, v)?;
            let image = image.with_lattice(&image.lattice().renamed(old, new)?)?;
            if image != moved.kappa(i)? {
                failure = Some(format!("I = {i}: image {image}"));
                break;
            }
        }
        let back_quiver = q.fz_mutate(j)?.renamed(j, old)?;
        let mut involutions = 0;
        for a in &kappas {
            for b in &kappas {
                if failure.is_some() {
                    break;
                }
                let v = a.sub(b)?;
                let back = trop_a_mutate(&back_quiver, j, &trop_a_mutate(q, j, &v)?)?;
                if back != v {
                    failure = Some(format!("involution fails at {v}"));
                }
                involutions += 1;
            }
        }
        let passed = format!("{} subsets, {involutions} involutions", subsets.len());
        out.push(check("trop-a", &instance, failure, passed));
    }
    Ok(out)
}

pub fn gt_trop(k: usize, n: usize) -> Result<Vec<Check>> {
    let gt = gt_inequalities(k, n)?;
    let seed = Seed::rectangles(k, n)?;
    let trop = cone_from_tropical(&w_rectangles(k, n)?, Q_LABEL, seed.star_name())?;
    let gvec = gvector_cone_image(k, n)?;
    let instance = format!("Gr({k},{n})");
    let failure = if !gt.canonical_eq(&trop) {
        Some("Trop(W) differs from the GT cone".to_string())
    } else if !gt.canonical_eq(&gvec) {
        Some("g-vector image differs from the GT cone".to_string())
    } else {
        None
    };
    Ok(vec![check("gt-trop", &instance, failure, format!("{} inequalities", gt.ineqs().len()))])
}

pub fn wformula(k: usize, n: usize) -> Result<Vec<Check>> {
    let report = verify_wformula(k, n)?;
    let failure = (!report.ok)
        .then(|| -> Result<String> { Ok(format!("difference {}", pretty_poly(&report.diff()?, Vars::Prefixed('p')))) });
    let failure = failure.transpose()?;
    let passed = format!("{} terms", report.from_rectangles.len());
    Ok(vec![check("wformula", &format!("Gr({k},{n})"), failure, passed)])
}

pub fn weyl_count(k: usize, n: usize, level: i64) -> Result<Vec<Check>> {
    let cone = gt_inequalities(k, n)?;
    let mut out = Vec::new();
    for r in 0..=level {
        let count = cone.lattice_points(r)?.len();
        let expected = weyl_dim(k, n, r as u64);
        let failure = (expected != count.into()).then(|| format!("{count} points, Weyl dimension {expected}"));
        out.push(check("weyl-count", &format!("Gr({k},{n}) r={r}"), failure, format!("{count} points")));
    }
    Ok(out)
}

/// Level-one κ-vectors of `seed` over the lattice without `✱`, for
/// containment reports.
pub fn kappa_points(seed: &Seed) -> Result<Vec<(KSubset, LatticeVector)>> {
    KSubset::all(seed.k(), seed.n()).into_iter().map(|i| Ok((i.clone(), seed.kappa_n_star(&i)?))).collect()
}
