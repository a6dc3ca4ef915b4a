//! `plabic-kappa`: flow polynomials, κ-vectors, seed mutations and the
//! Gelfand–Tsetlin cone of a Grassmannian from the command line.

mod render;
mod verify;

use std::fmt::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use plabic_kappa::charts::Charts;
use plabic_kappa::cones::{cone_from_tropical, gt_inequalities, points_in_cone, weyl_dim};
use plabic_kappa::fixtures::resolve_model;
use plabic_kappa::plabic::rectangle_label;
use plabic_kappa::seeds::Seed;
use plabic_kappa::superpotential::{a_mutate_w, w_rectangles, w_x_rectangles, w_x_summands, Q_LABEL};
use plabic_kappa::{parse_kn, Error, KSubset, LatticeVector, LaurentPoly, PlabicModel};

use render::{Check, Format, Rendered, Vars};

#[derive(Parser, Debug)]
#[command(name = "plabic-kappa", version, about = "Plabic graphs, κ-vectors and Gelfand–Tsetlin cones")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// Model argument: `shark`, `rect:k,n`, or a path to a model file.
#[derive(clap::Args, Debug)]
struct ModelArgs {
    model: String,
    /// Comma-separated vertex (face) names to mutate at, in order.
    #[arg(long, value_delimiter = ',')]
    mutations: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Perfect matchings grouped by boundary value.
    Matchings {
        #[command(flatten)]
        m: ModelArgs,
        subset: Option<String>,
    },
    /// Partition functions in the edge variables.
    Partition {
        #[command(flatten)]
        m: ModelArgs,
        subset: Option<String>,
    },
    /// Flow polynomials in the face variables.
    Flow {
        #[command(flatten)]
        m: ModelArgs,
        subset: Option<String>,
    },
    /// Minimal exponents of flow polynomials.
    Valuation {
        #[command(flatten)]
        m: ModelArgs,
        subset: Option<String>,
        /// Comma-separated face names used to break ties between minima.
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
    },
    /// κ-vector of a subset in the seed of the model.
    Kappa {
        #[command(flatten)]
        m: ModelArgs,
        subset: String,
    },
    /// Square moves at the given faces; prints the resulting model.
    Mutate {
        #[command(flatten)]
        m: ModelArgs,
    },
    /// X-mutation of flow charts at every mutable vertex.
    Xcheck {
        #[command(flatten)]
        m: ModelArgs,
    },
    /// Gelfand–Tsetlin cone, or its lattice points at a level.
    GtCone {
        #[arg(long, value_parser = parse_kn_arg)]
        kn: (usize, usize),
        #[arg(long)]
        level: Option<i64>,
    },
    /// Level-one κ-points of the seed.
    NoBody {
        #[command(flatten)]
        m: ModelArgs,
    },
    /// Superpotential in the Plücker chart of the rectangles seed.
    Superpotential {
        #[arg(long, value_parser = parse_kn_arg)]
        kn: (usize, usize),
        /// Comma-separated vertex names to mutate at, in order.
        #[arg(long, value_delimiter = ',')]
        mutations: Vec<String>,
    },
    /// Superpotential in the cluster X-chart of the rectangles seed.
    Wx {
        #[arg(long, value_parser = parse_kn_arg)]
        kn: (usize, usize),
    },
    /// Run a property suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
        suite: String,
        /// Model for the model-based suites.
        model: Option<String>,
        #[arg(long, value_parser = parse_kn_arg)]
        kn: Option<(usize, usize)>,
        /// Highest level for `weyl-count`.
        #[arg(long, default_value_t = 2)]
        level: i64,
    },
}

fn parse_kn_arg(s: &str) -> Result<(usize, usize), String> {
    parse_kn(s).map_err(|e| e.to_string())
}

/// Why a run failed, mapped to an exit status.
enum Failure {
    Lib(Error),
    Usage(String),
    Verification(Rendered),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Rendered, Failure>;

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::NotMutable(_) | Error::NotPlabicMutable(_) | Error::LatticeMismatch(_) => 2,
        Error::Parse { .. } | Error::Invariant { .. } => 3,
        Error::NotLaurent | Error::NotInvertible(_) | Error::Unbounded | Error::Internal(_) => 1,
    }
}

fn load(spec: &str) -> Result<PlabicModel, Error> {
    resolve_model(spec, |path| std::fs::read_to_string(path))
}

/// The model after the square moves of `args`.
fn moved_model(args: &ModelArgs) -> Result<PlabicModel, Error> {
    let mut model = load(&args.model)?;
    for name in &args.mutations {
        let f = model.face_by_name(name)?;
        model = model.square_move(f)?;
    }
    Ok(model)
}

fn mutate_seed(mut seed: Seed, path: &[String]) -> Result<Seed, Error> {
    for name in path {
        let j = seed.quiver().index(name)?;
        seed = seed.mutate(j)?;
    }
    Ok(seed)
}

fn subsets(
    model: &PlabicModel,
    subset: Option<&str>,
    all: impl Iterator<Item = KSubset>,
) -> Result<Vec<KSubset>, Error> {
    match subset {
        Some(s) => Ok(vec![KSubset::parse(s, model.n())?]),
        None => Ok(all.collect()),
    }
}

fn matchings(args: &ModelArgs, subset: Option<&str>) -> Outcome {
    let model = moved_model(args)?;
    let charts = Charts::new(&model)?;
    let keys = subsets(&model, subset, charts.positroid().cloned())?;
    let mut json = serde_json::Map::new();
    let mut csv = String::from("boundary,edges\n");
    let mut pretty = String::new();
    for i in &keys {
        let list: Vec<Vec<String>> =
            charts.matchings(i).iter().map(|m| m.iter().map(|&e| model.edges()[e].id.clone()).collect()).collect();
        for m in &list {
            writeln!(csv, "{i},{}", m.join(" ")).unwrap();
            writeln!(pretty, "{i}: {}", m.join(" ")).unwrap();
        }
        if list.is_empty() {
            writeln!(pretty, "{i}: none").unwrap();
        }
        json.insert(i.to_string(), json!(list));
    }
    Ok(Rendered { json: Value::Object(json), csv, pretty })
}

fn partition(args: &ModelArgs, subset: Option<&str>) -> Outcome {
    let model = moved_model(args)?;
    let charts = Charts::new(&model)?;
    let keys = subsets(&model, subset, charts.positroid().cloned())?;
    let items: Vec<(String, LaurentPoly)> =
        keys.iter().map(|i| (i.to_string(), charts.partition_function(i))).collect();
    Ok(render::polys("subset", &items, Vars::Plain, "P"))
}

fn flow(args: &ModelArgs, subset: Option<&str>) -> Outcome {
    let model = moved_model(args)?;
    let charts = Charts::new(&model)?;
    let keys = subsets(&model, subset, charts.positroid().cloned())?;
    let items =
        keys.iter().map(|i| Ok((i.to_string(), charts.flow_polynomial(i)?))).collect::<Result<Vec<_>, Error>>()?;
    Ok(render::polys("subset", &items, Vars::Prefixed('y'), "F"))
}

fn valuation(args: &ModelArgs, subset: Option<&str>, order: &[String]) -> Outcome {
    let model = moved_model(args)?;
    let charts = Charts::new(&model)?;
    let keys = subsets(&model, subset, charts.positroid().cloned())?;
    let order = if order.is_empty() { charts.flow_lattice().labels() } else { order };
    let mut items = Vec::new();
    let mut ties = Vec::new();
    for i in &keys {
        let (v, unique) = charts.flow_polynomial(i)?.min_exponent(None, order)?;
        if !unique {
            ties.push(i.to_string());
        }
        items.push((i.to_string(), v));
    }
    let mut out = render::vectors("subset", &items);
    for t in &ties {
        writeln!(out.pretty, "{t}: minimum chosen by tie-break order").unwrap();
    }
    out.json = json!({ "valuations": out.json, "tie_broken": ties });
    Ok(out)
}

/// `k × (n−k)` grid of a κ-vector indexed by rectangle labels, if every
/// rectangle label is a vertex of the seed.
fn kappa_grid(seed: &Seed, v: &LatticeVector) -> Option<String> {
    let (k, n) = (seed.k(), seed.n());
    let mut grid = String::new();
    for i in 1..=k {
        let row = (1..=n - k)
            .map(|j| v.get(&rectangle_label(k, n, i, j).to_string()).map(|x| format!("{x:>3}")))
            .collect::<Option<Vec<_>>>()?;
        writeln!(grid, "{}", row.join("")).unwrap();
    }
    writeln!(grid, "✱ {} = {}", seed.star_name(), v.get(seed.star_name())?).unwrap();
    Some(grid)
}

fn kappa(args: &ModelArgs, subset: &str) -> Outcome {
    let model = load(&args.model)?;
    let seed = mutate_seed(Seed::from_model(&model)?, &args.mutations)?;
    let i = KSubset::parse(subset, seed.n())?;
    let v = seed.kappa(&i)?;
    let mut out = render::vectors("subset", &[(i.to_string(), v.clone())]);
    out.json = json!({ "subset": i.to_string(), "star": seed.star_name(), "kappa": render::vector_json(&v) });
    if let Some(grid) = kappa_grid(&seed, &v) {
        out.pretty = grid;
    }
    Ok(out)
}

fn mutate(args: &ModelArgs) -> Outcome {
    let model = moved_model(args)?;
    let names = model.face_names();
    let arrows: Vec<[&str; 2]> = model
        .arrows()
        .iter()
        .filter(|a| a.tail != a.head)
        .map(|a| [names[a.tail].as_str(), names[a.head].as_str()])
        .collect();
    let mut csv = String::from("tail,head\n");
    for [t, h] in &arrows {
        writeln!(csv, "{t},{h}").unwrap();
    }
    let text = model.to_text();
    let json = json!({ "faces": names, "arrows": arrows, "model": text });
    Ok(Rendered { json, csv, pretty: text })
}

fn verdict(checks: Vec<Check>) -> Outcome {
    let pass = checks.iter().all(|c| c.pass);
    let out = render::checks(&checks);
    if pass {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn xcheck(args: &ModelArgs) -> Outcome {
    let model = moved_model(args)?;
    verdict(verify::xflow(&args.model, &model)?)
}

fn gt_cone(kn: (usize, usize), level: Option<i64>) -> Outcome {
    let (k, n) = kn;
    let cone = gt_inequalities(k, n)?;
    let Some(r) = level else { return Ok(render::cone(&cone)) };
    if r < 0 {
        return Err(Failure::Usage(format!("level must be non-negative, got {r}")));
    }
    let points = cone.lattice_points(r)?;
    let dim = weyl_dim(k, n, r as u64);
    let items: Vec<(String, LatticeVector)> =
        points.iter().enumerate().map(|(t, p)| (t.to_string(), p.clone())).collect();
    let mut out = render::vectors("point", &items);
    out.pretty = format!("{} lattice points at level {r}; Weyl dimension {dim}\n{}", points.len(), out.pretty);
    out.json = json!({
        "level": r,
        "count": points.len(),
        "weyl_dim": dim.to_string(),
        "points": points.iter().map(render::vector_json).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn no_body(args: &ModelArgs) -> Outcome {
    let model = load(&args.model)?;
    let seed = Seed::from_model(&model)?;
    let rect = args.model.strip_prefix("rect:").map(parse_kn).transpose()?;
    let mut w = match rect {
        Some((k, n)) => Some(w_rectangles(k, n)?),
        None => None,
    };
    let mut seed_now = seed;
    for name in &args.mutations {
        let j = seed_now.quiver().index(name)?;
        match w.take() {
            Some(wp) => {
                let (moved, mw) = a_mutate_w(&seed_now, &wp, j)?;
                seed_now = moved;
                w = Some(mw);
            }
            None => seed_now = seed_now.mutate(j)?,
        }
    }
    let items = verify::kappa_points(&seed_now)?;
    let items: Vec<(String, LatticeVector)> = items.into_iter().map(|(i, v)| (i.to_string(), v)).collect();
    let mut out = render::vectors("subset", &items);
    let mut json = json!({ "points": out.json });
    if let Some(w) = &w {
        let cone = cone_from_tropical(w, Q_LABEL, seed_now.star_name())?;
        let points: Vec<LatticeVector> = items.iter().map(|(_, v)| v.clone()).collect();
        let inside = points_in_cone(&points, &cone)?;
        json["in_trop_w_cone"] = json!(inside);
        writeln!(out.pretty, "all points in Trop(W) cone: {inside}").unwrap();
    }
    out.json = json;
    Ok(out)
}

fn superpotential(kn: (usize, usize), path: &[String]) -> Outcome {
    let (k, n) = kn;
    let mut seed = Seed::rectangles(k, n)?;
    let mut w = w_rectangles(k, n)?;
    for name in path {
        let j = seed.quiver().index(name)?;
        (seed, w) = a_mutate_w(&seed, &w, j)?;
    }
    let mut out = render::polys("chart", &[("W".to_string(), w.clone())], Vars::Prefixed('p'), "W");
    out.pretty = format!("W = {}\n", render::pretty_terms(&w, Vars::Prefixed('p')));
    Ok(out)
}

fn wx(kn: (usize, usize)) -> Outcome {
    let (k, n) = kn;
    let summands = w_x_summands(k, n)?;
    let total = w_x_rectangles(k, n)?;
    let mut csv = String::from("s,vertex,factors\n");
    let mut pretty = String::new();
    for s in &summands {
        writeln!(csv, "{},{},{}", s.s, s.vertex, s.factors.join(" ")).unwrap();
        let factors = if s.factors.is_empty() { "none".to_string() } else { s.factors.join(" ") };
        writeln!(pretty, "s={} vertex {} factors {factors}", s.s, s.vertex).unwrap();
    }
    writeln!(pretty, "W_X = {}", render::pretty_poly(&total, Vars::Prefixed('x'))).unwrap();
    let json = json!({
        "summands": summands
            .iter()
            .map(|s| json!({ "s": s.s, "vertex": s.vertex, "factors": s.factors }))
            .collect::<Vec<_>>(),
        "total": total.to_json(),
    });
    Ok(Rendered { json, csv, pretty })
}

fn verify_suite(suite: &str, model: Option<&str>, kn: Option<(usize, usize)>, level: i64) -> Outcome {
    let kn = match (kn, model.and_then(|m| m.strip_prefix("rect:"))) {
        (Some(kn), _) => Some(kn),
        (None, Some(s)) => Some(parse_kn(s)?),
        (None, None) => None,
    };
    let named_model = || -> Result<(String, PlabicModel), Failure> {
        match (model, kn) {
            (Some(m), _) => Ok((m.to_string(), load(m)?)),
            (None, Some((k, n))) => {
                let name = format!("rect:{k},{n}");
                let m = load(&name)?;
                Ok((name, m))
            }
            (None, None) => Err(Failure::Usage(format!("{suite} needs a model or --kn"))),
        }
    };
    let need_kn = || kn.ok_or_else(|| Failure::Usage(format!("{suite} needs --kn k,n")));
    let checks = match suite {
        "plucker" => {
            let (name, m) = named_model()?;
            verify::plucker(&name, &m)?
        }
        "valuation-kappa" => {
            let (name, m) = named_model()?;
            verify::valuation_kappa(&name, &m)?
        }
        "xflow" => {
            let (name, m) = named_model()?;
            verify::xflow(&name, &m)?
        }
        "trop-a" => {
            let (k, n) = need_kn()?;
            verify::trop_a(k, n)?
        }
        "gt-trop" => {
            let (k, n) = need_kn()?;
            verify::gt_trop(k, n)?
        }
        "wformula" => {
            let (k, n) = need_kn()?;
            verify::wformula(k, n)?
        }
        "weyl-count" => {
            let (k, n) = need_kn()?;
            if level < 0 {
                return Err(Failure::Usage(format!("level must be non-negative, got {level}")));
            }
            verify::weyl_count(k, n, level)?
        }
        other => return Err(Failure::Usage(format!("unknown suite {other}"))),
    };
    verdict(checks)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Matchings { m, subset } => matchings(m, subset.as_deref()),
        Command::Partition { m, subset } => partition(m, subset.as_deref()),
        Command::Flow { m, subset } => flow(m, subset.as_deref()),
        Command::Valuation { m, subset, order } => valuation(m, subset.as_deref(), order),
        Command::Kappa { m, subset } => kappa(m, subset),
        Command::Mutate { m } => mutate(m),
        Command::Xcheck { m } => xcheck(m),
        Command::GtCone { kn, level } => gt_cone(*kn, *level),
        Command::NoBody { m } => no_body(m),
        Command::Superpotential { kn, mutations } => superpotential(*kn, mutations),
        Command::Wx { kn } => wx(*kn),
        Command::Verify { suite, model, kn, level } => verify_suite(suite, model.as_deref(), *kn, *level),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.get(cli.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{}", out.get(cli.format));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}
