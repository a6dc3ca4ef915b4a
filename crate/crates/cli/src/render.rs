//! Output in the three supported formats. Every command produces all three
//! renderings; `main` prints the requested one.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use plabic_kappa::cones::Cone;
use plabic_kappa::{LatticeVector, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone)]
pub struct Rendered {
    pub json: Value,
    pub csv: String,
    pub pretty: String,
}

impl Rendered {
    pub fn get(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
            Format::Pretty => self.pretty.clone(),
        }
    }
}

/// Variable naming for pretty polynomials.
#[derive(Debug, Clone, Copy)]
pub enum Vars {
    /// Labels used verbatim (edge ids).
    Plain,
    /// Labels behind a one-letter prefix, except `q`.
    Prefixed(char),
}

impl Vars {
    fn name(self, label: &str) -> String {
        match self {
            Vars::Plain => label.to_string(),
            Vars::Prefixed(_) if label == "q" => label.to_string(),
            Vars::Prefixed(c) => format!("{c}{label}"),
        }
    }
}

pub fn pretty_poly(p: &LaurentPoly, vars: Vars) -> String {
    p.pretty(&|l| vars.name(l))
}

/// Sum of monomials written term by term, without factoring.
pub fn pretty_terms(p: &LaurentPoly, vars: Vars) -> String {
    let mut out = String::new();
    for (e, c) in p.terms() {
        let term = LaurentPoly::monomial(p.lattice(), e.clone(), c.clone());
        let text = pretty_poly(&term, vars);
        match (out.is_empty(), text.strip_prefix('-')) {
            (true, _) => out.push_str(&text),
            (false, Some(rest)) => write!(out, " - {rest}").unwrap(),
            (false, None) => write!(out, " + {text}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn csv_line(fields: impl IntoIterator<Item = String>) -> String {
    let mut line = fields.into_iter().collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Polynomials keyed by a name (a subset or a summand index).
pub fn polys(key: &str, items: &[(String, LaurentPoly)], vars: Vars, symbol: &str) -> Rendered {
    let mut json = Map::new();
    let mut pretty = String::new();
    for (name, p) in items {
        json.insert(name.clone(), p.to_json());
        writeln!(pretty, "{symbol}_{name} = {}", pretty_poly(p, vars)).unwrap();
    }
    let labels: Vec<String> = items.first().map(|(_, p)| p.lattice().labels().to_vec()).unwrap_or_default();
    let mut csv = csv_line([key.to_string(), "coeff".to_string()].into_iter().chain(labels.iter().cloned()));
    for (name, p) in items {
        for (e, c) in p.terms() {
            csv.push_str(&csv_line([name.clone(), c.to_string()].into_iter().chain(e.iter().map(i64::to_string))));
        }
    }
    let json = if items.len() == 1 { items[0].1.to_json() } else { Value::Object(json) };
    Rendered { json, csv, pretty }
}

pub fn vector_json(v: &LatticeVector) -> Value {
    let map: Map<String, Value> =
        v.lattice().labels().iter().zip(v.coords()).map(|(l, x)| (l.clone(), json!(x))).collect();
    Value::Object(map)
}

pub fn vector_pretty(v: &LatticeVector) -> String {
    v.lattice().labels().iter().zip(v.coords()).map(|(l, x)| format!("{l}={x}")).collect::<Vec<_>>().join(" ")
}

/// Vectors over a common lattice keyed by a name.
pub fn vectors(key: &str, items: &[(String, LatticeVector)]) -> Rendered {
    let labels: Vec<String> = items.first().map(|(_, v)| v.lattice().labels().to_vec()).unwrap_or_default();
    let mut csv = csv_line(std::iter::once(key.to_string()).chain(labels.iter().cloned()));
    let mut pretty = String::new();
    let mut json = Map::new();
    for (name, v) in items {
        csv.push_str(&csv_line(std::iter::once(name.clone()).chain(v.coords().iter().map(i64::to_string))));
        writeln!(pretty, "{name}: {}", vector_pretty(v)).unwrap();
        json.insert(name.clone(), vector_json(v));
    }
    Rendered { json: Value::Object(json), csv, pretty }
}

fn linear_form(labels: &[String], m: &[i64]) -> String {
    let mut s = String::new();
    for (l, &c) in labels.iter().zip(m) {
        if c == 0 {
            continue;
        }
        let var = if l == "r" { l.clone() } else { format!("v{l}") };
        let sign = if c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let sep = if s.is_empty() { "" } else { " " };
        let body = if c.abs() == 1 { var } else { format!("{}*{var}", c.abs()) };
        if s.is_empty() {
            write!(s, "{sign}{body}").unwrap();
        } else {
            write!(s, "{sep}{sign} {body}").unwrap();
        }
    }
    s
}

pub fn cone(c: &Cone) -> Rendered {
    let labels = c.ambient().labels().to_vec();
    let mut csv = csv_line(labels.iter().cloned());
    let mut pretty = String::new();
    for m in c.ineqs() {
        csv.push_str(&csv_line(m.iter().map(i64::to_string)));
        writeln!(pretty, "{} >= 0", linear_form(&labels, m)).unwrap();
    }
    Rendered { json: c.to_json(), csv, pretty }
}

/// Outcome of one verification instance.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: String,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

pub fn checks(items: &[Check]) -> Rendered {
    let json = Value::Array(
        items
            .iter()
            .map(|c| json!({ "suite": c.suite, "instance": c.instance, "pass": c.pass, "detail": c.detail }))
            .collect(),
    );
    let mut csv = csv_line(["suite", "instance", "pass", "detail"].map(String::from));
    let mut pretty = String::new();
    for c in items {
        let status = if c.pass { "PASS" } else { "FAIL" };
        csv.push_str(&csv_line([c.suite.clone(), quote(&c.instance), status.to_string(), quote(&c.detail)]));
        writeln!(pretty, "{status} {} {}: {}", c.suite, c.instance, c.detail).unwrap();
    }
    Rendered { json, csv, pretty }
}

/// CSV field quoting for free text.
pub fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
