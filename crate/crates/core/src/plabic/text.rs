//! Line-oriented `plabic v1` text format.
//!
//! ```text
//! plabic v1
//! kn 2 5
//! node B1 black
//! edge e1 n:B5 b:1
//! rot B1 e7 e6 e8
//! label e1,e5,e6,e7 12
//! star e1,e5,e6,e7
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Color, PlabicModel, RawEnd, RawModel};
use crate::combinat::KSubset;
use crate::error::{Error, Result};

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn parse_end(tok: &str, line: usize) -> Result<RawEnd> {
    if let Some(id) = tok.strip_prefix("n:") {
        if id.is_empty() {
            return err(line, "empty node id");
        }
        Ok(RawEnd::Node(id.to_string()))
    } else if let Some(l) = tok.strip_prefix("b:") {
        l.parse().map(RawEnd::Boundary).or_else(|_| err(line, format!("bad boundary label {l:?}")))
    } else {
        err(line, format!("edge end {tok:?} must start with n: or b:"))
    }
}

fn parse_spec(tok: &str, line: usize) -> Result<BTreeSet<String>> {
    let spec: BTreeSet<String> = tok.split(',').map(str::to_string).collect();
    if spec.iter().any(String::is_empty) {
        return err(line, format!("bad face spec {tok:?}"));
    }
    Ok(spec)
}

impl RawModel {
    pub fn parse(src: &str) -> Result<RawModel> {
        let mut raw: Option<RawModel> = None;
        let mut header = false;
        for (t, full) in src.lines().enumerate() {
            let line = t + 1;
            let text = full.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let toks: Vec<&str> = text.split_whitespace().collect();
            if !header {
                if toks != ["plabic", "v1"] {
                    return err(line, "expected header `plabic v1`");
                }
                header = true;
                continue;
            }
            if toks[0] == "kn" {
                if raw.is_some() {
                    return err(line, "duplicate kn line");
                }
                let [k, n] = toks[1..] else {
                    return err(line, "expected `kn <k> <n>`");
                };
                let k = k.parse().or_else(|_| err(line, "bad k"))?;
                let n = n.parse().or_else(|_| err(line, "bad n"))?;
                raw = Some(RawModel {
                    k,
                    n,
                    nodes: Vec::new(),
                    edges: Vec::new(),
                    rotations: Default::default(),
                    labels: Vec::new(),
                    star: None,
                });
                continue;
            }
            let Some(m) = raw.as_mut() else {
                return err(line, "`kn` must precede other directives");
            };
            match toks[0] {
                "node" => {
                    let [id, color] = toks[1..] else {
                        return err(line, "expected `node <id> black|white`");
                    };
                    let color = match color {
                        "black" => Color::Black,
                        "white" => Color::White,
                        other => return err(line, format!("unknown color {other:?}")),
                    };
                    m.nodes.push((id.to_string(), color));
                }
                "edge" => {
                    let [id, a, b] = toks[1..] else {
                        return err(line, "expected `edge <id> <end> <end>`");
                    };
                    m.edges.push((id.to_string(), parse_end(a, line)?, parse_end(b, line)?));
                }
                "rot" => {
                    if toks.len() < 2 {
                        return err(line, "expected `rot <node> <edges…>`");
                    }
                    let edges = toks[2..].iter().map(|s| s.to_string()).collect();
                    if m.rotations.insert(toks[1].to_string(), edges).is_some() {
                        return err(line, format!("duplicate rotation for {}", toks[1]));
                    }
                }
                "label" => {
                    let [spec, subset] = toks[1..] else {
                        return err(line, "expected `label <face-spec> <subset>`");
                    };
                    let label = KSubset::parse(subset, m.n).or_else(|e| err(line, e.to_string()))?;
                    m.labels.push((parse_spec(spec, line)?, label));
                }
                "star" => {
                    let [spec] = toks[1..] else {
                        return err(line, "expected `star <face-spec>`");
                    };
                    if m.star.is_some() {
                        return err(line, "duplicate star line");
                    }
                    m.star = Some(parse_spec(spec, line)?);
                }
                other => return err(line, format!("unknown directive {other:?}")),
            }
        }
        if !header {
            return err(1, "missing header `plabic v1`");
        }
        raw.ok_or_else(|| Error::Parse { line: src.lines().count().max(1), msg: "missing `kn` line".into() })
    }

    /// Canonical text: directives grouped in declaration order.
    pub fn to_text(&self) -> String {
        let end = |e: &RawEnd| match e {
            RawEnd::Node(v) => format!("n:{v}"),
            RawEnd::Boundary(b) => format!("b:{b}"),
        };
        let spec = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        let mut out = String::from("plabic v1\n");
        let _ = writeln!(out, "kn {} {}", self.k, self.n);
        for (id, color) in &self.nodes {
            let _ = writeln!(out, "node {id} {color}");
        }
        for (id, a, b) in &self.edges {
            let _ = writeln!(out, "edge {id} {} {}", end(a), end(b));
        }
        for (id, _) in &self.nodes {
            if let Some(rot) = self.rotations.get(id) {
                let _ = writeln!(out, "rot {id} {}", rot.join(" "));
            }
        }
        for (s, label) in &self.labels {
            let _ = writeln!(out, "label {} {label}", spec(s));
        }
        if let Some(s) = &self.star {
            let _ = writeln!(out, "star {}", spec(s));
        }
        out
    }
}

impl PlabicModel {
    pub fn parse(src: &str) -> Result<PlabicModel> {
        PlabicModel::from_raw(&RawModel::parse(src)?)
    }

    pub fn to_text(&self) -> String {
        self.to_raw().to_text()
    }
}
