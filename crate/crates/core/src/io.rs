//! Edge-list and suite file formats.
//!
//! Edge list: `#` starts a comment line, the first other line is `n m`, then
//! exactly `m` lines `u v` with 0-based endpoints.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::harness::suite::{NamedPair, PairSuite};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, m)) = header else {
            let h = two_numbers(line)
                .ok_or_else(|| parse_err(lineno, format!("malformed header `{line}`, expected `n m`")))?;
            header = Some(h);
            continue;
        };
        let (u, v) = two_numbers(line)
            .ok_or_else(|| parse_err(lineno, format!("malformed edge `{line}`, expected `u v`")))?;
        if edges.len() == m {
            return Err(parse_err(lineno, format!("count mismatch: more than the declared {m} edges")));
        }
        if u >= n || v >= n {
            return Err(parse_err(
                lineno,
                format!("vertex {} out of range for {n} vertices", u.max(v)),
            ));
        }
        if u == v {
            return Err(parse_err(lineno, format!("self-loop on vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line + 1, "missing `n m` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line + 1,
            format!("count mismatch at end of file: declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edge_list(n, &edges)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edge_list(self.n, &edges)
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub g1: GraphJson,
    pub g2: GraphJson,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteFile {
    pub pairs: Vec<SuiteEntry>,
}

impl SuiteFile {
    pub fn to_suite(&self) -> Result<PairSuite> {
        let pairs = self
            .pairs
            .iter()
            .map(|e| {
                let graph = |gj: &GraphJson, which: &str| {
                    gj.to_graph()
                        .map_err(|err| Error::Suite(format!("pair `{}` {which}: {err}", e.name)))
                };
                Ok(NamedPair {
                    name: e.name.clone(),
                    g1: graph(&e.g1, "g1")?,
                    g2: graph(&e.g2, "g2")?,
                    note: e.note.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PairSuite::new(pairs)
    }

    pub fn from_suite(suite: &PairSuite) -> Self {
        SuiteFile {
            pairs: suite
                .pairs()
                .iter()
                .map(|p| SuiteEntry {
                    name: p.name.clone(),
                    g1: (&p.g1).into(),
                    g2: (&p.g2).into(),
                    note: p.note.clone(),
                })
                .collect(),
        }
    }
}

pub fn parse_suite(text: &str) -> Result<PairSuite> {
    let file: SuiteFile = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    file.to_suite()
}

/// Pretty JSON with a trailing newline. Key order follows field order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
