//! Text format for colored graphs.
//!
//! ```text
//! c optional comments
//! p edge <n> <m>
//! n <v> <color>
//! e <u> <v>
//! ```
//!
//! Vertices are 1-based. Vertices without a color line get color 0; cells
//! are ordered by ascending color value.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, OrderedPartition};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Parses a graph; errors carry the 1-based line number (0 for problems
/// found at the end of the input).
pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut colors: BTreeMap<u32, u64> = BTreeMap::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                let kind: String = field(toks.next(), line, "problem kind")?;
                if kind != "edge" {
                    return Err(parse_err(line, format!("unsupported problem kind `{kind}`")));
                }
                let n: usize = field(toks.next(), line, "vertex count")?;
                let m: usize = field(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "n" | "e" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "line before the problem line"))?;
                let a: u32 = field(toks.next(), line, "vertex")?;
                if a == 0 || a as usize > n {
                    return Err(parse_err(line, format!("vertex {a} out of range 1..={n}")));
                }
                if tag == "n" {
                    let c: u64 = field(toks.next(), line, "color")?;
                    if colors.insert(a, c).is_some() {
                        return Err(parse_err(line, format!("vertex {a} colored twice")));
                    }
                } else {
                    let b: u32 = field(toks.next(), line, "vertex")?;
                    if b == 0 || b as usize > n {
                        return Err(parse_err(line, format!("vertex {b} out of range 1..={n}")));
                    }
                    if a == b {
                        return Err(parse_err(line, format!("self-loop at vertex {a}")));
                    }
                    if !seen.insert((a.min(b), a.max(b))) {
                        return Err(parse_err(line, format!("duplicate edge {a} {b}")));
                    }
                    edges.push((a, b));
                }
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_err(0, format!("problem line declares {m} edges, found {}", edges.len())));
    }
    let mut classes: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for v in 1..=n as u32 {
        classes.entry(colors.get(&v).copied().unwrap_or(0)).or_default().push(v);
    }
    let cells: Vec<Vec<u32>> = classes.into_values().collect();
    let coloring = if n == 0 { OrderedPartition::unit(0) } else { OrderedPartition::new(n, &cells)? };
    ColoredGraph::new(n, &edges, coloring)
}

/// Writes the normalized form: the problem line, color lines (the cell
/// index) when there is more than one cell, then the sorted edges.
pub fn write_graph(g: &ColoredGraph) -> String {
    let mut out = String::new();
    let edges = g.edges();
    writeln!(out, "p edge {} {}", g.n(), edges.len()).unwrap();
    let cells = g.coloring().cells();
    if cells.len() > 1 {
        let mut color = vec![0usize; g.n() + 1];
        for (k, c) in cells.iter().enumerate() {
            for &v in c {
                color[v as usize] = k;
            }
        }
        for (v, c) in color.iter().enumerate().skip(1) {
            writeln!(out, "n {v} {c}").unwrap();
        }
    }
    for (u, v) in edges {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}
