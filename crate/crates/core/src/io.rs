//! Graph text formats.
//!
//! Edge-list format: a header line `n m`, then `m` lines `u v`.
//! DIMACS-like format: a `p edge n m` header and `e u v` lines; lines
//! starting with `c` are comments. The reader picks the format from the
//! first token of the first non-blank line.

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    match first.split_whitespace().next() {
        Some("p") | Some("c") => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("line {line}: missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::Parse(format!("line {line}: {what} `{tok}` is not a nonnegative integer")))
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().expect("nonempty checked by caller");
    let mut toks = header.split_whitespace();
    let n = parse_num(toks.next(), hl, "vertex count")?;
    let m = parse_num(toks.next(), hl, "edge count")?;
    if toks.next().is_some() {
        return Err(Error::Parse(format!("line {hl}: expected `n m`")));
    }
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let u = parse_num(toks.next(), ln, "endpoint")?;
        let v = parse_num(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(Error::Parse(format!("line {ln}: expected `u v`")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {} were given",
            edges.len()
        )));
    }
    build_graph(n, &edges)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let ln = k + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(Error::Parse(format!("line {ln}: duplicate `p` header")));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(Error::Parse(format!(
                            "line {ln}: expected `p edge n m`, found format {other:?}"
                        )))
                    }
                }
                let n = parse_num(toks.next(), ln, "vertex count")?;
                let m = parse_num(toks.next(), ln, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(Error::Parse(format!("line {ln}: edge before `p` header")));
                }
                let u = parse_num(toks.next(), ln, "endpoint")?;
                let v = parse_num(toks.next(), ln, "endpoint")?;
                edges.push((u, v));
            }
            Some(tok) => {
                return Err(Error::Parse(format!("line {ln}: unexpected token `{tok}`")));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing `p edge n m` header".into()))?;
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {} were given",
            edges.len()
        )));
    }
    build_graph(n, &edges)
}

/// Canonical edge-list rendering (sorted edges, `u < v`).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
