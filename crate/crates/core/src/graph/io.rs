//! Plain-text graph format.
//!
//! ```text
//! # optional comment lines start with '#'
//! n m
//! u v c        (m lines, 0-based, u < v, sorted lexicographically)
//! ```

use std::fmt::Write as _;

use super::{build_colored_graph, ColoredGraph, GraphError};

pub fn write_graph(g: &ColoredGraph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 12);
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for &(e, c) in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, c).unwrap();
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn fields<const K: usize>(line_no: usize, line: &str) -> Result<[u64; K], GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != K {
        return Err(err(line_no, format!("expected {K} integers, found {}", parts.len())));
    }
    let mut out = [0u64; K];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| err(line_no, format!("not a non-negative integer: {p:?}")))?;
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.starts_with('#'));

    let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let [n, m] = fields::<2>(hl, header)?;
    let (n, m) = (n as usize, m as usize);

    let mut edges = Vec::with_capacity(m);
    let mut prev: Option<(u64, u64)> = None;
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or_else(|| err(0, format!("expected {m} edge lines, file ended early")))?;
        let [u, v, c] = fields::<3>(ln, line)?;
        if u >= v {
            return Err(err(ln, "edge endpoints must satisfy u < v"));
        }
        if let Some(p) = prev {
            if p >= (u, v) {
                return Err(err(ln, "edges are not sorted lexicographically"));
            }
        }
        prev = Some((u, v));
        let c = u32::try_from(c).map_err(|_| err(ln, "color id exceeds u32"))?;
        edges.push((u as usize, v as usize, c));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "trailing content after the declared edges"));
    }
    build_colored_graph(n, edges)
}
