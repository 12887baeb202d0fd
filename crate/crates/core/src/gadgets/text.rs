//! The `graphstream v1` text format.
//!
//! ```text
//! graphstream v1 undirected nv=20 ne=16 src=0 dst=16 p=1
//! 4 8
//! ...
//! ```

use std::fmt::Write as _;

use super::GraphStream;
use crate::{Error, Result};

pub fn serialize_stream(g: &GraphStream) -> String {
    let mut out = String::with_capacity(16 + 12 * g.num_edges());
    let _ = writeln!(
        out,
        "graphstream v1 {} nv={} ne={} src={} dst={} p={}",
        if g.directed() { "directed" } else { "undirected" },
        g.num_vertices(),
        g.num_edges(),
        g.source(),
        g.target(),
        g.passes_hint()
    );
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

fn field(line: usize, token: Option<&str>, key: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {key}=")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected {key}=<int>, found {token:?}")))?;
    value
        .parse()
        .map_err(|_| Error::parse(line, format!("{key} is not a nonnegative integer: {value:?}")))
}

pub fn parse_stream(text: &str) -> Result<GraphStream> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, head) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut tokens = head.split_whitespace();
    if tokens.next() != Some("graphstream") || tokens.next() != Some("v1") {
        return Err(Error::parse(1, "expected header `graphstream v1`"));
    }
    let directed = match tokens.next() {
        Some("directed") => true,
        Some("undirected") => false,
        other => {
            return Err(Error::parse(1, format!("expected directed|undirected, found {other:?}")))
        }
    };
    let nv = field(1, tokens.next(), "nv")?;
    let ne = field(1, tokens.next(), "ne")?;
    let src = field(1, tokens.next(), "src")?;
    let dst = field(1, tokens.next(), "dst")?;
    let p = field(1, tokens.next(), "p")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::parse(1, format!("unexpected header token {extra:?}")));
    }
    if src >= nv || dst >= nv {
        return Err(Error::parse(1, format!("src/dst outside [0, {nv})")));
    }

    let mut edges = Vec::with_capacity(ne);
    for i in 0..ne {
        let (line, body) = lines
            .next()
            .ok_or_else(|| Error::parse(i + 2, format!("expected {ne} edges, found {i}")))?;
        let mut parts = body.split_whitespace();
        let mut id = || -> Result<usize> {
            let tok = parts.next().ok_or_else(|| Error::parse(line, "expected `<u> <v>`"))?;
            let x: usize = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad vertex id {tok:?}")))?;
            if x >= nv {
                return Err(Error::parse(line, format!("vertex {x} outside [0, {nv})")));
            }
            Ok(x)
        };
        let (a, b) = (id()?, id()?);
        if parts.next().is_some() {
            return Err(Error::parse(line, "trailing tokens after edge"));
        }
        if a == b {
            return Err(Error::parse(line, format!("self-loop at {a}")));
        }
        edges.push((a, b));
    }
    if let Some((line, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(line, format!("unexpected line after edges: {extra:?}")));
    }
    GraphStream::new(directed, nv, edges, src, dst, p)
}
