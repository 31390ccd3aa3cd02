//! Text formats.
//!
//! Graph: a header line `n m`, then `m` lines `u v` with `u < v`, ascending.
//! Pairs: lines `s t`. Both ignore blank lines and `#` comments. A spanner
//! is written as a graph on the host's node set.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Node};

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Meaningful lines with their 1-based numbers, comments stripped.
fn content_lines(r: impl BufRead) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            out.push((i + 1, body.to_string()));
        }
    }
    Ok(out)
}

fn two_numbers(line: usize, s: &str) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return parse_err(line, format!("expected two integers, got {s:?}"));
    };
    match (a.parse(), b.parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => parse_err(line, format!("expected two integers, got {s:?}")),
    }
}

/// Node count and edge list, validated for the canonical form.
fn read_edge_list(r: impl BufRead) -> Result<(usize, Vec<(Node, Node)>)> {
    let lines = content_lines(r)?;
    let Some(((hl, header), rest)) = lines.split_first() else {
        return parse_err(0, "missing `n m` header");
    };
    let (n, m) = two_numbers(*hl, header)?;
    if rest.len() != m {
        return parse_err(*hl, format!("header promises {m} edges, found {}", rest.len()));
    }
    let mut edges = Vec::with_capacity(m);
    for (line, s) in rest {
        let (u, v) = two_numbers(*line, s)?;
        if u >= v || v >= n {
            return parse_err(*line, format!("need 0 <= u < v < {n}, got {u} {v}"));
        }
        if edges.last().is_some_and(|&last| last >= (u, v)) {
            return parse_err(*line, "edges must be strictly ascending");
        }
        edges.push((u, v));
    }
    Ok((n, edges))
}

pub fn read_graph(r: impl BufRead) -> Result<Graph> {
    let (n, edges) = read_edge_list(r)?;
    Graph::from_edges(n, edges)
}

pub fn write_graph(mut w: impl Write, g: &Graph) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// Reads a spanner file as an edge subset of `g`.
pub fn read_spanner(r: impl BufRead, g: &Graph) -> Result<EdgeSet> {
    let (n, edges) = read_edge_list(r)?;
    if n != g.n() {
        return parse_err(1, format!("spanner has {n} nodes, graph has {}", g.n()));
    }
    EdgeSet::from_edges(g, edges)
}

pub fn write_spanner(mut w: impl Write, g: &Graph, h: &EdgeSet) -> Result<()> {
    writeln!(w, "{} {}", g.n(), h.len())?;
    for (u, v) in h.edges(g) {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_pairs(r: impl BufRead) -> Result<Vec<(Node, Node)>> {
    content_lines(r)?
        .into_iter()
        .map(|(line, s)| two_numbers(line, &s))
        .collect()
}

pub fn write_pairs(mut w: impl Write, pairs: &[(Node, Node)]) -> Result<()> {
    for &(s, t) in pairs {
        writeln!(w, "{s} {t}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::from_edges(5, [(3, 4), (0, 1), (1, 3)]).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "5 3\n0 1\n1 3\n3 4\n");
        let back = read_graph(&buf[..]).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.n(), 5);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a path\n3 2\n\n0 1  # first\n1 2\n";
        assert_eq!(read_graph(text.as_bytes()).unwrap().m(), 2);
    }

    #[test]
    fn malformed_graphs_report_lines() {
        for (text, line) in [
            ("3 2\n0 1\n", 1),
            ("3 1\n1 0\n", 2),
            ("3 2\n1 2\n0 1\n", 3),
            ("3 1\n0 3\n", 2),
            ("3 1\n0 x\n", 2),
            ("", 0),
        ] {
            match read_graph(text.as_bytes()) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn spanner_and_pairs_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = EdgeSet::from_edges(&g, [(2, 3), (0, 1)]).unwrap();
        let mut buf = Vec::new();
        write_spanner(&mut buf, &g, &h).unwrap();
        assert_eq!(read_spanner(&buf[..], &g).unwrap(), h);
        assert!(read_spanner("4 1\n0 2\n".as_bytes(), &g).is_err());

        let pairs = vec![(3, 0), (1, 2)];
        let mut buf = Vec::new();
        write_pairs(&mut buf, &pairs).unwrap();
        assert_eq!(read_pairs(&buf[..]).unwrap(), pairs);
    }
}
