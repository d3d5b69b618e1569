//! Text formats. All ids in files are 1-based.
//!
//! Graph (DIMACS-like):
//! ```text
//! c optional comment
//! p edge <n> <m>
//! e <u> <v>        (m lines)
//! ```
//! Support: `s <u> <v>` per pair. Coloring: a `k <universe>` header, then
//! `v <id> <color>` for colored vertices and `E <u> <v> <color>` for edges.
//! Blank lines and `c` comment lines are allowed everywhere.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::PartialColoring;
use crate::colorset::Color;
use crate::graph::{Graph, GraphError, Vertex};
use crate::support::Support;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field
        .parse()
        .map_err(|_| err(line, format!("expected {what}, found `{field}`")))
}

/// A 1-based id in `1..=n`, returned 0-based.
fn vertex_id(line: usize, field: &str, n: usize) -> Result<Vertex, ParseError> {
    let id = number(line, field, "a vertex id")?;
    if id == 0 || id > n {
        return Err(err(line, format!("vertex {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}

fn expect_arity(line: usize, fields: &[&str], arity: usize) -> Result<(), ParseError> {
    if fields.len() != arity {
        return Err(err(
            line,
            format!("`{}` takes {} fields, found {}", fields[0], arity - 1, fields.len() - 1),
        ));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    let mut last_line = 0;
    for (line, fields) in records(text) {
        last_line = line;
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate `p` header"));
                }
                expect_arity(line, &fields, 4)?;
                if fields[1] != "edge" {
                    return Err(err(line, format!("expected `p edge`, found `p {}`", fields[1])));
                }
                header = Some((
                    number(line, fields[2], "a vertex count")?,
                    number(line, fields[3], "an edge count")?,
                ));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(err(line, "edge before `p edge` header"));
                };
                expect_arity(line, &fields, 3)?;
                let u = vertex_id(line, fields[1], n)?;
                let v = vertex_id(line, fields[2], n)?;
                if u == v {
                    return Err(err(line, format!("self-loop at vertex {}", u + 1)));
                }
                edges.push((u, v));
                lines.push(line);
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), "missing `p edge <n> <m>` header"));
    };
    if edges.len() != m {
        return Err(err(
            last_line,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges).map_err(|e| match e {
        GraphError::DuplicateEdge(a, b) => {
            // Report the second occurrence.
            let line = edges
                .iter()
                .zip(&lines)
                .filter(|(&(u, v), _)| (u.min(v), u.max(v)) == (a, b))
                .nth(1)
                .map_or(last_line, |(_, &l)| l);
            err(line, format!("duplicate edge {} {}", a + 1, b + 1))
        }
        other => err(last_line, other.to_string()),
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses `s <u> <v>` lines. Only syntax and id ranges are checked here; use
/// [`Support::validate`] against the graph for the structural rules.
pub fn parse_support(text: &str, n: usize) -> Result<Support, ParseError> {
    let mut pairs = Vec::new();
    for (line, fields) in records(text) {
        if fields[0] != "s" {
            return Err(err(line, format!("unknown record `{}`", fields[0])));
        }
        expect_arity(line, &fields, 3)?;
        pairs.push((vertex_id(line, fields[1], n)?, vertex_id(line, fields[2], n)?));
    }
    Ok(Support::new(pairs))
}

pub fn write_support(sup: &Support) -> String {
    let mut out = String::new();
    for &(u, v) in sup.pairs() {
        let _ = writeln!(out, "s {} {}", u + 1, v + 1);
    }
    out
}

fn color_value(line: usize, field: &str, universe: u32) -> Result<Color, ParseError> {
    let c = number(line, field, "a color")?;
    if c == 0 {
        return Err(err(line, "color 0 is not allowed"));
    }
    if c > universe as usize {
        return Err(err(line, format!("color {c} exceeds universe size {universe}")));
    }
    Ok(c as Color)
}

pub fn parse_coloring(text: &str, g: &Graph) -> Result<PartialColoring, ParseError> {
    let mut col: Option<PartialColoring> = None;
    for (line, fields) in records(text) {
        if fields[0] == "k" {
            if col.is_some() {
                return Err(err(line, "duplicate `k` header"));
            }
            expect_arity(line, &fields, 2)?;
            let universe = number(line, fields[1], "a universe size")?;
            let universe = u32::try_from(universe)
                .map_err(|_| err(line, format!("universe size {universe} too large")))?;
            col = Some(PartialColoring::new(g, universe));
            continue;
        }
        let Some(col) = col.as_mut() else {
            return Err(err(line, "record before `k` header"));
        };
        let universe = col.universe();
        match fields[0] {
            "v" => {
                expect_arity(line, &fields, 3)?;
                let u = vertex_id(line, fields[1], g.n())?;
                let c = color_value(line, fields[2], universe)?;
                if col.vertex(u).is_some() {
                    return Err(err(line, format!("vertex {} colored twice", u + 1)));
                }
                col.set_vertex(u, Some(c));
            }
            "E" => {
                expect_arity(line, &fields, 4)?;
                let u = vertex_id(line, fields[1], g.n())?;
                let v = vertex_id(line, fields[2], g.n())?;
                let c = color_value(line, fields[3], universe)?;
                let e = g
                    .edge_id(u, v)
                    .ok_or_else(|| err(line, format!("{} {} is not an edge", u + 1, v + 1)))?;
                if col.edge(e).is_some() {
                    return Err(err(line, format!("edge {} {} colored twice", u + 1, v + 1)));
                }
                col.set_edge(e, Some(c));
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    col.ok_or_else(|| err(1, "missing `k <universe>` header"))
}

/// Vertices by id, then edges in canonical order; uncolored items are
/// omitted.
pub fn write_coloring(g: &Graph, col: &PartialColoring) -> String {
    let mut out = format!("k {}\n", col.universe());
    for u in g.vertices() {
        if let Some(c) = col.vertex(u) {
            let _ = writeln!(out, "v {} {}", u + 1, c);
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if let Some(c) = col.edge(e) {
            let _ = writeln!(out, "E {} {} {}", u + 1, v + 1, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_graph_with_comments() {
        let g = parse_graph("c a triangle\np edge 3 3\ne 1 2\n\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(write_graph(&g), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let cases = [
            ("e 1 2\n", 1, "before"),
            ("p edge 3 1\ne 1 4\n", 2, "out of range"),
            ("p edge 3 1\ne 1 x\n", 2, "expected a vertex id"),
            ("p edge 3 2\ne 1 2\ne 2 1\n", 3, "duplicate edge"),
            ("p edge 3 1\ne 2 2\n", 2, "self-loop"),
            ("p edge 3 1\nq 1 2\n", 2, "unknown record"),
            ("p edge 3 2\ne 1 2\n", 2, "announces 2"),
            ("p col 3 1\n", 1, "p edge"),
            ("c nothing\n", 1, "missing"),
            ("p edge 3 1\ne 1 2 3\n", 2, "takes 2 fields"),
        ];
        for (text, line, needle) in cases {
            let e = parse_graph(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn support_round_trip() {
        let s = parse_support("c pairs\ns 1 4\ns 6 3\n", 6).unwrap();
        assert_eq!(s.pairs(), &[(0, 3), (2, 5)]);
        assert_eq!(write_support(&s), "s 1 4\ns 3 6\n");
        assert_eq!(parse_support("s 1 7\n", 6).unwrap_err().line, 1);
        assert_eq!(parse_support("s 1 2\nt 1 2\n", 6).unwrap_err().line, 2);
    }

    #[test]
    fn coloring_round_trip_and_errors() {
        let g = parse_graph("p edge 2 1\ne 1 2\n").unwrap();
        let col = parse_coloring("k 7\nv 1 1\nv 2 2\nE 2 1 3\n", &g).unwrap();
        assert_eq!(col.vertex(0), Some(1));
        assert_eq!(col.edge(0), Some(3));
        assert_eq!(write_coloring(&g, &col), "k 7\nv 1 1\nv 2 2\nE 1 2 3\n");

        let cases = [
            ("v 1 1\n", 1, "before"),
            ("k 7\nv 1 0\n", 2, "color 0"),
            ("k 7\nv 1 8\n", 2, "exceeds"),
            ("k 7\nE 1 1 2\n", 2, "not an edge"),
            ("k 7\nv 1 1\nv 1 2\n", 3, "twice"),
            ("k 7\nk 8\n", 2, "duplicate"),
            ("", 1, "missing"),
        ];
        for (text, line, needle) in cases {
            let e = parse_coloring(text, &g).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    proptest! {
        #[test]
        fn graph_text_round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let mut edges: Vec<_> = raw
                .into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::new(n, &edges).unwrap();
            let text = write_graph(&g);
            prop_assert!(text.ends_with('\n') && text.is_ascii());
            prop_assert_eq!(parse_graph(&text).unwrap(), g);
        }
    }
}
