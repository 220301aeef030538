//! Text formats.
//!
//! Edge lists:
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>        (m lines, 0-based vertices)
//! ```
//!
//! Colorings, matched to edges by endpoints; edges not listed are uncolored:
//!
//! ```text
//! k <K>
//! <u> <v> <color>  (color 0 = uncolored)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{EdgeId, Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .or_else(|_| err(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (line, toks) in content_lines(text) {
        last_line = line;
        match toks.as_slice() {
            ["p", n, m] => {
                if header.is_some() {
                    return err(line, "duplicate `p` line");
                }
                header = Some((number(line, n, "vertex count")?, number(line, m, "edge count")?, line));
            }
            ["e", u, v] => {
                let Some((n, m, _)) = header else {
                    return err(line, "edge before the `p <n> <m>` line");
                };
                let (u, v): (usize, usize) = (number(line, u, "vertex")?, number(line, v, "vertex")?);
                if pairs.len() == m {
                    return err(line, format!("more than the {m} declared edges"));
                }
                match Graph::new(n, &[(u, v)]) {
                    Err(GraphError::VertexOutOfRange { vertex, n }) => {
                        return err(line, format!("vertex {vertex} out of range for n = {n}"))
                    }
                    Err(GraphError::SelfLoop(_)) => return err(line, format!("self-loop at {u}")),
                    _ => {}
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return err(line, format!("duplicate edge {u} {v}"));
                }
                pairs.push((u, v));
            }
            [tag, ..] if *tag == "p" || *tag == "e" => {
                return err(line, format!("`{tag}` line needs exactly two numbers"))
            }
            _ => return err(line, format!("unrecognized line `{}`", toks.join(" "))),
        }
    }
    let Some((n, m, pline)) = header else {
        return err(last_line.max(1), "missing `p <n> <m>` line");
    };
    if pairs.len() != m {
        return err(pline, format!("declared {m} edges, found {}", pairs.len()));
    }
    Graph::new(n, &pairs).or_else(|e| err(pline, e.to_string()))
}

/// Live edges only, in id order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (_, u, v) in g.edges() {
        writeln!(s, "e {} {}", u.0, v.0).expect("writing to a String");
    }
    s
}

pub fn parse_coloring(g: &Graph, text: &str) -> Result<EdgeColoring, ParseError> {
    let mut c: Option<EdgeColoring> = None;
    let mut seen: Vec<bool> = vec![false; g.edge_slots()];
    for (line, toks) in content_lines(text) {
        match (toks.as_slice(), &mut c) {
            (["k", k], None) => c = Some(EdgeColoring::new(g, number(line, k, "palette size")?)),
            (["k", _], Some(_)) => return err(line, "duplicate `k` line"),
            ([_, _, _], None) => return err(line, "color line before the `k <K>` header"),
            ([u, v, color], Some(c)) => {
                let u: usize = number(line, u, "vertex")?;
                let v: usize = number(line, v, "vertex")?;
                let color: Color = number(line, color, "color")?;
                if u >= g.vertex_count() || v >= g.vertex_count() {
                    return err(line, format!("vertex out of range for n = {}", g.vertex_count()));
                }
                let Some(e) = g.edge_between(VertexId(u), VertexId(v)) else {
                    return err(line, format!("{u} {v} is not an edge of the graph"));
                };
                if std::mem::replace(&mut seen[e.0], true) {
                    return err(line, format!("edge {u} {v} colored twice"));
                }
                if color > 0 {
                    c.set(e, color).or_else(|x| err(line, x.to_string()))?;
                }
            }
            _ => return err(line, format!("unrecognized line `{}`", toks.join(" "))),
        }
    }
    c.ok_or(ParseError {
        line: text.lines().count().max(1),
        message: "missing `k <K>` header".into(),
    })
}

pub fn write_coloring(g: &Graph, c: &EdgeColoring) -> String {
    let mut s = format!("k {}\n", c.palette());
    for (e, u, v) in g.edges() {
        writeln!(s, "{} {} {}", u.0, v.0, c.get(e).unwrap_or(0)).expect("writing to a String");
    }
    s
}

/// Display colors for DOT output, indexed by `(color - 1) mod 12`.
pub const DOT_PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#393b79", "#637939",
];

pub fn dot_color(color: Color) -> &'static str {
    DOT_PALETTE[(color as usize - 1) % DOT_PALETTE.len()]
}

/// Graphviz source; colored edges carry their color index as the label.
pub fn to_dot(g: &Graph, c: Option<&EdgeColoring>) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        writeln!(s, "  {};", v.0).expect("writing to a String");
    }
    for (e, u, v) in g.edges() {
        match c.and_then(|c| c.get(e)) {
            Some(col) => writeln!(
                s,
                "  {} -- {} [color=\"{}\", label=\"{}\", penwidth=2];",
                u.0,
                v.0,
                dot_color(col),
                col
            ),
            None => writeln!(s, "  {} -- {} [style=dashed];", u.0, v.0),
        }
        .expect("writing to a String");
    }
    s.push_str("}\n");
    s
}

/// The edge between `u` and `v`, if both are vertices of `g`.
pub fn find_edge(g: &Graph, u: usize, v: usize) -> Option<EdgeId> {
    if u >= g.vertex_count() || v >= g.vertex_count() {
        return None;
    }
    g.edge_between(VertexId(u), VertexId(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_with_comments() {
        let g = parse_edge_list("# square\np 4 4\ne 0 1\n\ne 1 2\ne 2 3\n# last\ne 3 0\n").unwrap();
        assert_eq!(g, Graph::cycle(4));
    }

    #[test]
    fn line_numbered_errors() {
        let cases = [
            ("e 0 1\n", 1, "before"),
            ("p 3 1\ne 0 3\n", 2, "out of range"),
            ("p 3 2\ne 0 1\ne 1 0\n", 3, "duplicate edge"),
            ("p 3 1\ne 1 1\n", 2, "self-loop"),
            ("p 3 2\ne 0 1\n", 1, "declared 2"),
            ("p 3 1\ne 0 x\n", 2, "expected vertex"),
            ("# nothing\n", 1, "missing"),
            ("p 3 1\nq 1 2\n", 2, "unrecognized"),
        ];
        for (text, line, needle) in cases {
            let e = parse_edge_list(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn coloring_files() {
        let g = Graph::cycle(4);
        let c = parse_coloring(&g, "k 3\n0 1 1\n2 1 2\n2 3 1\n").unwrap();
        assert_eq!(c.slots(), &[1, 2, 1, 0]);
        assert_eq!(parse_coloring(&g, &write_coloring(&g, &c)).unwrap(), c);
        assert_eq!(parse_coloring(&g, "k 3\n0 2 1\n").unwrap_err().line, 2);
        assert_eq!(parse_coloring(&g, "k 3\n0 1 4\n").unwrap_err().line, 2);
        assert_eq!(parse_coloring(&g, "k 3\n0 1 1\n1 0 2\n").unwrap_err().line, 3);
        assert!(parse_coloring(&g, "0 1 1\n").is_err());
    }

    #[test]
    fn dot_palette_cycles() {
        assert_eq!(dot_color(1), dot_color(13));
        assert_ne!(dot_color(1), dot_color(2));
        let g = Graph::path(3);
        let c = EdgeColoring::from_slots(2, vec![1, 0]).unwrap();
        let dot = to_dot(&g, Some(&c));
        assert!(dot.contains("0 -- 1 [color=\"#1f77b4\", label=\"1\""));
        assert!(dot.contains("1 -- 2 [style=dashed]"));
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(seed in any::<u64>(), n in 1usize..20, p in 0.0f64..1.0) {
            let g = crate::generate::gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
