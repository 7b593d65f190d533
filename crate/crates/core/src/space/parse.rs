use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{SpaceGraph, VertexId};
use crate::text::{expect_arity, field, tokenized_lines, ParseError};

/// Parses `v <id>` / `e <id1> <id2>` lines. Lines with other leading
/// keywords are rejected.
pub fn parse_graph(input: &str) -> Result<SpaceGraph, ParseError> {
    let mut builder = GraphLines::default();
    for (line, tokens) in tokenized_lines(input) {
        if !builder.accept(line, &tokens)? {
            return Err(ParseError::new(
                line,
                format!("unknown construct `{}`", tokens[0]),
            ));
        }
    }
    builder.finish()
}

/// Renders a graph in the text format accepted by [`parse_graph`].
pub fn write_graph(g: &SpaceGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

/// Accumulates graph lines; shared with the scenario format.
#[derive(Debug, Default)]
pub(crate) struct GraphLines {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    seen_edges: BTreeSet<(VertexId, VertexId)>,
    last_line: usize,
}

impl GraphLines {
    /// Returns `Ok(false)` when the line is not a graph construct.
    pub(crate) fn accept(&mut self, line: usize, tokens: &[&str]) -> Result<bool, ParseError> {
        self.last_line = line;
        match tokens[0] {
            "v" => {
                expect_arity(line, tokens, 2)?;
                self.vertices.push(field(line, tokens[1], "vertex id")?);
            }
            "e" => {
                expect_arity(line, tokens, 3)?;
                let a: VertexId = field(line, tokens[1], "edge endpoint")?;
                let b: VertexId = field(line, tokens[2], "edge endpoint")?;
                if a == b {
                    return Err(ParseError::new(line, format!("self-loop on vertex {a}")));
                }
                if !self.seen_edges.insert((a.min(b), a.max(b))) {
                    return Err(ParseError::new(line, format!("duplicate edge {a}-{b}")));
                }
                self.edges.push((a, b));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub(crate) fn finish(self) -> Result<SpaceGraph, ParseError> {
        SpaceGraph::new(self.vertices, self.edges)
            .map_err(|e| ParseError::new(self.last_line, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# a path\nv 0\nv 1\nv 2 # last\n\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(g, SpaceGraph::path(3));
    }

    #[test]
    fn duplicate_edge_lines_rejected() {
        let err = parse_graph("v 0\nv 1\ne 0 1\ne 1 0\n").unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn undeclared_endpoint_rejected() {
        assert!(parse_graph("v 0\ne 0 3\n").is_err());
    }

    #[test]
    fn bad_tokens_rejected() {
        assert!(parse_graph("v -1\n").is_err());
        assert!(parse_graph("v 1 2\n").is_err());
        assert!(parse_graph("x 1\n").is_err());
    }

    #[test]
    fn write_then_parse() {
        let g = SpaceGraph::grid(3, 3);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
