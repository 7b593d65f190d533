use std::fmt::Write as _;
use std::sync::Arc;

use super::{Atom, Clause, ClauseId, KnowledgeBase, Literal, Source};
use crate::space::SpaceGraph;
use crate::text::{field, tokenized_lines, ParseError};

/// Parses `c <id> <S1|S2> <lit>...` lines, where a literal is
/// `[-]<name>@<parcel>`, against an already loaded graph.
pub fn parse_clauses(input: &str, graph: Arc<SpaceGraph>) -> Result<KnowledgeBase, ParseError> {
    let mut clauses = Vec::new();
    let mut last = 0;
    for (line, tokens) in tokenized_lines(input) {
        last = line;
        if tokens[0] != "c" {
            return Err(ParseError::new(
                line,
                format!("unknown construct `{}`", tokens[0]),
            ));
        }
        if tokens.len() < 4 {
            return Err(ParseError::new(
                line,
                "a clause needs an id, a source and at least one literal",
            ));
        }
        let id = ClauseId(field(line, tokens[1], "clause id")?);
        let source = match tokens[2] {
            "S1" => Source::S1,
            "S2" => Source::S2,
            other => {
                return Err(ParseError::new(
                    line,
                    format!("source must be S1 or S2, found `{other}`"),
                ))
            }
        };
        let literals = tokens[3..]
            .iter()
            .map(|t| parse_literal(line, t))
            .collect::<Result<Vec<_>, _>>()?;
        let clause =
            Clause::new(id, source, literals).map_err(|e| ParseError::new(line, e.to_string()))?;
        clauses.push(clause);
    }
    KnowledgeBase::new(graph, clauses).map_err(|e| ParseError::new(last, e.to_string()))
}

fn parse_literal(line: usize, token: &str) -> Result<Literal, ParseError> {
    let (positive, body) = match token.strip_prefix('-') {
        Some(rest) => (false, rest),
        None => (true, token),
    };
    let Some((name, parcel)) = body.rsplit_once('@') else {
        return Err(ParseError::new(
            line,
            format!("literal `{token}` lacks an `@<parcel>` anchor"),
        ));
    };
    if name.is_empty() || name.contains('@') || name.starts_with('-') {
        return Err(ParseError::new(line, format!("bad atom name in `{token}`")));
    }
    let atom = Atom::new(name, field(line, parcel, "parcel id")?);
    Ok(Literal { atom, positive })
}

/// Renders the clauses of `kb` in the format accepted by [`parse_clauses`].
pub fn write_clauses(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for c in kb.clauses() {
        writeln!(out, "{c}").unwrap();
    }
    out
}
