//! Shared helpers for the line-oriented text formats (graphs, clauses,
//! flood scenarios).

use std::str::FromStr;

use thiserror::Error;

/// A syntax or validation error tied to a 1-based input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Yields `(line_number, tokens)` for every non-empty line, with `#`
/// comments stripped.
pub(crate) fn tokenized_lines(input: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    })
}

pub(crate) fn field<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    if token.starts_with('+') || token.starts_with('-') {
        return Err(ParseError::new(
            line,
            format!("{what}: expected a decimal non-negative integer, found `{token}`"),
        ));
    }
    token.parse().map_err(|_| {
        ParseError::new(
            line,
            format!("{what}: expected a decimal non-negative integer, found `{token}`"),
        )
    })
}

pub(crate) fn expect_arity(line: usize, tokens: &[&str], arity: usize) -> Result<(), ParseError> {
    if tokens.len() != arity {
        Err(ParseError::new(
            line,
            format!(
                "`{}` takes {} field(s), found {}",
                tokens[0],
                arity - 1,
                tokens.len() - 1
            ),
        ))
    } else {
        Ok(())
    }
}
