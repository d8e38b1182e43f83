//! The `.bhg` text format.
//!
//! ```text
//! # comment
//! 5 3
//! 0 1 2
//! 0 1 3
//! ```
//!
//! The first non-comment line is `n r`; every following non-empty line is
//! one edge of `r` vertex ids. Edges keep their file order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{HypergraphError, UniformHypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed header, expected \"n r\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: invalid vertex id {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: edge has {found} vertices, expected {expected}")]
    WrongArity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: HypergraphError,
    },
}

pub fn parse(text: &str) -> Result<UniformHypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, r) = match fields.as_slice() {
        [n, r] => match (n.parse::<usize>(), r.parse::<usize>()) {
            (Ok(n), Ok(r)) => (n, r),
            _ => return Err(ParseError::MalformedHeader { line: hline }),
        },
        _ => return Err(ParseError::MalformedHeader { line: hline }),
    };

    let mut edges = Vec::new();
    let mut line_of = Vec::new();
    for (line, body) in lines {
        let edge = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| ParseError::BadToken {
                    line,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if edge.len() != r {
            return Err(ParseError::WrongArity {
                line,
                expected: r,
                found: edge.len(),
            });
        }
        edges.push(edge);
        line_of.push(line);
    }

    UniformHypergraph::new(n, r, edges).map_err(|source| {
        let line = match &source {
            HypergraphError::WrongEdgeSize { index, .. }
            | HypergraphError::VertexOutOfRange { index, .. }
            | HypergraphError::RepeatedVertex { index, .. }
            | HypergraphError::DuplicateEdge { index, .. } => line_of[*index],
            HypergraphError::BadUniformity { .. } => hline,
        };
        ParseError::Invalid { line, source }
    })
}

/// Canonical text: header, then one sorted edge per line in stored order.
pub fn serialize(h: &UniformHypergraph) -> String {
    let mut out = String::with_capacity(8 + h.num_edges() * h.r() * 3);
    let _ = writeln!(out, "{} {}", h.n(), h.r());
    for edge in h.edges() {
        let mut first = true;
        for v in edge {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
