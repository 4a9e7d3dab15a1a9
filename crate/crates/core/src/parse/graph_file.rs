//! The graph text format: one declaration per line.
//!
//! ```text
//! # comment
//! vertex v1
//! edge a : v1 -> v1
//! ```

use super::{lex, Cursor, Tok};
use crate::error::{CkError, Result};
use crate::graph::Graph;

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices: Vec<(String, usize)> = Vec::new();
    let mut edges: Vec<(String, String, String, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = lex(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(toks);
        let kw = cur.expect_ident()?;
        match kw.as_str() {
            "vertex" => {
                let id = cur.expect_ident()?;
                cur.expect_end()?;
                vertices.push((id, line_no));
            }
            "edge" => {
                let id = cur.expect_ident()?;
                cur.expect(&Tok::Colon)?;
                let src = cur.expect_ident()?;
                cur.expect(&Tok::Arrow)?;
                let rng = cur.expect_ident()?;
                cur.expect_end()?;
                edges.push((id, src, rng, line_no));
            }
            other => {
                return Err(CkError::parse(
                    line_no,
                    format!("expected `vertex` or `edge`, found `{other}`"),
                ))
            }
        }
    }
    // Report duplicate ids and dangling endpoints at their source line.
    let mut seen_v = std::collections::BTreeSet::new();
    for (id, line) in &vertices {
        if !seen_v.insert(id.clone()) {
            return Err(CkError::parse(*line, format!("duplicate vertex id `{id}`")));
        }
    }
    let mut seen_e = std::collections::BTreeSet::new();
    for (id, src, rng, line) in &edges {
        if !seen_e.insert(id.clone()) {
            return Err(CkError::parse(*line, format!("duplicate edge id `{id}`")));
        }
        for v in [src, rng] {
            if !seen_v.contains(v) {
                return Err(CkError::parse(
                    *line,
                    format!("edge `{id}` uses undeclared vertex `{v}`"),
                ));
            }
        }
    }
    Graph::new(
        vertices.into_iter().map(|(id, _)| id).collect(),
        edges
            .into_iter()
            .map(|(id, src, rng, _)| (id, src, rng))
            .collect(),
    )
}
