//! Generator map files: target-algebra expressions for every source
//! generator.
//!
//! ```text
//! map forward
//! source E
//! target O2
//! P(v1) -> S(e1) * adj(S(e1))
//! S(a)  -> S(e1 e1) * adj(S(e1))
//! ```

use std::collections::BTreeMap;

use super::expr::{parse_expr_tokens, Expr};
use super::{lex, Cursor, Tok};
use crate::error::{CkError, Result};
use crate::graph::Graph;
use crate::moves::GeneratorMap;
use crate::scalar::Mode;
use crate::script::eval_element_expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Vertex,
    Edge,
}

#[derive(Debug, Clone)]
pub struct MapFileAst {
    pub name: String,
    pub source_name: String,
    pub target_name: String,
    pub entries: Vec<(GenKind, String, Expr, usize)>,
}

impl MapFileAst {
    /// Evaluates the right-hand sides on the target graph and assembles the
    /// generator map.
    pub fn bind(&self, source: &Graph, target: &Graph, mode: Mode) -> Result<GeneratorMap> {
        let mut p_images = BTreeMap::new();
        let mut s_images = BTreeMap::new();
        for (kind, name, expr, line) in &self.entries {
            let img = eval_element_expr(expr, target, mode).map_err(|e| match e {
                CkError::Parse { msg, .. } => CkError::Parse { line: *line, msg },
                other => other,
            })?;
            match kind {
                GenKind::Vertex => {
                    if p_images.insert(name.clone(), img).is_some() {
                        return Err(CkError::parse(*line, format!("P({name}) mapped twice")));
                    }
                }
                GenKind::Edge => {
                    if s_images.insert(name.clone(), img).is_some() {
                        return Err(CkError::parse(*line, format!("S({name}) mapped twice")));
                    }
                }
            }
        }
        GeneratorMap::new(source, target, p_images, s_images)
    }
}

pub fn parse_map_file(text: &str) -> Result<MapFileAst> {
    let mut name = None;
    let mut source_name = None;
    let mut target_name = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = lex(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(toks);
        match cur.peek() {
            Some(Tok::Ident(kw)) if kw == "map" => {
                cur.next();
                name = Some(cur.expect_ident()?);
                cur.expect_end()?;
            }
            Some(Tok::Ident(kw)) if kw == "source" => {
                cur.next();
                source_name = Some(cur.expect_ident()?);
                cur.expect_end()?;
            }
            Some(Tok::Ident(kw)) if kw == "target" => {
                cur.next();
                target_name = Some(cur.expect_ident()?);
                cur.expect_end()?;
            }
            Some(Tok::Ident(kw)) if kw == "P" || kw == "S" => {
                let kind = if kw == "P" {
                    GenKind::Vertex
                } else {
                    GenKind::Edge
                };
                cur.next();
                cur.expect(&Tok::LParen)?;
                let gen = cur.expect_ident()?;
                cur.expect(&Tok::RParen)?;
                cur.expect(&Tok::Arrow)?;
                let expr = parse_expr_tokens(&mut cur)?;
                cur.expect_end()?;
                entries.push((kind, gen, expr, line_no));
            }
            Some(t) => {
                let t = t.clone();
                return Err(CkError::parse(
                    line_no,
                    format!("expected `map`, `source`, `target`, `P(...)` or `S(...)`, found {t}"),
                ));
            }
            None => unreachable!("empty token lists are skipped"),
        }
    }
    Ok(MapFileAst {
        name: name.ok_or_else(|| CkError::parse(1, "missing `map <name>` header"))?,
        source_name: source_name
            .ok_or_else(|| CkError::parse(1, "missing `source <graph>` header"))?,
        target_name: target_name
            .ok_or_else(|| CkError::parse(1, "missing `target <graph>` header"))?,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_forward_map_shape() {
        let text = "\
map forward
source E
target O2
P(v1) -> S(e1) * adj(S(e1))
P(v2) -> S(e2) * adj(S(e2))
S(a) -> S(e1 e1) * adj(S(e1))
S(b) -> S(e1 e2 e1) * adj(S(e1))
S(c) -> S(e1 e2 e2) * adj(S(e2))
S(d) -> S(e2 e2) * adj(S(e2))
S(e) -> S(e2 e1) * adj(S(e1))
";
        let ast = parse_map_file(text).unwrap();
        assert_eq!(ast.name, "forward");
        assert_eq!(ast.entries.len(), 7);
        let map = ast
            .bind(&fixtures::ex41(), &fixtures::o2(), Mode::Exact)
            .unwrap();
        assert_eq!(map.source(), &fixtures::ex41());
    }

    #[test]
    fn missing_headers_rejected() {
        assert!(parse_map_file("P(v1) -> P(v)\n").is_err());
        let err = parse_map_file("map m\nsource E\ntarget F\nQ(v) -> P(v)\n").unwrap_err();
        assert!(matches!(err, CkError::Parse { line: 4, .. }));
    }
}
