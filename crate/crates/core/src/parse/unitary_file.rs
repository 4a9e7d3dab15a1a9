//! The unitary file format.
//!
//! ```text
//! unitary u on E {
//!   block v1 -> v1 = [[3/5, 4/5], [-4/5, 3/5]];
//!   default identity
//! }
//! ```
//!
//! Entries are scalar literals in the expression grammar. Blocks not
//! listed fall back to the identity when `default identity` is present.

use super::expr::{parse_scalar_lit, ScalarLit};
use super::{lex, Cursor, Tok};
use crate::endo::BlockUnitary;
use crate::error::Result;
use crate::graph::Graph;
use crate::scalar::Mode;

#[derive(Debug, Clone)]
pub struct UnitaryFileAst {
    pub name: String,
    pub graph_name: String,
    pub blocks: Vec<((String, String), Vec<Vec<ScalarLit>>)>,
    pub default_identity: bool,
}

impl UnitaryFileAst {
    /// Resolves literals against a graph in the requested mode.
    pub fn bind(&self, graph: &Graph, mode: Mode) -> Result<BlockUnitary> {
        let mut named = Vec::new();
        for ((v, w), rows) in &self.blocks {
            let mut matrix = Vec::new();
            for row in rows {
                let mut out = Vec::new();
                for lit in row {
                    out.push(lit.to_scalar(mode)?);
                }
                matrix.push(out);
            }
            named.push(((v.clone(), w.clone()), matrix));
        }
        BlockUnitary::new(graph, mode, named, self.default_identity)
    }
}

pub fn parse_unitary_file(text: &str) -> Result<UnitaryFileAst> {
    let toks = lex(text, 1)?;
    let mut cur = Cursor::new(toks);
    cur.expect_keyword("unitary")?;
    let name = cur.expect_ident()?;
    cur.expect_keyword("on")?;
    let graph_name = cur.expect_ident()?;
    cur.expect(&Tok::LBrace)?;
    let mut blocks = Vec::new();
    let mut default_identity = false;
    loop {
        match cur.peek() {
            Some(Tok::RBrace) => {
                cur.next();
                break;
            }
            Some(Tok::Ident(kw)) if kw == "block" => {
                cur.next();
                let v = cur.expect_ident()?;
                cur.expect(&Tok::Arrow)?;
                let w = cur.expect_ident()?;
                cur.expect(&Tok::Eq)?;
                let rows = parse_matrix(&mut cur)?;
                cur.expect(&Tok::Semi)?;
                blocks.push(((v, w), rows));
            }
            Some(Tok::Ident(kw)) if kw == "default" => {
                cur.next();
                cur.expect_keyword("identity")?;
                if cur.peek() == Some(&Tok::Semi) {
                    cur.next();
                }
                default_identity = true;
            }
            Some(t) => {
                let t = t.clone();
                return Err(cur.error(format!("expected `block`, `default` or `}}`, found {t}")));
            }
            None => return Err(cur.error("unterminated unitary block")),
        }
    }
    cur.expect_end()?;
    Ok(UnitaryFileAst {
        name,
        graph_name,
        blocks,
        default_identity,
    })
}

fn parse_matrix(cur: &mut Cursor) -> Result<Vec<Vec<ScalarLit>>> {
    cur.expect(&Tok::LBracket)?;
    let mut rows = Vec::new();
    loop {
        cur.expect(&Tok::LBracket)?;
        let mut row = Vec::new();
        loop {
            row.push(parse_scalar_lit(cur)?);
            match cur.peek() {
                Some(Tok::Comma) => {
                    cur.next();
                }
                Some(Tok::RBracket) => {
                    cur.next();
                    break;
                }
                _ => return Err(cur.error("expected `,` or `]` in matrix row")),
            }
        }
        rows.push(row);
        match cur.peek() {
            Some(Tok::Comma) => {
                cur.next();
            }
            Some(Tok::RBracket) => {
                cur.next();
                break;
            }
            _ => return Err(cur.error("expected `,` or `]` after matrix row")),
        }
    }
    Ok(rows)
}
