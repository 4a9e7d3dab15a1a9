//! Out-split partition files: one `split` line per vertex.
//!
//! ```text
//! split v1 : {a, b} | {c}
//! split v2 : {d, e}
//! ```
//!
//! Vertices not mentioned keep all their outgoing edges in one class.

use super::{lex, Cursor, Tok};
use crate::error::Result;
use crate::graph::Graph;
use crate::moves::OutSplitPartition;

pub fn parse_partition_file(text: &str, graph: &Graph) -> Result<OutSplitPartition> {
    let mut named = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = lex(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(toks);
        cur.expect_keyword("split")?;
        let vertex = cur.expect_ident()?;
        cur.expect(&Tok::Colon)?;
        let mut classes = Vec::new();
        loop {
            cur.expect(&Tok::LBrace)?;
            let mut class = Vec::new();
            loop {
                class.push(cur.expect_ident()?);
                match cur.peek() {
                    Some(Tok::Comma) => {
                        cur.next();
                    }
                    Some(Tok::RBrace) => {
                        cur.next();
                        break;
                    }
                    _ => return Err(cur.error("expected `,` or `}` in edge class")),
                }
            }
            classes.push(class);
            match cur.peek() {
                Some(Tok::Pipe) => {
                    cur.next();
                }
                None => break,
                Some(t) => {
                    let t = t.clone();
                    return Err(cur.error(format!("expected `|` or end of line, found {t}")));
                }
            }
        }
        named.push((vertex, classes));
    }
    OutSplitPartition::new(graph, named)
}
