//! Parsers for the engine's text formats: graphs, element expressions,
//! unitaries, out-split partitions and generator maps.
//!
//! All formats share one lexer. Identifiers start with a letter or `_`
//! and may contain letters, digits, `_`, `^` and `'` (the `^` shows up in
//! out-split vertex and edge names). `#` starts a comment running to the
//! end of the line. Every parse error carries the 1-based source line.

mod expr;
mod graph_file;
mod map_file;
mod partition_file;
mod unitary_file;

pub use expr::{parse_expr, parse_expr_tokens, Expr, RatLit, ScalarLit};
pub use graph_file::parse_graph;
pub use map_file::{parse_map_file, MapFileAst};
pub use partition_file::parse_partition_file;
pub use unitary_file::{parse_unitary_file, UnitaryFileAst};

use crate::error::{CkError, Result};

/// Token kinds shared by every format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Arrow,
    Star,
    Plus,
    Minus,
    Slash,
    Eq,
    Pipe,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "number `{s}`"),
            Tok::Str(_) => write!(f, "string"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Pipe => write!(f, "`|`"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^' || c == '\''
}

/// Tokenizes `text`. `first_line` sets the line number of the first line,
/// so per-line callers keep file-accurate diagnostics.
pub fn lex(text: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                let mut closed = false;
                for c in chars.by_ref() {
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    if c == '\n' {
                        break;
                    }
                    s.push(c);
                }
                if !closed {
                    return Err(CkError::parse(line, "unterminated string literal"));
                }
                out.push(Token {
                    tok: Tok::Str(s),
                    line,
                });
            }
            c if ident_start(c) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if ident_continue(c) {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line,
                });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                let mut seen_dot = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || (c == '.' && !seen_dot) {
                        seen_dot |= c == '.';
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Number(s),
                    line,
                });
            }
            _ => {
                chars.next();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '/' => Tok::Slash,
                    '|' => Tok::Pipe,
                    '-' => {
                        if chars.peek() == Some(&'>') {
                            chars.next();
                            Tok::Arrow
                        } else {
                            Tok::Minus
                        }
                    }
                    '=' => Tok::Eq,
                    other => {
                        return Err(CkError::parse(
                            line,
                            format!("unexpected character `{other}`"),
                        ))
                    }
                };
                out.push(Token { tok, line });
            }
        }
    }
    Ok(out)
}

/// Token stream with single-token lookahead and save/restore.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    /// Line reported for errors at end of input.
    last_line: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Cursor {
        let last_line = toks.last().map(|t| t.line).unwrap_or(1);
        Cursor {
            toks,
            pos: 0,
            last_line,
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    pub fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.line)
            .unwrap_or(self.last_line)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn save(&self) -> usize {
        self.pos
    }

    pub fn restore(&mut self, save: usize) {
        self.pos = save;
    }

    pub fn error(&self, msg: impl Into<String>) -> CkError {
        CkError::parse(self.line(), msg)
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<()> {
        match self.peek() {
            Some(t) if t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {tok}, found {t}"))),
            None => Err(self.error(format!("expected {tok}, found end of input"))),
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.error(format!("expected identifier, found {t}"))),
            None => Err(self.error("expected identifier, found end of input")),
        }
    }

    /// Consumes a specific keyword identifier.
    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected `{kw}`, found {t}"))),
            None => Err(self.error(format!("expected `{kw}`, found end of input"))),
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!(
                "unexpected {} after a complete statement",
                self.peek().unwrap()
            )))
        }
    }
}
