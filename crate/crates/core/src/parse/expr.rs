//! The element expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := scalar '*' factor | primary
//! primary := P(vertex) | S(edge ...) | adj(expr) | verb(args) | name
//!          | '(' expr ')' | scalar-literal
//! scalar  := rat | rat ('+'|'-') rat 'i' | rat 'i'
//! rat     := ['-'] number ['/' number]
//! ```
//!
//! A leading scalar binds to the factor that follows it, so
//! `1/2+1/2 i * P(v1)` scales the projection by the full Gaussian literal.
//! Bare scalar literals are only meaningful as verb arguments (and `0`,
//! which is the zero element). Verbs are resolved at evaluation time.

use num::BigInt;
use num::BigRational;

use super::{lex, Cursor, Tok};
use crate::error::{CkError, Result};
use crate::scalar::{GaussRat, Mode, Scalar};

/// An unsigned-magnitude rational literal with a sign flag; the numerator
/// may carry a decimal point (float mode only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatLit {
    pub neg: bool,
    pub numer: String,
    pub denom: Option<String>,
}

impl RatLit {
    fn zero() -> RatLit {
        RatLit {
            neg: false,
            numer: "0".into(),
            denom: None,
        }
    }

    fn is_decimal(&self) -> bool {
        self.numer.contains('.')
    }

    fn to_exact(&self, line: usize) -> Result<BigRational> {
        if self.is_decimal() {
            return Err(CkError::parse(
                line,
                "decimal literals need float mode; use a/b rationals in exact mode",
            ));
        }
        let n: BigInt = self.numer.parse().map_err(|_| {
            CkError::parse(line, format!("bad integer literal `{}`", self.numer))
        })?;
        let d: BigInt = match &self.denom {
            Some(d) => d
                .parse()
                .map_err(|_| CkError::parse(line, format!("bad integer literal `{d}`")))?,
            None => BigInt::from(1),
        };
        if d == BigInt::from(0) {
            return Err(CkError::parse(line, "zero denominator"));
        }
        let r = BigRational::new(n, d);
        Ok(if self.neg { -r } else { r })
    }

    fn to_f64(&self, line: usize) -> Result<f64> {
        let n: f64 = self
            .numer
            .parse()
            .map_err(|_| CkError::parse(line, format!("bad numeric literal `{}`", self.numer)))?;
        let d: f64 = match &self.denom {
            Some(d) => d
                .parse()
                .map_err(|_| CkError::parse(line, format!("bad numeric literal `{d}`")))?,
            None => 1.0,
        };
        if d == 0.0 {
            return Err(CkError::parse(line, "zero denominator"));
        }
        let v = n / d;
        Ok(if self.neg { -v } else { v })
    }
}

/// A Gaussian scalar literal `re + im i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarLit {
    pub re: RatLit,
    pub im: RatLit,
    /// Source line, for diagnostics during conversion.
    pub line: usize,
}

impl ScalarLit {
    pub fn to_scalar(&self, mode: Mode) -> Result<Scalar> {
        match mode {
            Mode::Exact => Ok(Scalar::Exact(GaussRat::new(
                self.re.to_exact(self.line)?,
                self.im.to_exact(self.line)?,
            ))),
            Mode::Float => Ok(Scalar::complex(
                self.re.to_f64(self.line)?,
                self.im.to_f64(self.line)?,
            )),
        }
    }

    /// Plain integer view, for verb arguments like levels and degrees.
    pub fn to_integer(&self) -> Result<i64> {
        if self.im != RatLit::zero() || self.re.denom.is_some() || self.re.is_decimal() {
            return Err(CkError::parse(self.line, "expected an integer literal"));
        }
        let v: i64 = self
            .re
            .numer
            .parse()
            .map_err(|_| CkError::parse(self.line, "integer literal out of range"))?;
        Ok(if self.re.neg { -v } else { v })
    }

    pub fn is_zero_literal(&self) -> bool {
        self.re.numer == "0" && self.re.denom.is_none() && self.im == RatLit::zero()
    }
}

/// Abstract syntax of an expression. Verbs stay unresolved until
/// evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Proj(String),
    PathIso(Vec<String>),
    Adj(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    ScalarMul(ScalarLit, Box<Expr>),
    Call(String, Vec<Expr>),
    Name(String),
    Lit(ScalarLit),
}

/// Parses a complete expression from text.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text, 1)?;
    let mut cur = Cursor::new(toks);
    let e = parse_expr_tokens(&mut cur)?;
    cur.expect_end()?;
    Ok(e)
}

/// Parses an expression from an existing cursor (used by statements and
/// the file formats).
pub fn parse_expr_tokens(cur: &mut Cursor) -> Result<Expr> {
    let mut acc = parse_term(cur)?;
    loop {
        match cur.peek() {
            Some(Tok::Plus) => {
                cur.next();
                let rhs = parse_term(cur)?;
                acc = Expr::Add(Box::new(acc), Box::new(rhs));
            }
            Some(Tok::Minus) => {
                cur.next();
                let rhs = parse_term(cur)?;
                acc = Expr::Sub(Box::new(acc), Box::new(rhs));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor) -> Result<Expr> {
    let mut acc = parse_factor(cur)?;
    while cur.peek() == Some(&Tok::Star) {
        cur.next();
        let rhs = parse_factor(cur)?;
        acc = Expr::Mul(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn starts_scalar(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Number(_)) | Some(Tok::Minus))
}

fn parse_factor(cur: &mut Cursor) -> Result<Expr> {
    if starts_scalar(cur.peek()) {
        let lit = parse_scalar_lit(cur)?;
        if cur.peek() == Some(&Tok::Star) {
            cur.next();
            let rhs = parse_factor(cur)?;
            return Ok(Expr::ScalarMul(lit, Box::new(rhs)));
        }
        return Ok(Expr::Lit(lit));
    }
    parse_primary(cur)
}

fn parse_primary(cur: &mut Cursor) -> Result<Expr> {
    match cur.peek() {
        Some(Tok::LParen) => {
            cur.next();
            let e = parse_expr_tokens(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(e)
        }
        Some(Tok::Ident(name)) => {
            let name = name.clone();
            cur.next();
            if cur.peek() != Some(&Tok::LParen) {
                return Ok(Expr::Name(name));
            }
            cur.next();
            match name.as_str() {
                "P" => {
                    let v = cur.expect_ident()?;
                    cur.expect(&Tok::RParen)?;
                    Ok(Expr::Proj(v))
                }
                "S" => {
                    let mut edges = Vec::new();
                    while let Some(Tok::Ident(_)) = cur.peek() {
                        edges.push(cur.expect_ident()?);
                    }
                    if edges.is_empty() {
                        return Err(cur.error("S(...) needs at least one edge"));
                    }
                    cur.expect(&Tok::RParen)?;
                    Ok(Expr::PathIso(edges))
                }
                "adj" => {
                    let e = parse_expr_tokens(cur)?;
                    cur.expect(&Tok::RParen)?;
                    Ok(Expr::Adj(Box::new(e)))
                }
                _ => {
                    let mut args = Vec::new();
                    if cur.peek() != Some(&Tok::RParen) {
                        args.push(parse_expr_tokens(cur)?);
                        while cur.peek() == Some(&Tok::Comma) {
                            cur.next();
                            args.push(parse_expr_tokens(cur)?);
                        }
                    }
                    cur.expect(&Tok::RParen)?;
                    Ok(Expr::Call(name, args))
                }
            }
        }
        Some(t) => Err(cur.error(format!("expected an expression, found {t}"))),
        None => Err(cur.error("expected an expression, found end of input")),
    }
}

fn parse_rat_lit(cur: &mut Cursor) -> Result<RatLit> {
    let neg = if cur.peek() == Some(&Tok::Minus) {
        cur.next();
        true
    } else {
        false
    };
    let numer = match cur.peek() {
        Some(Tok::Number(n)) => {
            let n = n.clone();
            cur.next();
            n
        }
        _ => return Err(cur.error("expected a number")),
    };
    let denom = if cur.peek() == Some(&Tok::Slash) {
        cur.next();
        match cur.peek() {
            Some(Tok::Number(d)) => {
                let d = d.clone();
                cur.next();
                Some(d)
            }
            _ => return Err(cur.error("expected a denominator after `/`")),
        }
    } else {
        None
    };
    Ok(RatLit { neg, numer, denom })
}

/// Parses `rat`, `rat i`, or `rat (+|-) rat i`, the last two forms taken
/// greedily with backtracking so element-level `+` is not swallowed.
pub(super) fn parse_scalar_lit(cur: &mut Cursor) -> Result<ScalarLit> {
    let line = cur.line();
    let first = parse_rat_lit(cur)?;
    // Pure imaginary: `1/2 i`.
    if let Some(Tok::Ident(s)) = cur.peek() {
        if s == "i" {
            cur.next();
            return Ok(ScalarLit {
                re: RatLit::zero(),
                im: first,
                line,
            });
        }
    }
    // Full form: `a/b + c/d i`.
    if matches!(cur.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
        let save = cur.save();
        let minus = cur.peek() == Some(&Tok::Minus);
        cur.next();
        if let Ok(mut second) = parse_rat_lit(cur) {
            if let Some(Tok::Ident(s)) = cur.peek() {
                if s == "i" {
                    cur.next();
                    if minus {
                        second.neg = !second.neg;
                    }
                    return Ok(ScalarLit {
                        re: first,
                        im: second,
                        line,
                    });
                }
            }
        }
        cur.restore(save);
    }
    Ok(ScalarLit {
        re: first,
        im: RatLit::zero(),
        line,
    })
}
