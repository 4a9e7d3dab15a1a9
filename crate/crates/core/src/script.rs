//! The verification script language and its driver.
//!
//! A script is a line-oriented sequence of statements: loads, definitions,
//! evaluations, assertions and verification suites. Statements execute in
//! order against one active graph context; element expressions use the
//! grammar from [`crate::parse`] extended with the calculus verbs
//! (`shift`, `gauge`, `comp`, `expD`, `expF`, `lambda`, `chain`, `hyp`,
//! `rep`, `norm`, `delta`, `Q`). The driver produces a machine-readable
//! JSON report; the process exit code is 0 when every assertion passed,
//! 1 on assertion failure and 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::element::{Element, SubalgebraTag};
use crate::endo::{
    conjugation_oracle, verify_unitary, BlockUnitary, GeneralUnitary,
};
use crate::error::{CkError, Result};
use crate::graph::Graph;
use crate::maps;
use crate::moves::{self, GeneratorMap, OutSplitPartition};
use crate::parse::{self, Cursor, Expr, Tok};
use crate::random;
use crate::rep;
use crate::scalar::Mode;

// ---------------------------------------------------------------------
// Expression evaluation
// ---------------------------------------------------------------------

/// Result of evaluating an expression.
pub enum Value {
    Element(Element),
    Real(f64),
    Bool(bool),
    Rep(rep::BlockMatrixRep),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(e) => write!(f, "{e}"),
            Value::Real(x) => write!(f, "{x:?}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Rep(r) => write!(f, "{}", r.to_json()),
        }
    }
}

impl Value {
    fn into_element(self) -> Result<Element> {
        match self {
            Value::Element(e) => Ok(e),
            _ => Err(CkError::Usage("expected an element-valued expression".into())),
        }
    }
}

/// Named objects visible to expressions.
#[derive(Default)]
struct Bindings {
    elements: BTreeMap<String, Element>,
    unitaries: BTreeMap<String, BlockUnitary>,
    maps: BTreeMap<String, GeneratorMap>,
}

struct EvalCtx<'a> {
    graph: &'a Graph,
    mode: Mode,
    bindings: &'a Bindings,
}

/// Evaluates a pure element expression (no named bindings) on a graph.
pub fn eval_element_expr(expr: &Expr, graph: &Graph, mode: Mode) -> Result<Element> {
    let bindings = Bindings::default();
    let ctx = EvalCtx {
        graph,
        mode,
        bindings: &bindings,
    };
    eval(expr, &ctx)?.into_element()
}

/// Parses and evaluates an element expression on a graph; the public entry
/// point behind the `parse_element` operation.
pub fn parse_element(text: &str, graph: &Graph, mode: Mode) -> Result<Element> {
    let expr = parse::parse_expr(text)?;
    eval_element_expr(&expr, graph, mode)
}

fn eval(expr: &Expr, ctx: &EvalCtx) -> Result<Value> {
    match expr {
        Expr::Proj(v) => Ok(Value::Element(Element::vertex_projection(
            ctx.graph, v, ctx.mode,
        )?)),
        Expr::PathIso(edges) => {
            let ids: Vec<&str> = edges.iter().map(|s| s.as_str()).collect();
            let p = crate::graph::Path::from_edge_ids(ctx.graph, &ids)?;
            Ok(Value::Element(Element::path_isometry(&p, ctx.mode)))
        }
        Expr::Adj(inner) => Ok(Value::Element(eval(inner, ctx)?.into_element()?.adjoint())),
        Expr::Mul(a, b) => {
            let x = eval(a, ctx)?.into_element()?;
            let y = eval(b, ctx)?.into_element()?;
            Ok(Value::Element(x.mul(&y)?))
        }
        Expr::Add(a, b) => {
            let x = eval(a, ctx)?.into_element()?;
            let y = eval(b, ctx)?.into_element()?;
            Ok(Value::Element(x.add(&y)?))
        }
        Expr::Sub(a, b) => {
            let x = eval(a, ctx)?.into_element()?;
            let y = eval(b, ctx)?.into_element()?;
            Ok(Value::Element(x.sub(&y)?))
        }
        Expr::ScalarMul(lit, inner) => {
            let c = lit.to_scalar(ctx.mode)?;
            let x = eval(inner, ctx)?.into_element()?;
            Ok(Value::Element(x.scale(&c)?))
        }
        Expr::Lit(lit) => {
            if lit.is_zero_literal() {
                Ok(Value::Element(Element::zero(ctx.graph, ctx.mode)))
            } else {
                Err(CkError::Usage(
                    "a bare scalar is not an element; write `c * X`".into(),
                ))
            }
        }
        Expr::Name(name) => {
            if let Some(e) = ctx.bindings.elements.get(name) {
                return Ok(Value::Element(e.clone()));
            }
            if let Some(u) = ctx.bindings.unitaries.get(name) {
                return Ok(Value::Element(u.as_element()));
            }
            Err(CkError::Usage(format!("unknown name `{name}`")))
        }
        Expr::Call(verb, args) => eval_call(verb, args, ctx),
    }
}

fn arg_int(args: &[Expr], idx: usize, verb: &str) -> Result<i64> {
    match args.get(idx) {
        Some(Expr::Lit(lit)) => lit.to_integer(),
        _ => Err(CkError::Usage(format!(
            "{verb}: argument {} must be an integer literal",
            idx + 1
        ))),
    }
}

fn arg_usize(args: &[Expr], idx: usize, verb: &str) -> Result<usize> {
    let v = arg_int(args, idx, verb)?;
    usize::try_from(v).map_err(|_| CkError::Usage(format!("{verb}: argument must be >= 0")))
}

fn expect_args(args: &[Expr], n: usize, verb: &str) -> Result<()> {
    if args.len() != n {
        return Err(CkError::Usage(format!(
            "{verb} takes {n} argument(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

/// Resolves a verb argument to a quasi-free unitary: either the name of a
/// loaded block unitary, or any expression evaluating to an element of
/// `U(B)`.
fn resolve_block_unitary(arg: &Expr, ctx: &EvalCtx) -> Result<BlockUnitary> {
    if let Expr::Name(name) = arg {
        if let Some(u) = ctx.bindings.unitaries.get(name) {
            return Ok(u.clone());
        }
    }
    let e = eval(arg, ctx)?.into_element()?;
    BlockUnitary::from_element(&e)
}

fn eval_call(verb: &str, args: &[Expr], ctx: &EvalCtx) -> Result<Value> {
    match verb {
        "shift" => {
            expect_args(args, 1, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            Ok(Value::Element(maps::shift(&x)))
        }
        "gauge" => {
            expect_args(args, 2, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            let z = match &args[1] {
                Expr::Lit(lit) => lit.to_scalar(ctx.mode)?,
                _ => {
                    return Err(CkError::Usage(
                        "gauge: second argument must be a scalar literal".into(),
                    ))
                }
            };
            Ok(Value::Element(maps::gauge(&x, &z)?))
        }
        "comp" => {
            expect_args(args, 2, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            let m = arg_int(args, 1, verb)?;
            Ok(Value::Element(maps::degree_component(&x, m)))
        }
        "expD" => {
            expect_args(args, 1, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            Ok(Value::Element(maps::expect_diagonal(&x)))
        }
        "expF" => {
            expect_args(args, 2, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            let k = arg_usize(args, 1, verb)?;
            Ok(Value::Element(maps::expect_core_level(&x, k)))
        }
        "lambda" => {
            expect_args(args, 2, verb)?;
            let x = eval(&args[1], ctx)?.into_element()?;
            // Block unitaries first; otherwise any verified element of U_E.
            if let Expr::Name(name) = &args[0] {
                if let Some(u) = ctx.bindings.unitaries.get(name) {
                    return Ok(Value::Element(u.apply(&x)?));
                }
            }
            let u = eval(&args[0], ctx)?.into_element()?;
            let gu = GeneralUnitary::from_element(u)?;
            Ok(Value::Element(gu.apply(&x)?))
        }
        "chain" => {
            expect_args(args, 2, verb)?;
            let u = resolve_block_unitary(&args[0], ctx)?;
            let k = arg_usize(args, 1, verb)?;
            Ok(Value::Element(u.chain(k)?))
        }
        "hyp" => {
            expect_args(args, 1, verb)?;
            let u = resolve_block_unitary(&args[0], ctx)?;
            Ok(Value::Bool(u.hypothesis_check().holds))
        }
        "rep" => {
            expect_args(args, 2, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            let k = arg_usize(args, 1, verb)?;
            Ok(Value::Rep(rep::represent(&x, k)?))
        }
        "norm" => {
            expect_args(args, 2, verb)?;
            let x = eval(&args[0], ctx)?.into_element()?;
            let k = arg_usize(args, 1, verb)?;
            Ok(Value::Real(rep::operator_norm(&x, k)?))
        }
        "delta" => {
            expect_args(args, 3, verb)?;
            let u = resolve_block_unitary(&args[0], ctx)?;
            let p = eval(&args[1], ctx)?.into_element()?;
            let v = match &args[2] {
                Expr::Name(v) => v.clone(),
                _ => {
                    return Err(CkError::Usage(
                        "delta: third argument must be a vertex name".into(),
                    ))
                }
            };
            Ok(Value::Real(rep::compute_delta(&u, &p, &v)?))
        }
        "Q" => {
            expect_args(args, 2, verb)?;
            let (v, w) = match (&args[0], &args[1]) {
                (Expr::Name(v), Expr::Name(w)) => (v.clone(), w.clone()),
                _ => {
                    return Err(CkError::Usage(
                        "Q: arguments must be vertex names".into(),
                    ))
                }
            };
            Ok(Value::Element(rep::central_projection(
                ctx.graph, &v, &w, ctx.mode,
            )?))
        }
        "apply" => {
            expect_args(args, 2, verb)?;
            let map = match &args[0] {
                Expr::Name(name) => ctx
                    .bindings
                    .maps
                    .get(name)
                    .ok_or_else(|| CkError::Usage(format!("unknown map `{name}`")))?,
                _ => {
                    return Err(CkError::Usage(
                        "apply: first argument must be a loaded map name".into(),
                    ))
                }
            };
            let x = eval(&args[1], ctx)?.into_element()?;
            Ok(Value::Element(map.apply(&x)?))
        }
        other => Err(CkError::Usage(format!("unknown verb `{other}`"))),
    }
}

// ---------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------

/// Membership tag syntax for `assert-member`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TagSpec(pub SubalgebraTag);

fn parse_tag(cur: &mut Cursor) -> Result<TagSpec> {
    let id = cur.expect_ident()?;
    let tag = match id.as_str() {
        "D" => SubalgebraTag::Diagonal,
        "F" => SubalgebraTag::Core,
        "B" => SubalgebraTag::BlockCommutant,
        "UE" => SubalgebraTag::UnitaryCandidate,
        "deg" => {
            let lit = match cur.next() {
                Some(Tok::Number(n)) => n.parse::<i64>().ok(),
                Some(Tok::Minus) => match cur.next() {
                    Some(Tok::Number(n)) => n.parse::<i64>().ok().map(|v| -v),
                    _ => None,
                },
                _ => None,
            };
            match lit {
                Some(m) => SubalgebraTag::Degree(m),
                None => return Err(cur.error("expected an integer after `deg`")),
            }
        }
        other => match other.split_once('^') {
            Some(("D", k)) => SubalgebraTag::DiagonalLevel(
                k.parse()
                    .map_err(|_| cur.error(format!("bad level in tag `{other}`")))?,
            ),
            Some(("F", k)) => SubalgebraTag::CoreLevel(
                k.parse()
                    .map_err(|_| cur.error(format!("bad level in tag `{other}`")))?,
            ),
            _ => return Err(cur.error(format!("unknown membership tag `{other}`"))),
        },
    };
    Ok(TagSpec(tag))
}

#[derive(Debug, Clone)]
pub enum StatementKind {
    LoadGraph { name: String, path: String },
    LoadUnitary { name: String, path: String },
    LoadMap { name: String, path: String },
    LoadPartition { name: String, graph: String, path: String },
    UseGraph { name: String },
    Define { name: String, expr: Expr },
    Eval { expr: Expr },
    AssertEqual { lhs: Expr, rhs: Expr },
    AssertZero { expr: Expr },
    AssertTrue { expr: Expr },
    AssertFalse { expr: Expr },
    AssertNear { expr: Expr, value: f64, tol: f64 },
    AssertMember { expr: Expr, tag: TagSpec },
    VerifyUnitary { name: String },
    VerifyHom { name: String },
    VerifyDiagonal { name: String, k: usize },
    VerifyStanding { name: String },
    VerifyRelations { name: String },
    VerifyHypOracle { graph: String, trials: usize },
    OutSplit { new_name: String, graph: String, partition: String },
    Induce { new_name: String, graph: String, partition: String },
    Report { path: String },
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub line: usize,
    pub text: String,
    pub kind: StatementKind,
}

#[derive(Debug, Clone)]
pub struct Script {
    pub statements: Vec<Statement>,
}

fn expect_path(cur: &mut Cursor) -> Result<String> {
    match cur.next() {
        Some(Tok::Str(s)) => Ok(s),
        _ => Err(cur.error("expected a quoted path")),
    }
}

fn expect_number_f64(cur: &mut Cursor) -> Result<f64> {
    let lit = parse::parse_expr_tokens(cur)?;
    match lit {
        Expr::Lit(l) => l
            .to_scalar(Mode::Float)?
            .to_complex()
            .re
            .pipe_ok(),
        _ => Err(cur.error("expected a numeric literal")),
    }
}

trait PipeOk: Sized {
    fn pipe_ok(self) -> Result<Self> {
        Ok(self)
    }
}
impl PipeOk for f64 {}

/// Parses one statement line; the keyword is everything before the first
/// whitespace.
fn parse_statement(line_no: usize, raw: &str) -> Result<Option<Statement>> {
    let trimmed = raw.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let (kw, rest) = match trimmed.split_once(char::is_whitespace) {
        Some((k, r)) => (k, r),
        None => (trimmed, ""),
    };
    let toks = parse::lex(rest, line_no)?;
    let mut cur = Cursor::new(toks);
    let kind = match kw {
        "load" => {
            let what = cur.expect_ident()?;
            match what.as_str() {
                "graph" => {
                    let name = cur.expect_ident()?;
                    let path = expect_path(&mut cur)?;
                    StatementKind::LoadGraph { name, path }
                }
                "unitary" => {
                    let name = cur.expect_ident()?;
                    let path = expect_path(&mut cur)?;
                    StatementKind::LoadUnitary { name, path }
                }
                "map" => {
                    let name = cur.expect_ident()?;
                    let path = expect_path(&mut cur)?;
                    StatementKind::LoadMap { name, path }
                }
                "partition" => {
                    let name = cur.expect_ident()?;
                    let graph = cur.expect_ident()?;
                    let path = expect_path(&mut cur)?;
                    StatementKind::LoadPartition { name, graph, path }
                }
                other => {
                    return Err(CkError::parse(
                        line_no,
                        format!("cannot load `{other}`; expected graph, unitary, map or partition"),
                    ))
                }
            }
        }
        "use" => {
            cur.expect_keyword("graph")?;
            let name = cur.expect_ident()?;
            StatementKind::UseGraph { name }
        }
        "define" => {
            let name = cur.expect_ident()?;
            cur.expect(&Tok::Eq)?;
            let expr = parse::parse_expr_tokens(&mut cur)?;
            StatementKind::Define { name, expr }
        }
        "eval" => StatementKind::Eval {
            expr: parse::parse_expr_tokens(&mut cur)?,
        },
        "assert-equal" => {
            let lhs = parse::parse_expr_tokens(&mut cur)?;
            cur.expect(&Tok::Comma)?;
            let rhs = parse::parse_expr_tokens(&mut cur)?;
            StatementKind::AssertEqual { lhs, rhs }
        }
        "assert-zero" => StatementKind::AssertZero {
            expr: parse::parse_expr_tokens(&mut cur)?,
        },
        "assert-true" => StatementKind::AssertTrue {
            expr: parse::parse_expr_tokens(&mut cur)?,
        },
        "assert-false" => StatementKind::AssertFalse {
            expr: parse::parse_expr_tokens(&mut cur)?,
        },
        "assert-near" => {
            let expr = parse::parse_expr_tokens(&mut cur)?;
            cur.expect(&Tok::Comma)?;
            let value = expect_number_f64(&mut cur)?;
            cur.expect(&Tok::Comma)?;
            let tol = expect_number_f64(&mut cur)?;
            StatementKind::AssertNear { expr, value, tol }
        }
        "assert-member" => {
            let expr = parse::parse_expr_tokens(&mut cur)?;
            cur.expect(&Tok::Comma)?;
            let tag = parse_tag(&mut cur)?;
            StatementKind::AssertMember { expr, tag }
        }
        "verify-unitary" => StatementKind::VerifyUnitary {
            name: cur.expect_ident()?,
        },
        "verify-hom" => StatementKind::VerifyHom {
            name: cur.expect_ident()?,
        },
        "verify-diagonal" => {
            let name = cur.expect_ident()?;
            cur.expect(&Tok::Comma)?;
            let k = match cur.next() {
                Some(Tok::Number(n)) => n
                    .parse()
                    .map_err(|_| CkError::parse(line_no, "bad level"))?,
                _ => return Err(CkError::parse(line_no, "expected a level")),
            };
            StatementKind::VerifyDiagonal { name, k }
        }
        "verify-standing" => StatementKind::VerifyStanding {
            name: cur.expect_ident()?,
        },
        "verify-relations" => StatementKind::VerifyRelations {
            name: cur.expect_ident()?,
        },
        "verify-hyp-oracle" => {
            let graph = cur.expect_ident()?;
            cur.expect(&Tok::Comma)?;
            let trials = match cur.next() {
                Some(Tok::Number(n)) => n
                    .parse()
                    .map_err(|_| CkError::parse(line_no, "bad trial count"))?,
                _ => return Err(CkError::parse(line_no, "expected a trial count")),
            };
            StatementKind::VerifyHypOracle { graph, trials }
        }
        "outsplit" | "induce" => {
            let new_name = cur.expect_ident()?;
            cur.expect(&Tok::Eq)?;
            let graph = cur.expect_ident()?;
            cur.expect(&Tok::Comma)?;
            let partition = cur.expect_ident()?;
            if kw == "outsplit" {
                StatementKind::OutSplit {
                    new_name,
                    graph,
                    partition,
                }
            } else {
                StatementKind::Induce {
                    new_name,
                    graph,
                    partition,
                }
            }
        }
        "report" => StatementKind::Report {
            path: expect_path(&mut cur)?,
        },
        other => {
            return Err(CkError::parse(
                line_no,
                format!("unknown statement `{other}`"),
            ))
        }
    };
    cur.expect_end()?;
    Ok(Some(Statement {
        line: line_no,
        text: trimmed.to_string(),
        kind,
    }))
}

pub fn parse_script(text: &str) -> Result<Script> {
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(st) = parse_statement(i + 1, raw)? {
            statements.push(st);
        }
    }
    Ok(Script { statements })
}

// ---------------------------------------------------------------------
// Execution and reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatementResult {
    pub index: usize,
    pub line: usize,
    pub kind: String,
    pub text: String,
    /// `pass`, `fail`, `info` or `error`.
    pub status: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<serde_json::Value>,
    pub duration_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub tool: String,
    pub tool_version: String,
    pub mode: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub statements: Vec<StatementResult>,
    pub summary: Summary,
}

impl Report {
    fn new(mode: Mode, seed: u64) -> Report {
        Report {
            schema_version: "1".into(),
            tool: "ckengine".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            mode: mode.to_string(),
            seed,
            inputs: Vec::new(),
            statements: Vec::new(),
            summary: Summary {
                total: 0,
                passed: 0,
                failed: 0,
                errors: 0,
            },
        }
    }

    fn finalize(&mut self) {
        let mut s = Summary {
            total: self.statements.len(),
            passed: 0,
            failed: 0,
            errors: 0,
        };
        for st in &self.statements {
            match st.status.as_str() {
                "pass" => s.passed += 1,
                "fail" => s.failed += 1,
                "error" => s.errors += 1,
                _ => {}
            }
        }
        self.summary = s;
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn write_to(&self, path: &FsPath) -> Result<()> {
        let mut copy = self.clone();
        copy.finalize();
        let text = serde_json::to_string_pretty(&copy.to_json()).expect("report serializes");
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

/// Options for a script run.
pub struct RunOptions {
    pub mode: Mode,
    pub seed: u64,
    pub base_dir: PathBuf,
    pub report_path: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: Mode::Exact,
            seed: 0,
            base_dir: PathBuf::from("."),
            report_path: None,
        }
    }
}

struct Env {
    mode: Mode,
    seed: u64,
    base_dir: PathBuf,
    graphs: BTreeMap<String, Graph>,
    partitions: BTreeMap<String, OutSplitPartition>,
    bindings: Bindings,
    active: Option<String>,
    inputs: Vec<InputDigest>,
}

impl Env {
    fn active_graph(&self) -> Result<&Graph> {
        let name = self
            .active
            .as_ref()
            .ok_or_else(|| CkError::Usage("no active graph; add `use graph <name>`".into()))?;
        Ok(&self.graphs[name])
    }

    fn graph(&self, name: &str) -> Result<&Graph> {
        self.graphs
            .get(name)
            .ok_or_else(|| CkError::Usage(format!("unknown graph `{name}`")))
    }

    fn read_input(&mut self, path: &str) -> Result<String> {
        let full = self.base_dir.join(path);
        let text = std::fs::read_to_string(&full).map_err(|e| {
            CkError::Usage(format!("cannot read `{}`: {e}", full.display()))
        })?;
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: digest,
        });
        Ok(text)
    }

    fn ctx<'a>(&'a self, graph: &'a Graph) -> EvalCtx<'a> {
        EvalCtx {
            graph,
            mode: self.mode,
            bindings: &self.bindings,
        }
    }
}

enum Outcome {
    Pass(String),
    Fail(String, Option<serde_json::Value>),
    Info(String),
}

fn exec_statement(st: &Statement, env: &mut Env, report: &Report) -> Result<Outcome> {
    match &st.kind {
        StatementKind::LoadGraph { name, path } => {
            let text = env.read_input(path)?;
            let g = parse::parse_graph(&text)?;
            let detail = format!(
                "{} vertices, {} edges",
                g.vertex_count(),
                g.edge_count()
            );
            env.graphs.insert(name.clone(), g);
            if env.active.is_none() {
                env.active = Some(name.clone());
            }
            Ok(Outcome::Info(detail))
        }
        StatementKind::LoadUnitary { name, path } => {
            let text = env.read_input(path)?;
            let ast = parse::parse_unitary_file(&text)?;
            let graph = env.graph(&ast.graph_name)?.clone();
            let u = ast.bind(&graph, env.mode)?;
            let detail = format!(
                "unitary `{}` on `{}`, {} block(s)",
                ast.name,
                ast.graph_name,
                u.blocks().count()
            );
            env.bindings.unitaries.insert(name.clone(), u);
            Ok(Outcome::Info(detail))
        }
        StatementKind::LoadMap { name, path } => {
            let text = env.read_input(path)?;
            let ast = parse::parse_map_file(&text)?;
            let source = env.graph(&ast.source_name)?.clone();
            let target = env.graph(&ast.target_name)?.clone();
            let map = ast.bind(&source, &target, env.mode)?;
            let detail = format!("map `{}`: {} -> {}", ast.name, ast.source_name, ast.target_name);
            env.bindings.maps.insert(name.clone(), map);
            Ok(Outcome::Info(detail))
        }
        StatementKind::LoadPartition { name, graph, path } => {
            let text = env.read_input(path)?;
            let g = env.graph(graph)?.clone();
            let part = parse::parse_partition_file(&text, &g)?;
            env.partitions.insert(name.clone(), part);
            Ok(Outcome::Info(format!("partition of `{graph}`")))
        }
        StatementKind::UseGraph { name } => {
            env.graph(name)?;
            env.active = Some(name.clone());
            Ok(Outcome::Info(format!("active graph `{name}`")))
        }
        StatementKind::Define { name, expr } => {
            let g = env.active_graph()?.clone();
            let value = eval(expr, &env.ctx(&g))?.into_element()?;
            let detail = format!("{name} = {value}");
            env.bindings.elements.insert(name.clone(), value);
            Ok(Outcome::Info(detail))
        }
        StatementKind::Eval { expr } => {
            let g = env.active_graph()?.clone();
            let value = eval(expr, &env.ctx(&g))?;
            Ok(Outcome::Info(value.to_string()))
        }
        StatementKind::AssertEqual { lhs, rhs } => {
            let g = env.active_graph()?.clone();
            let a = eval(lhs, &env.ctx(&g))?.into_element()?;
            let b = eval(rhs, &env.ctx(&g))?.into_element()?;
            if a.equals(&b) {
                Ok(Outcome::Pass("equal".into()))
            } else {
                Ok(Outcome::Fail(
                    format!("lhs = {a}; rhs = {b}"),
                    Some(serde_json::json!({ "lhs": a.to_json(), "rhs": b.to_json() })),
                ))
            }
        }
        StatementKind::AssertZero { expr } => {
            let g = env.active_graph()?.clone();
            let x = eval(expr, &env.ctx(&g))?.into_element()?;
            if x.is_zero() {
                Ok(Outcome::Pass("zero".into()))
            } else {
                Ok(Outcome::Fail(
                    format!("canonical form {x}"),
                    Some(x.to_json()),
                ))
            }
        }
        StatementKind::AssertTrue { expr } | StatementKind::AssertFalse { expr } => {
            let g = env.active_graph()?.clone();
            let v = match eval(expr, &env.ctx(&g))? {
                Value::Bool(b) => b,
                _ => {
                    return Err(CkError::Usage(
                        "assertion needs a boolean expression such as hyp(u)".into(),
                    ))
                }
            };
            let want = matches!(st.kind, StatementKind::AssertTrue { .. });
            if v == want {
                Ok(Outcome::Pass(format!("{v}")))
            } else {
                Ok(Outcome::Fail(format!("value {v}, expected {want}"), None))
            }
        }
        StatementKind::AssertNear { expr, value, tol } => {
            let g = env.active_graph()?.clone();
            let v = match eval(expr, &env.ctx(&g))? {
                Value::Real(x) => x,
                _ => {
                    return Err(CkError::Usage(
                        "assert-near needs a real-valued expression".into(),
                    ))
                }
            };
            if (v - value).abs() <= *tol {
                Ok(Outcome::Pass(format!("{v:?} within {tol:?} of {value:?}")))
            } else {
                Ok(Outcome::Fail(
                    format!("{v:?} not within {tol:?} of {value:?}"),
                    None,
                ))
            }
        }
        StatementKind::AssertMember { expr, tag } => {
            let g = env.active_graph()?.clone();
            let x = eval(expr, &env.ctx(&g))?.into_element()?;
            if x.membership(tag.0) {
                Ok(Outcome::Pass(format!("{:?}", tag.0)))
            } else {
                Ok(Outcome::Fail(
                    format!("not a member of {:?}; canonical form {x}", tag.0),
                    Some(x.to_json()),
                ))
            }
        }
        StatementKind::VerifyUnitary { name } => {
            let e = if let Some(u) = env.bindings.unitaries.get(name) {
                u.as_element()
            } else if let Some(e) = env.bindings.elements.get(name) {
                e.clone()
            } else {
                return Err(CkError::Usage(format!("unknown name `{name}`")));
            };
            let class = verify_unitary(&e);
            let detail = format!(
                "in U_E: {}; in U_E n F_E: {}; in U(B): {}{}",
                class.in_ue,
                class.in_ue_core,
                class.in_ub,
                if class.approximate {
                    " (approximate)"
                } else {
                    ""
                }
            );
            if class.in_ue {
                Ok(Outcome::Pass(detail))
            } else {
                Ok(Outcome::Fail(detail, Some(e.to_json())))
            }
        }
        StatementKind::VerifyHom { name } => {
            let map = env
                .bindings
                .maps
                .get(name)
                .ok_or_else(|| CkError::Usage(format!("unknown map `{name}`")))?;
            let mut map = map.clone();
            let rep = map.verify_homomorphism()?;
            env.bindings.maps.insert(name.clone(), map);
            if rep.all_pass() {
                Ok(Outcome::Pass(format!("{} identities hold", rep.entries.len())))
            } else {
                let failures: Vec<String> = rep
                    .failures()
                    .iter()
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                Ok(Outcome::Fail(failures.join("; "), None))
            }
        }
        StatementKind::VerifyDiagonal { name, k } => {
            let map = env
                .bindings
                .maps
                .get(name)
                .ok_or_else(|| CkError::Usage(format!("unknown map `{name}`")))?;
            if map.verify_diagonal_carry(*k)? {
                Ok(Outcome::Pass(format!("diagonal carried up to level {k}")))
            } else {
                Ok(Outcome::Fail(
                    format!("some path projection image up to level {k} leaves the diagonal"),
                    None,
                ))
            }
        }
        StatementKind::VerifyStanding { name } => {
            let g = env.graph(name)?;
            let rep = g.standing_assumption();
            let detail = format!(
                "transitive: {}; cycles have exits: {}; sinks: [{}]; sources: [{}]",
                rep.transitive,
                rep.all_cycles_have_exits,
                rep.sinks.join(", "),
                rep.sources.join(", ")
            );
            if rep.holds() {
                Ok(Outcome::Pass(detail))
            } else {
                Ok(Outcome::Fail(detail, None))
            }
        }
        StatementKind::VerifyRelations { name } => {
            let g = env.graph(name)?.clone();
            let mode = env.mode;
            let mut checked = 0;
            for e in g.edges() {
                let s = Element::edge_isometry(&g, e, mode)?;
                let r = g.vertex_name(g.edge_range(g.edge_index(e).unwrap()));
                let pr = Element::vertex_projection(&g, r, mode)?;
                let diff = s.adjoint().mul(&s)?.sub(&pr)?;
                if !diff.is_zero() {
                    return Ok(Outcome::Fail(
                        format!("GA1 fails at edge {e}: {diff}"),
                        Some(diff.to_json()),
                    ));
                }
                checked += 1;
            }
            for (vi, v) in g.vertices().enumerate() {
                if g.out_degree(vi as u32) == 0 {
                    continue;
                }
                let pv = Element::vertex_projection(&g, v, mode)?;
                let mut sum = Element::zero(&g, mode);
                for &e in g.out_edges(vi as u32) {
                    let s = Element::edge_isometry(&g, g.edge_id(e), mode)?;
                    sum = sum.add(&s.mul(&s.adjoint())?)?;
                }
                let diff = pv.sub(&sum)?;
                if !diff.is_zero() {
                    return Ok(Outcome::Fail(
                        format!("GA2 fails at vertex {v}: {diff}"),
                        Some(diff.to_json()),
                    ));
                }
                checked += 1;
            }
            Ok(Outcome::Pass(format!("{checked} relations normalize to zero")))
        }
        StatementKind::VerifyHypOracle { graph, trials } => {
            let g = env.graph(graph)?.clone();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(env.seed);
            let mut monomials = 0;
            for t in 0..*trials {
                let generic = t % 2 == 1;
                let u = random::random_block_unitary(&g, env.mode, generic, &mut rng);
                let fast = u.hypothesis_check().holds;
                let slow = conjugation_oracle(&u);
                if fast != slow {
                    return Ok(Outcome::Fail(
                        format!("disagreement on trial {t}: criterion {fast}, oracle {slow}"),
                        None,
                    ));
                }
                if !fast {
                    monomials += 1;
                }
            }
            Ok(Outcome::Pass(format!(
                "{trials} trials agree ({monomials} monomial)"
            )))
        }
        StatementKind::OutSplit {
            new_name,
            graph,
            partition,
        } => {
            let g = env.graph(graph)?.clone();
            let part = env
                .partitions
                .get(partition)
                .ok_or_else(|| CkError::Usage(format!("unknown partition `{partition}`")))?;
            let f = moves::out_split(&g, part)?;
            let detail = format!(
                "{} vertices, {} edges; U(B) of result: {}",
                f.vertex_count(),
                f.edge_count(),
                moves::unitary_group_summary(&f)
            );
            env.graphs.insert(new_name.clone(), f);
            Ok(Outcome::Info(detail))
        }
        StatementKind::Induce {
            new_name,
            graph,
            partition,
        } => {
            let g = env.graph(graph)?.clone();
            let part = env
                .partitions
                .get(partition)
                .ok_or_else(|| CkError::Usage(format!("unknown partition `{partition}`")))?
                .clone();
            let f = moves::out_split(&g, &part)?;
            let map = moves::induced_images(&g, &f, &part, env.mode)?;
            env.bindings.maps.insert(new_name.clone(), map);
            Ok(Outcome::Info(format!(
                "induced generator map for the out-split of `{graph}`"
            )))
        }
        StatementKind::Report { path } => {
            let full = env.base_dir.join(path);
            report.write_to(&full)?;
            Ok(Outcome::Info(format!("report written to {path}")))
        }
    }
}

fn kind_name(kind: &StatementKind) -> &'static str {
    match kind {
        StatementKind::LoadGraph { .. } => "load-graph",
        StatementKind::LoadUnitary { .. } => "load-unitary",
        StatementKind::LoadMap { .. } => "load-map",
        StatementKind::LoadPartition { .. } => "load-partition",
        StatementKind::UseGraph { .. } => "use-graph",
        StatementKind::Define { .. } => "define",
        StatementKind::Eval { .. } => "eval",
        StatementKind::AssertEqual { .. } => "assert-equal",
        StatementKind::AssertZero { .. } => "assert-zero",
        StatementKind::AssertTrue { .. } => "assert-true",
        StatementKind::AssertFalse { .. } => "assert-false",
        StatementKind::AssertNear { .. } => "assert-near",
        StatementKind::AssertMember { .. } => "assert-member",
        StatementKind::VerifyUnitary { .. } => "verify-unitary",
        StatementKind::VerifyHom { .. } => "verify-hom",
        StatementKind::VerifyDiagonal { .. } => "verify-diagonal",
        StatementKind::VerifyStanding { .. } => "verify-standing",
        StatementKind::VerifyRelations { .. } => "verify-relations",
        StatementKind::VerifyHypOracle { .. } => "verify-hyp-oracle",
        StatementKind::OutSplit { .. } => "outsplit",
        StatementKind::Induce { .. } => "induce",
        StatementKind::Report { .. } => "report",
    }
}

/// Runs a script. Returns the report and the process exit code: 0 when
/// every assertion passed, 1 when one failed, 2 when execution hit a
/// usage error.
pub fn run_script(script: &Script, opts: &RunOptions) -> (Report, i32) {
    let mut env = Env {
        mode: opts.mode,
        seed: opts.seed,
        base_dir: opts.base_dir.clone(),
        graphs: BTreeMap::new(),
        partitions: BTreeMap::new(),
        bindings: Bindings::default(),
        active: None,
        inputs: Vec::new(),
    };
    let mut report = Report::new(opts.mode, opts.seed);
    let mut exit = 0;
    for (index, st) in script.statements.iter().enumerate() {
        let start = Instant::now();
        let outcome = exec_statement(st, &mut env, &report);
        let duration_ms = start.elapsed().as_millis() as u64;
        let (status, detail, canonical) = match outcome {
            Ok(Outcome::Pass(d)) => ("pass", d, None),
            Ok(Outcome::Fail(d, c)) => {
                exit = exit.max(1);
                ("fail", d, c)
            }
            Ok(Outcome::Info(d)) => ("info", d, None),
            Err(e) => {
                exit = 2;
                ("error", e.to_string(), None)
            }
        };
        report.inputs = env.inputs.clone();
        report.statements.push(StatementResult {
            index,
            line: st.line,
            kind: kind_name(&st.kind).to_string(),
            text: st.text.clone(),
            status: status.to_string(),
            detail,
            canonical,
            duration_ms,
        });
        if exit == 2 {
            break;
        }
    }
    report.finalize();
    if let Some(path) = &opts.report_path {
        if let Err(e) = report.write_to(path) {
            log::warn!("cannot write report: {e}");
            exit = exit.max(2);
        }
    }
    (report, exit)
}

/// Parses and runs a script from a file; the base directory for relative
/// paths is the script's parent directory.
pub fn run_script_file(path: &FsPath, opts: &RunOptions) -> Result<(Report, i32)> {
    let text = std::fs::read_to_string(path)?;
    let script = parse_script(&text)?;
    let mut opts_local = RunOptions {
        mode: opts.mode,
        seed: opts.seed,
        base_dir: opts.base_dir.clone(),
        report_path: opts.report_path.clone(),
    };
    if let Some(parent) = path.parent() {
        if opts.base_dir.as_os_str() == "." {
            opts_local.base_dir = parent.to_path_buf();
        }
    }
    Ok(run_script(&script, &opts_local))
}
