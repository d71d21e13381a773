//! A small declarative language for stating constructions and claims, with a
//! parser, canonical printer and evaluator.
//!
//! ```text
//! script := stmt*
//! stmt   := "point" idlist ";" | "param" idlist ";"
//!         | "let" id "=" expr ";" | "assert" claim ";"
//! claim  := predicate "(" args ")"
//! expr   := id | rational | "sqrt3" | call | "[" expr "," expr "]"
//! call   := primitive "(" args ")"
//! ```
//!
//! Primitive names are the snake_case operations of the geometry module,
//! plus `line(a, b, c)`, scalar arithmetic (`add`, `sub`, `mul`, `div`,
//! `neg`) and `sqrt`.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{catch_resource, Error, Result};
use crate::geometry::{self, Conic, Line, Point};
use crate::kernel::gcd::SplitMix64;
use crate::kernel::{Scalar, Session, TraceSink};
use crate::theorems::Verdict;

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Point(Vec<String>),
    Param(Vec<String>),
    Let(String, Expr),
    Assert(ClaimExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimExpr {
    pub predicate: String,
    pub args: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Id(String),
    Rational(BigInt, BigInt),
    Sqrt3,
    Call(String, Vec<Expr>),
    Pair(Box<Expr>, Box<Expr>),
}

// ---------------------------------------------------------------------------
// Primitive and predicate registry
// ---------------------------------------------------------------------------

/// (name, min arity, max arity; None = unbounded)
const PRIMITIVES: &[(&str, usize, Option<usize>)] = &[
    ("area", 3, Some(3)),
    ("de_sq", 2, Some(2)),
    ("line_through", 2, Some(2)),
    ("slope", 2, Some(2)),
    ("midpoint", 2, Some(2)),
    ("altitude", 2, Some(2)),
    ("foot", 2, Some(2)),
    ("perp_pq", 2, Some(2)),
    ("perp_mid", 2, Some(2)),
    ("mirror_origin", 2, Some(2)),
    ("mirror_pt_line", 2, Some(2)),
    ("intersect", 2, Some(2)),
    ("concurrency_point", 2, None),
    ("circle_through", 3, Some(3)),
    ("center", 1, Some(1)),
    ("radius_sq", 1, Some(1)),
    ("circumcenter", 3, Some(3)),
    ("circumradius_sq", 3, Some(3)),
    ("nine_point_circle", 3, Some(3)),
    ("euler_line", 3, Some(3)),
    ("centroid", 3, Some(3)),
    ("orthocenter", 3, Some(3)),
    ("cet", 2, Some(2)),
    ("param_circle", 3, Some(3)),
    ("param_ellipse", 3, Some(3)),
    ("param_line", 3, Some(3)),
    ("tangent", 2, Some(2)),
    ("tangent_to_ellipse", 3, Some(3)),
    ("tc_ces_out", 4, Some(4)),
    ("touch_circles_expr", 2, Some(2)),
    ("touch_circle_line_expr", 2, Some(2)),
    ("tan_sum", 1, None),
    ("incenter", 2, Some(2)),
    ("inradius_sq", 2, Some(2)),
    ("incircle", 2, Some(2)),
    ("de_pt_line_sq", 2, Some(2)),
    ("line", 3, Some(3)),
    ("coord_x", 1, Some(1)),
    ("coord_y", 1, Some(1)),
    ("sqrt", 1, Some(1)),
    ("add", 2, Some(2)),
    ("sub", 2, Some(2)),
    ("mul", 2, Some(2)),
    ("div", 2, Some(2)),
    ("neg", 1, Some(1)),
];

const PREDICATES: &[(&str, usize, Option<usize>)] = &[
    ("is_zero", 1, Some(1)),
    ("is_equilateral", 3, Some(3)),
    ("colinear", 2, None),
    ("concurrent", 2, None),
    ("concyclic", 4, None),
    ("touch_circles", 2, Some(2)),
    ("touch_circle_line", 2, Some(2)),
    ("sqrt_sum", 3, Some(3)),
];

fn primitive_arity(name: &str) -> Option<(usize, Option<usize>)> {
    PRIMITIVES
        .iter()
        .find(|&&(n, _, _)| n == name)
        .map(|&(_, lo, hi)| (lo, hi))
}

fn canonical_predicate(name: &str) -> Option<&'static str> {
    if name == "equilateral" {
        return Some("is_equilateral");
    }
    PREDICATES.iter().find(|&&(n, _, _)| n == name).map(|&(n, _, _)| n)
}

fn predicate_arity(name: &str) -> (usize, Option<usize>) {
    PREDICATES
        .iter()
        .find(|&&(n, _, _)| n == name)
        .map(|&(_, lo, hi)| (lo, hi))
        .expect("canonical predicate")
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "point" | "param" | "let" | "assert" | "sqrt3")
        || primitive_arity(name).is_some()
        || canonical_predicate(name).is_some()
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(BigInt, BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Number(n, d) => {
                if d == &BigInt::from(1) {
                    write!(f, "number `{n}`")
                } else {
                    write!(f, "number `{n}/{d}`")
                }
            }
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, message: message.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn next_token(&mut self) -> Result<(Tok, usize, usize)> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, line, col));
        };
        let tok = match c {
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'[' => {
                self.bump();
                Tok::LBracket
            }
            b']' => {
                self.bump();
                Tok::RBracket
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b';' => {
                self.bump();
                Tok::Semi
            }
            b'=' => {
                self.bump();
                Tok::Equals
            }
            b'-' => {
                self.bump();
                if !self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                    return Err(self.err("expected digits after `-`"));
                }
                let num = self.digits();
                let den = self.maybe_denominator()?;
                Tok::Number(-num.parse::<BigInt>().unwrap(), den)
            }
            c if c.is_ascii_digit() => {
                let num = self.digits();
                let den = self.maybe_denominator()?;
                Tok::Number(num.parse::<BigInt>().unwrap(), den)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        s.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(self.err(format!("unexpected character `{}`", other as char))),
        };
        Ok((tok, line, col))
    }

    fn maybe_denominator(&mut self) -> Result<BigInt> {
        if self.peek() == Some(b'/') {
            self.bump();
            if !self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                return Err(self.err("expected digits after `/`"));
            }
            let d = self.digits();
            let den: BigInt = d.parse().unwrap();
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator in rational literal"));
            }
            Ok(den)
        } else {
            Ok(BigInt::from(1))
        }
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    at: usize,
    declared: HashMap<String, DeclKind>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DeclKind {
    Point,
    Param,
    Let,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> (usize, usize) {
        let (_, l, c) = self.toks[self.at];
        (l, c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (line, col) = self.pos();
        Error::Parse { line, col, message: message.into() }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<()> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.err(format!("expected identifier, found {other}"))),
        }
    }

    fn script(&mut self) -> Result<Script> {
        let mut stmts = Vec::new();
        while self.peek() != &Tok::Eof {
            stmts.push(self.stmt()?);
        }
        Ok(Script { stmts })
    }

    fn declare(&mut self, name: &str, kind: DeclKind) -> Result<()> {
        if is_reserved(name) {
            return Err(self.err(format!("`{name}` shadows a built-in primitive name")));
        }
        if self.declared.contains_key(name) {
            return Err(self.err(format!("`{name}` is already declared")));
        }
        self.declared.insert(name.to_string(), kind);
        Ok(())
    }

    fn idlist(&mut self) -> Result<Vec<String>> {
        let mut out = vec![self.ident()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn stmt(&mut self) -> Result<Stmt> {
        let kw = match self.peek().clone() {
            Tok::Ident(s) => s,
            other => return Err(self.err(format!("expected a statement keyword, found {other}"))),
        };
        match kw.as_str() {
            "point" => {
                self.bump();
                let ids = self.idlist()?;
                for id in &ids {
                    self.declare(id, DeclKind::Point)?;
                }
                self.expect(&Tok::Semi)?;
                Ok(Stmt::Point(ids))
            }
            "param" => {
                self.bump();
                let ids = self.idlist()?;
                for id in &ids {
                    self.declare(id, DeclKind::Param)?;
                }
                self.expect(&Tok::Semi)?;
                Ok(Stmt::Param(ids))
            }
            "let" => {
                self.bump();
                let name = self.ident()?;
                self.expect(&Tok::Equals)?;
                let e = self.expr()?;
                self.declare(&name, DeclKind::Let)?;
                self.expect(&Tok::Semi)?;
                Ok(Stmt::Let(name, e))
            }
            "assert" => {
                self.bump();
                let name = self.ident()?;
                let Some(canonical) = canonical_predicate(&name) else {
                    return Err(self.err(format!("unknown claim predicate `{name}`")));
                };
                let args = self.call_args()?;
                let (lo, hi) = predicate_arity(canonical);
                self.check_arity(canonical, args.len(), lo, hi)?;
                self.expect(&Tok::Semi)?;
                Ok(Stmt::Assert(ClaimExpr { predicate: canonical.to_string(), args }))
            }
            other => Err(self.err(format!(
                "expected `point`, `param`, `let` or `assert`, found `{other}`"
            ))),
        }
    }

    fn check_arity(&self, name: &str, got: usize, lo: usize, hi: Option<usize>) -> Result<()> {
        let ok = got >= lo && hi.map(|h| got <= h).unwrap_or(true);
        if ok {
            Ok(())
        } else {
            let expected = match hi {
                Some(h) if h == lo => format!("{lo}"),
                Some(h) => format!("{lo}..{h}"),
                None => format!("at least {lo}"),
            };
            Err(self.err(format!(
                "`{name}` takes {expected} argument(s), found {got}"
            )))
        }
    }

    fn call_args(&mut self) -> Result<Vec<Expr>> {
        self.expect(&Tok::LParen)?;
        let mut args = Vec::new();
        if self.peek() != &Tok::RParen {
            args.push(self.expr()?);
            while self.peek() == &Tok::Comma {
                self.bump();
                args.push(self.expr()?);
            }
        }
        self.expect(&Tok::RParen)?;
        Ok(args)
    }

    fn expr(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Number(n, d) => {
                self.bump();
                Ok(Expr::Rational(n, d))
            }
            Tok::LBracket => {
                self.bump();
                let a = self.expr()?;
                self.expect(&Tok::Comma)?;
                let b = self.expr()?;
                self.expect(&Tok::RBracket)?;
                Ok(Expr::Pair(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => {
                if name == "sqrt3" {
                    self.bump();
                    return Ok(Expr::Sqrt3);
                }
                if let Some((lo, hi)) = primitive_arity(&name) {
                    self.bump();
                    let args = self.call_args()?;
                    self.check_arity(&name, args.len(), lo, hi)?;
                    return Ok(Expr::Call(name, args));
                }
                if canonical_predicate(&name).is_some() {
                    return Err(self.err(format!(
                        "claim predicate `{name}` cannot appear inside an expression"
                    )));
                }
                if !self.declared.contains_key(&name) {
                    return Err(self.err(format!("`{name}` used before declaration")));
                }
                self.bump();
                Ok(Expr::Id(name))
            }
            other => Err(self.err(format!("expected an expression, found {other}"))),
        }
    }
}

/// Parse a script, checking declarations, known primitives and arities.
pub fn parse_script(text: &str) -> Result<Script> {
    let mut lexer = Lexer::new(text);
    let mut toks = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let eof = t.0 == Tok::Eof;
        toks.push(t);
        if eof {
            break;
        }
    }
    Parser { toks, at: 0, declared: HashMap::new() }.script()
}

// ---------------------------------------------------------------------------
// Canonical printer
// ---------------------------------------------------------------------------

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Id(s) => write!(f, "{s}"),
            Expr::Rational(n, d) => {
                if d == &BigInt::from(1) {
                    write!(f, "{n}")
                } else {
                    write!(f, "{n}/{d}")
                }
            }
            Expr::Sqrt3 => write!(f, "sqrt3"),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Pair(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

impl fmt::Display for ClaimExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.predicate)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Point(ids) => write!(f, "point {};", ids.join(", ")),
            Stmt::Param(ids) => write!(f, "param {};", ids.join(", ")),
            Stmt::Let(name, e) => write!(f, "let {name} = {e};"),
            Stmt::Assert(c) => write!(f, "assert {c};"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.stmts {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

#[derive(Clone)]
enum Value {
    Scalar(Scalar),
    Point(Point),
    Line(Line),
    Conic(Conic),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Point(_) => "point",
            Value::Line(_) => "line",
            Value::Conic(_) => "conic",
        }
    }
}

struct Env {
    sess: Session,
    values: HashMap<String, Value>,
    rng: Option<SplitMix64>,
}

impl Env {
    fn random_rational(&mut self) -> Scalar {
        let rng = self.rng.as_mut().expect("numeric mode");
        let mut num = (rng.below(201) as i64) - 100;
        if num == 0 {
            num = 1;
        }
        let den = 1 + rng.below(100) as i64;
        self.sess.rat(num, den)
    }

    fn declare_point(&mut self, name: &str) -> Result<()> {
        let p = if self.rng.is_some() {
            let x = self.random_rational();
            let y = self.random_rational();
            Point::new(x, y)
        } else {
            geometry::named_point(&self.sess, name)?
        };
        self.values.insert(name.to_string(), Value::Point(p));
        Ok(())
    }

    fn declare_param(&mut self, name: &str) -> Result<()> {
        let s = if self.rng.is_some() {
            self.random_rational()
        } else {
            self.sess.var_scalar(self.sess.param(name)?)
        };
        self.values.insert(name.to_string(), Value::Scalar(s));
        Ok(())
    }

    fn scalar(&self, name: &str, idx: usize, v: &Value) -> Result<Scalar> {
        match v {
            Value::Scalar(s) => Ok(s.clone()),
            other => Err(Error::Script(format!(
                "argument {} of `{name}`: expected scalar, found {}",
                idx + 1,
                other.kind()
            ))),
        }
    }

    fn point(&self, name: &str, idx: usize, v: &Value) -> Result<Point> {
        match v {
            Value::Point(p) => Ok(p.clone()),
            other => Err(Error::Script(format!(
                "argument {} of `{name}`: expected point, found {}",
                idx + 1,
                other.kind()
            ))),
        }
    }

    fn line(&self, name: &str, idx: usize, v: &Value) -> Result<Line> {
        match v {
            Value::Line(l) => Ok(l.clone()),
            other => Err(Error::Script(format!(
                "argument {} of `{name}`: expected line, found {}",
                idx + 1,
                other.kind()
            ))),
        }
    }

    fn conic(&self, name: &str, idx: usize, v: &Value) -> Result<Conic> {
        match v {
            Value::Conic(c) => Ok(c.clone()),
            other => Err(Error::Script(format!(
                "argument {} of `{name}`: expected conic, found {}",
                idx + 1,
                other.kind()
            ))),
        }
    }

    fn pair(&self, name: &str, idx: usize, v: &Value) -> Result<(Scalar, Scalar)> {
        match v {
            Value::Point(p) => Ok((p.x.clone(), p.y.clone())),
            other => Err(Error::Script(format!(
                "argument {} of `{name}`: expected a pair, found {}",
                idx + 1,
                other.kind()
            ))),
        }
    }

    fn eval(&mut self, expr: &Expr) -> Result<Value> {
        match expr {
            Expr::Id(name) => self
                .values
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Script(format!("`{name}` is not bound"))),
            Expr::Rational(n, d) => Ok(Value::Scalar(self.sess.rational(
                num_rational::BigRational::new(n.clone(), d.clone()),
            ))),
            Expr::Sqrt3 => Ok(Value::Scalar(self.sess.sqrt3())),
            Expr::Pair(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Ok(Value::Point(Point::new(
                    self.scalar("pair", 0, &a)?,
                    self.scalar("pair", 1, &b)?,
                )))
            }
            Expr::Call(name, args) => {
                let vals: Result<Vec<Value>> = args.iter().map(|a| self.eval(a)).collect();
                self.call(name, &vals?)
            }
        }
    }

    fn call(&mut self, name: &str, v: &[Value]) -> Result<Value> {
        use Value as V;
        let sess = self.sess.clone();
        let val = match name {
            "area" => V::Scalar(geometry::area(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )),
            "de_sq" => V::Scalar(geometry::de_sq(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )),
            "line_through" => V::Line(geometry::line_through(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "slope" => V::Scalar(geometry::slope(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "midpoint" => V::Point(geometry::midpoint(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )),
            "altitude" => V::Line(geometry::altitude(
                &self.point(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            )?),
            "foot" => V::Point(geometry::foot(
                &self.point(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            )?),
            "perp_pq" => V::Line(geometry::perp_pq(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "perp_mid" => V::Line(geometry::perp_mid(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "mirror_origin" => V::Point(geometry::mirror_origin(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "mirror_pt_line" => V::Point(geometry::mirror_pt_line(
                &self.point(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            )?),
            "intersect" => V::Point(geometry::intersect(
                &self.line(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            )?),
            "concurrency_point" => {
                let lines: Result<Vec<Line>> =
                    v.iter().enumerate().map(|(i, x)| self.line(name, i, x)).collect();
                V::Point(geometry::concurrency_point(&lines?)?)
            }
            "circle_through" => V::Conic(geometry::circle_through(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "center" => V::Point(geometry::center(&self.conic(name, 0, &v[0])?)?),
            "radius_sq" => V::Scalar(geometry::radius_sq(&self.conic(name, 0, &v[0])?)?),
            "circumcenter" => V::Point(geometry::circumcenter(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "circumradius_sq" => V::Scalar(geometry::circumradius_sq(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "nine_point_circle" => V::Conic(geometry::nine_point_circle(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "euler_line" => V::Line(geometry::euler_line(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "centroid" => V::Point(geometry::centroid(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "orthocenter" => V::Point(geometry::orthocenter(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )?),
            "cet" => V::Point(geometry::cet(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "param_circle" => V::Point(geometry::param_circle(
                &self.point(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
                &self.scalar(name, 2, &v[2])?,
            )?),
            "param_ellipse" => V::Point(geometry::param_ellipse(
                &self.point(name, 0, &v[0])?,
                &self.pair(name, 1, &v[1])?,
                &self.scalar(name, 2, &v[2])?,
            )?),
            "param_line" => V::Point(geometry::param_line(
                &self.scalar(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
                &self.scalar(name, 2, &v[2])?,
            )),
            "tangent" => V::Line(geometry::tangent(
                &self.conic(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
            )?),
            "tangent_to_ellipse" => V::Line(geometry::tangent_to_ellipse(
                &self.point(name, 0, &v[0])?,
                &self.pair(name, 1, &v[1])?,
                &self.scalar(name, 2, &v[2])?,
            )?),
            "tc_ces_out" => V::Scalar(geometry::tc_ces_out(
                &self.point(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
                &self.scalar(name, 3, &v[3])?,
            )),
            "touch_circles_expr" => V::Scalar(geometry::touch_circles_expr(
                &self.conic(name, 0, &v[0])?,
                &self.conic(name, 1, &v[1])?,
            )?),
            "touch_circle_line_expr" => V::Scalar(geometry::touch_circle_line_expr(
                &self.conic(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            )?),
            "tan_sum" => {
                let args: Result<Vec<Scalar>> =
                    v.iter().enumerate().map(|(i, x)| self.scalar(name, i, x)).collect();
                V::Scalar(geometry::tan_sum(&args?)?)
            }
            "incenter" => V::Point(geometry::incenter(
                &self.scalar(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
            )?),
            "inradius_sq" => V::Scalar(geometry::inradius_sq(
                &self.scalar(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
            )?),
            "incircle" => V::Conic(geometry::incircle(
                &self.scalar(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
            )?),
            "de_pt_line_sq" => V::Scalar(geometry::de_pt_line_sq(
                &self.point(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            )?),
            "line" => {
                let a = self.scalar(name, 0, &v[0])?;
                let b = self.scalar(name, 1, &v[1])?;
                let c = self.scalar(name, 2, &v[2])?;
                V::Line(Line::new(
                    &(&(&a * &sess.x()) + &(&b * &sess.y())) + &c,
                )?)
            }
            "coord_x" => V::Scalar(self.point(name, 0, &v[0])?.x),
            "coord_y" => V::Scalar(self.point(name, 0, &v[0])?.y),
            "sqrt" => V::Scalar(sess.sqrt(&self.scalar(name, 0, &v[0])?)?),
            "add" => V::Scalar(&self.scalar(name, 0, &v[0])? + &self.scalar(name, 1, &v[1])?),
            "sub" => V::Scalar(&self.scalar(name, 0, &v[0])? - &self.scalar(name, 1, &v[1])?),
            "mul" => V::Scalar(&self.scalar(name, 0, &v[0])? * &self.scalar(name, 1, &v[1])?),
            "div" => {
                V::Scalar(self.scalar(name, 0, &v[0])?.div(&self.scalar(name, 1, &v[1])?)?)
            }
            "neg" => V::Scalar(-&self.scalar(name, 0, &v[0])?),
            other => return Err(Error::Script(format!("unknown primitive `{other}`"))),
        };
        Ok(val)
    }

    fn eval_claim(&mut self, claim: &ClaimExpr) -> Result<bool> {
        let vals: Result<Vec<Value>> = claim.args.iter().map(|a| self.eval(a)).collect();
        let v = vals?;
        let name = claim.predicate.as_str();
        match name {
            "is_zero" => Ok(geometry::is_zero(&self.scalar(name, 0, &v[0])?)),
            "is_equilateral" => Ok(geometry::is_equilateral(
                &self.point(name, 0, &v[0])?,
                &self.point(name, 1, &v[1])?,
                &self.point(name, 2, &v[2])?,
            )),
            "colinear" => {
                let pts: Result<Vec<Point>> =
                    v.iter().enumerate().map(|(i, x)| self.point(name, i, x)).collect();
                geometry::colinear(&pts?)
            }
            "concurrent" => {
                let lines: Result<Vec<Line>> =
                    v.iter().enumerate().map(|(i, x)| self.line(name, i, x)).collect();
                geometry::concurrent(&lines?)
            }
            "concyclic" => {
                let pts: Result<Vec<Point>> =
                    v.iter().enumerate().map(|(i, x)| self.point(name, i, x)).collect();
                geometry::concyclic(&pts?)
            }
            "touch_circles" => geometry::touch_circles(
                &self.conic(name, 0, &v[0])?,
                &self.conic(name, 1, &v[1])?,
            ),
            "touch_circle_line" => geometry::touch_circle_line(
                &self.conic(name, 0, &v[0])?,
                &self.line(name, 1, &v[1])?,
            ),
            "sqrt_sum" => Ok(geometry::sqrt_sum(
                &self.scalar(name, 0, &v[0])?,
                &self.scalar(name, 1, &v[1])?,
                &self.scalar(name, 2, &v[2])?,
            )),
            other => Err(Error::Script(format!("unknown claim predicate `{other}`"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Running scripts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub version: String,
    pub input_digest: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Entry {
    pub id: String,
    pub verdict: Verdict,
    pub millis: u128,
    pub degree: u32,
    pub nterms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn fnv1a_digest(text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

struct AssertOutcome {
    holds: bool,
    degree: u32,
    nterms: usize,
}

fn run_once(script: &Script, sess: &Session, seed: Option<u64>) -> Result<Vec<AssertOutcome>> {
    let mut env = Env {
        sess: sess.clone(),
        values: HashMap::new(),
        rng: seed.map(SplitMix64),
    };
    let mut outcomes = Vec::new();
    for stmt in &script.stmts {
        match stmt {
            Stmt::Point(ids) => {
                for id in ids {
                    env.declare_point(id)?;
                }
            }
            Stmt::Param(ids) => {
                for id in ids {
                    env.declare_param(id)?;
                }
            }
            Stmt::Let(name, expr) => {
                let v = env.eval(expr)?;
                if sess.trace_enabled() {
                    let rendered = match &v {
                        Value::Scalar(s) => format!("{s}"),
                        Value::Point(p) => format!("[{}, {}]", p.x, p.y),
                        Value::Line(l) => format!("{}", l.form()),
                        Value::Conic(c) => format!("{}", c.form()),
                    };
                    sess.trace_with(|| format!("let {name} = {rendered}"));
                }
                env.values.insert(name.clone(), v);
            }
            Stmt::Assert(claim) => {
                let holds = env.eval_claim(claim)?;
                let mut degree = 0;
                let mut nterms = 0;
                for a in &claim.args {
                    if let Ok(Value::Scalar(s)) = env.eval(a) {
                        degree = degree.max(s.num_poly().total_degree());
                        nterms = nterms.max(s.num_poly().num_terms());
                    }
                }
                outcomes.push(AssertOutcome { holds, degree, nterms });
            }
        }
    }
    Ok(outcomes)
}

/// Evaluate a parsed script: declarations become fresh indeterminates, each
/// assertion is proved symbolically and checked against the numeric oracle.
pub fn run_script(script: &Script, trace: Option<TraceSink>) -> RunReport {
    let source = script.to_string();
    let digest = fnv1a_digest(&source);
    let start = Instant::now();
    let sess = Session::new();
    sess.set_trace(trace);

    let symbolic = catch_resource({
        let script = script.clone();
        let sess = sess.clone();
        move || run_once(&script, &sess, None)
    });

    // Numeric oracle: re-run on random rational instances, resampling on
    // degeneracy.
    let numeric: Option<Vec<bool>> = (0..20).find_map(|attempt| {
        let numeric_sess = Session::new();
        catch_resource({
            let script = script.clone();
            let sess = numeric_sess.clone();
            move || run_once(&script, &sess, Some(0x5eed_0000 + attempt))
        })
        .ok()
        .map(|o| o.iter().map(|a| a.holds).collect())
    });

    let mut entries = Vec::new();
    match symbolic {
        Ok(outcomes) => {
            for (k, o) in outcomes.iter().enumerate() {
                let oracle_agrees = numeric
                    .as_ref()
                    .map(|n| n.get(k).copied() == Some(o.holds))
                    .unwrap_or(true);
                let (verdict, error) = if !oracle_agrees {
                    (
                        Verdict::Error,
                        Some("numeric oracle disagrees with the symbolic verdict".to_string()),
                    )
                } else if o.holds {
                    (Verdict::Proved, None)
                } else {
                    (Verdict::Refuted, None)
                };
                entries.push(Entry {
                    id: format!("assertion-{}", k + 1),
                    verdict,
                    millis: start.elapsed().as_millis(),
                    degree: o.degree,
                    nterms: o.nterms,
                    certificate: None,
                    error,
                });
            }
        }
        Err(e) => {
            entries.push(Entry {
                id: "script".to_string(),
                verdict: Verdict::Error,
                millis: start.elapsed().as_millis(),
                degree: 0,
                nterms: 0,
                certificate: None,
                error: Some(e.to_string()),
            });
        }
    }
    RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: digest,
        entries,
    }
}

// ---------------------------------------------------------------------------
// Deterministic script generator (round-trip testing)
// ---------------------------------------------------------------------------

/// Generate a random well-formed script.  Deterministic in the seed.
pub fn generate_script(seed: u64) -> Script {
    let mut rng = SplitMix64(seed ^ 0xc0de_5c71_97a3_11d7);
    let mut stmts = Vec::new();
    let n_points = 2 + rng.below(3) as usize;
    let n_params = 1 + rng.below(3) as usize;
    let points: Vec<String> = (0..n_points).map(|k| format!("P{k}")).collect();
    let params: Vec<String> = (0..n_params).map(|k| format!("w{k}")).collect();
    stmts.push(Stmt::Point(points.clone()));
    stmts.push(Stmt::Param(params.clone()));

    let mut scalars: Vec<Expr> = params.iter().map(|p| Expr::Id(p.clone())).collect();
    scalars.push(Expr::Sqrt3);
    let mut point_exprs: Vec<Expr> = points.iter().map(|p| Expr::Id(p.clone())).collect();
    let mut lines: Vec<Expr> = Vec::new();

    let rational = |rng: &mut SplitMix64| {
        let n = (rng.below(41) as i64) - 20;
        let d = 1 + rng.below(12) as i64;
        if d == 1 || n == 0 {
            Expr::Rational(BigInt::from(n), BigInt::from(1))
        } else {
            let r = num_rational::BigRational::new(BigInt::from(n), BigInt::from(d));
            Expr::Rational(r.numer().clone(), r.denom().clone())
        }
    };

    let n_lets = 1 + rng.below(5);
    for k in 0..n_lets {
        let name = format!("v{k}");
        let choice = rng.below(6);
        let expr = match choice {
            0 => Expr::Call(
                "midpoint".into(),
                vec![
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                ],
            ),
            1 => Expr::Call(
                "de_sq".into(),
                vec![
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                ],
            ),
            2 => Expr::Call(
                "line".into(),
                vec![
                    scalars[rng.below(scalars.len() as u64) as usize].clone(),
                    rational(&mut rng),
                    rational(&mut rng),
                ],
            ),
            3 => Expr::Call(
                "add".into(),
                vec![
                    scalars[rng.below(scalars.len() as u64) as usize].clone(),
                    rational(&mut rng),
                ],
            ),
            4 => Expr::Pair(
                Box::new(rational(&mut rng)),
                Box::new(scalars[rng.below(scalars.len() as u64) as usize].clone()),
            ),
            _ => Expr::Call(
                "area".into(),
                vec![
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                    point_exprs[rng.below(point_exprs.len() as u64) as usize].clone(),
                ],
            ),
        };
        match choice {
            0 | 4 => point_exprs.push(Expr::Id(name.clone())),
            2 => lines.push(Expr::Id(name.clone())),
            _ => scalars.push(Expr::Id(name.clone())),
        }
        stmts.push(Stmt::Let(name, expr));
    }

    let n_asserts = 1 + rng.below(3);
    for _ in 0..n_asserts {
        let pick = rng.below(3);
        let claim = match pick {
            0 => ClaimExpr {
                predicate: "is_zero".into(),
                args: vec![Expr::Call(
                    "sub".into(),
                    vec![
                        scalars[rng.below(scalars.len() as u64) as usize].clone(),
                        scalars[rng.below(scalars.len() as u64) as usize].clone(),
                    ],
                )],
            },
            1 => ClaimExpr {
                predicate: "colinear".into(),
                args: (0..3)
                    .map(|_| point_exprs[rng.below(point_exprs.len() as u64) as usize].clone())
                    .collect(),
            },
            _ => {
                if lines.is_empty() {
                    ClaimExpr {
                        predicate: "is_equilateral".into(),
                        args: (0..3)
                            .map(|_| {
                                point_exprs[rng.below(point_exprs.len() as u64) as usize].clone()
                            })
                            .collect(),
                    }
                } else {
                    ClaimExpr {
                        predicate: "concurrent".into(),
                        args: vec![
                            lines[rng.below(lines.len() as u64) as usize].clone(),
                            lines[rng.below(lines.len() as u64) as usize].clone(),
                        ],
                    }
                }
            }
        };
        stmts.push(Stmt::Assert(claim));
    }
    Script { stmts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_equilateral_script() {
        let text = "point A, B, C; assert equilateral(cet(A,B), cet(B,C), cet(C,A));";
        let script = parse_script(text).unwrap();
        assert_eq!(script.stmts.len(), 2);
        let Stmt::Assert(c) = &script.stmts[1] else { panic!() };
        assert_eq!(c.predicate, "is_equilateral");
    }

    #[test]
    fn use_before_declaration() {
        let err = parse_script("assert is_zero(de_sq(A, A));").unwrap_err();
        match err {
            Error::Parse { message, .. } => assert!(message.contains("before declaration")),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn empty_statement_is_a_syntax_error() {
        let err = parse_script("point A;; ").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn arity_and_unknown_primitive() {
        assert!(matches!(
            parse_script("point A; assert is_zero(de_sq(A));"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_script("point A; let b = frobnicate(A);"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_script("param midpoint;"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn roundtrip_on_generated_scripts() {
        for seed in 0..64 {
            let s = generate_script(seed);
            let printed = s.to_string();
            let reparsed = parse_script(&printed).unwrap_or_else(|e| {
                panic!("seed {seed}: {e}\n{printed}");
            });
            assert_eq!(reparsed, s, "seed {seed}");
        }
    }

    #[test]
    fn runs_a_refuted_assertion() {
        let text = "point A, B; assert is_zero(de_sq(midpoint(A, B), A));";
        let script = parse_script(text).unwrap();
        let report = run_script(&script, None);
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].verdict, Verdict::Refuted);
    }

    #[test]
    fn report_roundtrips_through_json() {
        let script = parse_script("point A, B; assert is_zero(de_sq(A, A));").unwrap();
        let report = run_script(&script, None);
        assert_eq!(report.entries[0].verdict, Verdict::Proved);
        let json = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
