//! Exact arithmetic on multivariate rational functions over the rationals
//! with adjoined quadratic generators, plus symbolic linear solving,
//! fraction-free determinants and an independent numeric evaluator.

pub mod det;
pub mod eval;
pub mod gcd;
pub mod monomial;
pub mod poly;
pub mod scalar;
pub mod solve;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use monomial::Monomial;
pub use poly::{Budget, Poly};
pub use scalar::Scalar;
pub use solve::{solve_linear, LinearSolution, SolveStatus};

/// Sink for trace lines emitted while constructions run.
pub type TraceSink = Box<dyn Fn(&str) + Send + Sync>;

/// Index of an indeterminate or quadratic generator within a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// One of the two distinguished variables `x`, `y`.
    Geometric,
    /// A free parameter.
    Parameter,
    /// A quadratic generator `u` with a rewrite for `u^2`.
    Generator,
}

struct VarInfo {
    name: String,
    kind: VarKind,
    /// For generators: `(num, den)` of the scalar that `u^2` rewrites to.
    rewrite: Option<(Poly, Poly)>,
}

struct VarTable {
    vars: Vec<VarInfo>,
    by_name: HashMap<String, VarId>,
    /// Canonical radicand -> generator, so repeated square roots agree.
    sqrt_cache: HashMap<(Poly, Poly), VarId>,
}

struct SessionInner {
    table: RwLock<VarTable>,
    max_terms: AtomicUsize,
    deadline: Mutex<Option<Instant>>,
    fresh: AtomicU64,
    trace: Mutex<Option<TraceSink>>,
}

/// A prover session: the registry of indeterminates and generators, the
/// resource guardrails and the trace sink.  All values are immutable;
/// creating fresh variables is the only mutating operation.
#[derive(Clone)]
pub struct Session {
    inner: Arc<SessionInner>,
}

/// Well-known variable ids present in every session.
pub const VAR_X: VarId = VarId(0);
pub const VAR_Y: VarId = VarId(1);
pub const VAR_I: VarId = VarId(2);
pub const VAR_R3: VarId = VarId(3);

pub const DEFAULT_MAX_TERMS: usize = 5_000_000;

impl Default for Session {
    fn default() -> Self {
        Session::new()
    }
}

impl Session {
    pub fn new() -> Session {
        let mut table = VarTable {
            vars: Vec::new(),
            by_name: HashMap::new(),
            sqrt_cache: HashMap::new(),
        };
        let mut add = |name: &str, kind: VarKind, rewrite: Option<(Poly, Poly)>| {
            let id = VarId(table.vars.len() as u32);
            table.by_name.insert(name.to_string(), id);
            table.vars.push(VarInfo { name: name.to_string(), kind, rewrite });
            id
        };
        add("x", VarKind::Geometric, None);
        add("y", VarKind::Geometric, None);
        add("i", VarKind::Generator, Some((Poly::from_int(-1), Poly::one())));
        add("r3", VarKind::Generator, Some((Poly::from_int(3), Poly::one())));
        let max_terms = std::env::var("PLANEPROVER_MAX_TERMS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_TERMS);
        Session {
            inner: Arc::new(SessionInner {
                table: RwLock::new(table),
                max_terms: AtomicUsize::new(max_terms),
                deadline: Mutex::new(None),
                fresh: AtomicU64::new(0),
                trace: Mutex::new(None),
            }),
        }
    }

    pub fn same_session(&self, other: &Session) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    // -- variables ---------------------------------------------------------

    /// Register a new parameter indeterminate.  Names are unique per session.
    pub fn param(&self, name: &str) -> Result<VarId> {
        let mut table = self.inner.table.write().unwrap();
        if table.by_name.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let id = VarId(table.vars.len() as u32);
        table.by_name.insert(name.to_string(), id);
        table.vars.push(VarInfo { name: name.to_string(), kind: VarKind::Parameter, rewrite: None });
        Ok(id)
    }

    /// Register a parameter with a generated unique name based on `hint`.
    pub fn fresh_param(&self, hint: &str) -> VarId {
        loop {
            let n = self.inner.fresh.fetch_add(1, Ordering::Relaxed);
            let name = format!("{hint}@{n}");
            if let Ok(id) = self.param(&name) {
                return id;
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.inner.table.read().unwrap().by_name.get(name).copied()
    }

    pub fn name(&self, v: VarId) -> String {
        self.inner.table.read().unwrap().vars[v.0 as usize].name.clone()
    }

    pub fn kind(&self, v: VarId) -> VarKind {
        self.inner.table.read().unwrap().vars[v.0 as usize].kind
    }

    pub fn is_generator(&self, v: VarId) -> bool {
        self.kind(v) == VarKind::Generator
    }

    /// `(num, den)` of the scalar that the generator's square rewrites to.
    pub(crate) fn rewrite(&self, v: VarId) -> Option<(Poly, Poly)> {
        self.inner.table.read().unwrap().vars[v.0 as usize].rewrite.clone()
    }

    pub(crate) fn generator_ids(&self) -> Vec<VarId> {
        let table = self.inner.table.read().unwrap();
        table
            .vars
            .iter()
            .enumerate()
            .filter(|(_, info)| info.kind == VarKind::Generator)
            .map(|(i, _)| VarId(i as u32))
            .collect()
    }

    /// Count of registered variables (including x, y and the generators).
    pub fn var_count(&self) -> usize {
        self.inner.table.read().unwrap().vars.len()
    }

    /// Adjoin a formal square root of `radicand`, returning its generator.
    /// Repeated calls with the same canonical radicand return the same
    /// generator.
    pub fn adjoin_sqrt(&self, radicand: &Scalar) -> Result<VarId> {
        if radicand.is_zero() {
            return Err(Error::Evaluation("square root of the zero scalar".into()));
        }
        let key = (radicand.num_poly().clone(), radicand.den_poly().clone());
        {
            let table = self.inner.table.read().unwrap();
            if let Some(&id) = table.sqrt_cache.get(&key) {
                return Ok(id);
            }
        }
        let mut table = self.inner.table.write().unwrap();
        if let Some(&id) = table.sqrt_cache.get(&key) {
            return Ok(id);
        }
        let n = table.sqrt_cache.len();
        let mut name = format!("u{n}");
        while table.by_name.contains_key(&name) {
            name.push('\'');
        }
        let id = VarId(table.vars.len() as u32);
        table.by_name.insert(name.clone(), id);
        table.vars.push(VarInfo {
            name,
            kind: VarKind::Generator,
            rewrite: Some(key.clone()),
        });
        table.sqrt_cache.insert(key, id);
        Ok(id)
    }

    /// Square root as a scalar: exact for rational perfect squares (with
    /// `sqrt(-1) = i`), a formal generator otherwise.
    pub fn sqrt(&self, s: &Scalar) -> Result<Scalar> {
        if let Some(q) = s.as_rational() {
            if q.is_zero() {
                return Ok(self.zero());
            }
            let (num, den) = (q.numer().abs(), q.denom().clone());
            let sn = num.sqrt();
            let sd = den.sqrt();
            if &sn * &sn == num && &sd * &sd == den {
                let root = self.rational(BigRational::new(sn, sd));
                if q.is_negative() {
                    return Ok(&root * &self.i_unit());
                }
                return Ok(root);
            }
        }
        let id = self.adjoin_sqrt(s)?;
        Ok(self.var_scalar(id))
    }

    // -- guardrails and tracing --------------------------------------------

    pub fn budget(&self) -> Budget {
        Budget {
            max_terms: self.inner.max_terms.load(Ordering::Relaxed),
            deadline: *self.inner.deadline.lock().unwrap(),
        }
    }

    pub fn set_max_terms(&self, n: usize) {
        self.inner.max_terms.store(n, Ordering::Relaxed);
    }

    pub fn set_deadline(&self, deadline: Option<Instant>) {
        *self.inner.deadline.lock().unwrap() = deadline;
    }

    pub fn set_trace(&self, f: Option<TraceSink>) {
        *self.inner.trace.lock().unwrap() = f;
    }

    pub fn trace_enabled(&self) -> bool {
        self.inner.trace.lock().unwrap().is_some()
    }

    pub fn trace_with(&self, f: impl FnOnce() -> String) {
        let guard = self.inner.trace.lock().unwrap();
        if let Some(sink) = guard.as_ref() {
            sink(&f());
        }
    }

    // -- scalar constructors -------------------------------------------------

    pub fn zero(&self) -> Scalar {
        Scalar::raw(self.clone(), Poly::zero(), Poly::one())
    }

    pub fn one(&self) -> Scalar {
        Scalar::raw(self.clone(), Poly::one(), Poly::one())
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::raw(self.clone(), Poly::from_int(n), Poly::one())
    }

    pub fn rat(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "rational with zero denominator");
        self.rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(&self, q: BigRational) -> Scalar {
        Scalar::raw(self.clone(), Poly::constant(q), Poly::one())
    }

    pub fn var_scalar(&self, v: VarId) -> Scalar {
        Scalar::raw(self.clone(), Poly::var(v), Poly::one())
    }

    pub fn x(&self) -> Scalar {
        self.var_scalar(VAR_X)
    }

    pub fn y(&self) -> Scalar {
        self.var_scalar(VAR_Y)
    }

    /// The imaginary unit.
    pub fn i_unit(&self) -> Scalar {
        self.var_scalar(VAR_I)
    }

    /// The built-in square root of three.
    pub fn sqrt3(&self) -> Scalar {
        self.var_scalar(VAR_R3)
    }

    /// Wrap a polynomial as a scalar (canonicalizing).
    pub fn poly_scalar(&self, p: Poly) -> Scalar {
        Scalar::canonical(self.clone(), p, Poly::one(), Vec::new(), true)
            .expect("polynomial scalar is well-formed")
    }

    /// Format a polynomial with this session's variable names.
    pub fn poly_string(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let table = self.inner.table.read().unwrap();
        let mut out = String::new();
        for (idx, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut pieces: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                if abs.denom().is_one() {
                    pieces.push(abs.numer().to_string());
                } else {
                    pieces.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for &(id, e) in &m.0 {
                let name = &table.vars[id as usize].name;
                if e == 1 {
                    pieces.push(name.clone());
                } else {
                    pieces.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&pieces.join("*"));
        }
        out
    }
}

/// The four field operations, as named by the kernel contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic followed by normalization.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.div(b),
    }
}
