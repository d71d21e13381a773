//! Error type shared by the kernel, geometry and prover layers.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A scalar whose denominator reduced to zero.
    MalformedScalar,
    /// Division by the zero scalar.
    DivisionByZero,
    /// Division by a denominator that mixes a formal square root with other
    /// terms; only the built-in generators `i` and `r3` support conjugate
    /// rationalization.
    UnsupportedRadicalDivision,
    /// Coefficient extraction on an expression that is not polynomial in the
    /// requested variable.
    NotPolynomial(String),
    /// `solve_linear` was given an equation that is nonlinear in the unknowns.
    NonlinearSystem,
    /// Matrix or exponent-vector shape mismatch.
    Shape(String),
    /// Exact polynomial division has a nonzero remainder.
    NotDivisible,
    /// Evaluation hit a pole or an otherwise unusable sample point.
    Evaluation(String),
    /// Two lines that do not meet in a single point.
    DegenerateIntersection,
    /// Circle through colinear points.
    DegenerateCircle,
    /// Lines with no common point.
    NoCommonPoint,
    /// Tangent requested at a point that does not lie on the conic.
    NotIncident,
    /// Radical line unusable in both orientations.
    UnsupportedOrientation,
    /// Slope of a symbolically vertical line, or a zero denominator pole.
    Pole,
    /// Cross-checked quantities disagree; indicates a kernel bug.
    InternalInconsistency(String),
    /// Term-count or wall-clock guardrail exceeded.
    Resource(String),
    /// Unknown theorem identifier.
    NotFound(String),
    /// The numeric oracle could not find a non-degenerate sample.
    UnableToSample,
    /// Duplicate indeterminate or generator name in a session.
    DuplicateName(String),
    /// DSL parse error with position information.
    Parse { line: usize, col: usize, message: String },
    /// DSL evaluation error (unknown primitive, arity, types, scoping).
    Script(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedScalar => write!(f, "malformed scalar: zero denominator"),
            Error::DivisionByZero => write!(f, "division by zero scalar"),
            Error::UnsupportedRadicalDivision => {
                write!(f, "division by a non-monomial radical-bearing denominator")
            }
            Error::NotPolynomial(v) => write!(f, "expression is not polynomial in {v}"),
            Error::NonlinearSystem => write!(f, "system is nonlinear in the unknowns"),
            Error::Shape(m) => write!(f, "shape error: {m}"),
            Error::NotDivisible => write!(f, "polynomial division is not exact"),
            Error::Evaluation(m) => write!(f, "evaluation error: {m}"),
            Error::DegenerateIntersection => write!(f, "lines do not meet in a unique point"),
            Error::DegenerateCircle => write!(f, "no circle through colinear points"),
            Error::NoCommonPoint => write!(f, "lines have no common point"),
            Error::NotIncident => write!(f, "point does not lie on the conic"),
            Error::UnsupportedOrientation => {
                write!(f, "radical line depends on neither y nor x")
            }
            Error::Pole => write!(f, "identically zero denominator"),
            Error::InternalInconsistency(m) => write!(f, "internal inconsistency: {m}"),
            Error::Resource(m) => write!(f, "resource guardrail exceeded: {m}"),
            Error::NotFound(id) => write!(f, "unknown theorem: {id}"),
            Error::UnableToSample => write!(f, "no non-degenerate sample found"),
            Error::DuplicateName(n) => write!(f, "name already in use: {n}"),
            Error::Parse { line, col, message } => {
                write!(f, "parse error at {line}:{col}: {message}")
            }
            Error::Script(m) => write!(f, "script error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

/// Panic payload used by the kernel to abort runaway computations.  The
/// prover entry points catch it and convert it into [`Error::Resource`].
pub struct ResourceAbort(pub String);

/// Run `f`, converting a [`ResourceAbort`] panic into [`Error::Resource`].
/// Other panics are propagated unchanged.
pub fn catch_resource<T>(f: impl FnOnce() -> Result<T> + std::panic::UnwindSafe) -> Result<T> {
    match std::panic::catch_unwind(f) {
        Ok(r) => r,
        Err(payload) => match payload.downcast::<ResourceAbort>() {
            Ok(abort) => Err(Error::Resource(abort.0)),
            Err(other) => std::panic::resume_unwind(other),
        },
    }
}
