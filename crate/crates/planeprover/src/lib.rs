//! Exact symbolic theorem prover for plane geometry.
//!
//! The kernel provides canonical multivariate rational functions over the
//! rationals with adjoined quadratic generators (the imaginary unit, sqrt3
//! and formal square roots).  On top of it sit a Gröbner-basis engine, the
//! plane-geometry construction primitives, a catalog of classical theorems
//! proved by exact normalization, and a small script language.

pub mod error;
pub mod geometry;
pub mod groebner;
pub mod kernel;
pub mod script;
pub mod theorems;

pub use error::{Error, Result};
pub use kernel::{Scalar, Session, VarId, VarKind};
