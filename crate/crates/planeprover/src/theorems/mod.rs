//! The theorem catalog: each entry compiles a construction over the geometry
//! module into a claim that reduces to an identical-vanishing test, plus the
//! provers that run those claims symbolically.

mod constructions;
pub mod oracle;

use std::time::{Duration, Instant};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{catch_resource, Error, Result};
use crate::geometry::{self, Conic, Line, Point};
use crate::groebner::{buchberger, normal_form, GroebnerBasis, PolyIdeal};
use crate::kernel::{Poly, Scalar, Session, VarId};

pub use oracle::{mutations, numeric_spot_check, Mutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    ZeroIdentity,
    Colinearity,
    Concurrency,
    Concyclicity,
    Equilaterality,
    Tangency,
    GroebnerZero,
    Certificate,
}

/// The checkable content of a theorem after its construction has run.
pub enum ClaimBody {
    /// Every scalar must vanish identically.
    ZeroAll(Vec<Scalar>),
    Colinear(Vec<Point>),
    Concurrent(Vec<Line>),
    Concyclic(Vec<Point>),
    Equilateral(Point, Point, Point),
    Touch(Conic, Conic),
    /// The target polynomial must have zero normal form modulo the ideal.
    GroebnerZero { ideal: PolyIdeal, target: Poly },
    /// Steiner-Lehmus: the difference numerator, its claimed divisor and the
    /// parameters for the numeric positivity evidence.
    Certificate { difference: Scalar, divisor: Scalar, m: VarId, n: VarId },
}

pub struct Claim {
    pub body: ClaimBody,
    /// Representative intermediates for size statistics.
    pub stats: Vec<Scalar>,
}

impl Claim {
    fn new(body: ClaimBody, stats: Vec<Scalar>) -> Claim {
        Claim { body, stats }
    }
}

/// Parameter supplier: fresh indeterminates when proving, random rationals
/// for the numeric oracle.
pub struct Params<'s> {
    sess: &'s Session,
    rng: Option<crate::kernel::gcd::SplitMix64>,
}

impl<'s> Params<'s> {
    pub fn symbolic(sess: &'s Session) -> Params<'s> {
        Params { sess, rng: None }
    }

    pub fn numeric(sess: &'s Session, seed: u64) -> Params<'s> {
        Params { sess, rng: Some(crate::kernel::gcd::SplitMix64(seed)) }
    }

    pub fn is_numeric(&self) -> bool {
        self.rng.is_some()
    }

    /// A named parameter: a fresh indeterminate or a random rational with
    /// numerator and denominator in [-100, 100].
    pub fn scalar(&mut self, name: &str) -> Result<Scalar> {
        match &mut self.rng {
            None => Ok(self.sess.var_scalar(self.sess.param(name)?)),
            Some(rng) => {
                let mut num = (rng.below(201) as i64) - 100;
                if num == 0 {
                    num = 1;
                }
                let den = 1 + rng.below(100) as i64;
                Ok(self.sess.rat(num, den))
            }
        }
    }

    pub fn point(&mut self, name: &str) -> Result<Point> {
        let x = self.scalar(&format!("{name}1"))?;
        let y = self.scalar(&format!("{name}2"))?;
        Ok(Point::new(x, y))
    }
}

type Construct = fn(&Session, &mut Params) -> Result<Claim>;

pub struct TheoremRecord {
    pub id: &'static str,
    pub title: &'static str,
    pub kind: ClaimKind,
    pub expected: Verdict,
    pub(crate) construct: Construct,
}

impl TheoremRecord {
    pub fn build(&self, sess: &Session, params: &mut Params) -> Result<Claim> {
        (self.construct)(sess, params)
    }
}

/// The 25 theorems, in catalog order.
pub fn catalog() -> &'static [TheoremRecord] {
    constructions::CATALOG
}

pub fn find(id: &str) -> Result<&'static TheoremRecord> {
    catalog()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::NotFound(id.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Refuted,
    Certificate,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofResult {
    pub id: String,
    pub verdict: Verdict,
    pub millis: u128,
    /// Total degree of the largest verified numerator.
    pub degree: u32,
    /// Term count of the largest verified numerator.
    pub nterms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Shared sink for intermediate symbolic objects (points, lines, conics).
pub type SharedTrace = std::sync::Arc<dyn Fn(&str) + Send + Sync>;

#[derive(Clone)]
pub struct ProveOptions {
    pub timeout: Duration,
    pub max_terms: usize,
    pub trace: Option<SharedTrace>,
}

impl Default for ProveOptions {
    fn default() -> Self {
        let max_terms = std::env::var("PLANEPROVER_MAX_TERMS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(crate::kernel::DEFAULT_MAX_TERMS);
        ProveOptions { timeout: Duration::from_secs(300), max_terms, trace: None }
    }
}

/// Check a claim symbolically.  `Ok(true)` means the claim holds identically.
pub fn check_claim(sess: &Session, claim: &ClaimBody) -> Result<bool> {
    match claim {
        ClaimBody::ZeroAll(scalars) => Ok(scalars.iter().all(|s| s.is_zero())),
        ClaimBody::Colinear(points) => geometry::colinear(points),
        ClaimBody::Concurrent(lines) => geometry::concurrent(lines),
        ClaimBody::Concyclic(points) => geometry::concyclic(points),
        ClaimBody::Equilateral(a, b, c) => Ok(geometry::is_equilateral(a, b, c)),
        ClaimBody::Touch(c1, c2) => geometry::touch_circles(c1, c2),
        ClaimBody::GroebnerZero { ideal, target } => {
            let gb = buchberger(ideal, &sess.budget())?;
            Ok(normal_form(target, &gb, &sess.budget())?.is_zero())
        }
        ClaimBody::Certificate { .. } => Ok(certificate_payload(sess, claim)?.is_some()),
    }
}

/// Compute the Gröbner basis of a claim (exposed for the acceptance suite).
pub fn claim_groebner(sess: &Session, claim: &ClaimBody) -> Result<Option<GroebnerBasis>> {
    match claim {
        ClaimBody::GroebnerZero { ideal, .. } => Ok(Some(buchberger(ideal, &sess.budget())?)),
        _ => Ok(None),
    }
}

/// The Steiner-Lehmus certificate: exact divisibility of the difference
/// numerator by `m - n`, plus numeric nonvanishing evidence for the cofactor
/// on samples from (0, 1)^2.  Returns `None` when the divisibility fails.
fn certificate_payload(sess: &Session, claim: &ClaimBody) -> Result<Option<serde_json::Value>> {
    let ClaimBody::Certificate { difference, divisor, m, n } = claim else {
        return Ok(None);
    };
    let numerator = sess.poly_scalar(difference.num_poly().clone());
    let cofactor = match numerator.divide_exact(divisor) {
        Ok(c) => c,
        Err(Error::NotDivisible) => return Ok(None),
        Err(e) => return Err(e),
    };
    // Numeric evidence: the cofactor stays nonzero at random rational
    // samples in (0, 1)^2.
    let mut rng = crate::kernel::gcd::SplitMix64(0x1e43_05dd_c0fa_c70e);
    let mut samples = Vec::new();
    for _ in 0..5 {
        let mv = BigRational::new((1 + rng.below(97) as i64).into(), 100.into());
        let nv = BigRational::new((1 + rng.below(97) as i64).into(), 100.into());
        let mut point = std::collections::BTreeMap::new();
        point.insert(*m, mv.clone());
        point.insert(*n, nv.clone());
        let value = crate::kernel::eval::eval_at(&cofactor, &point)?;
        if value.is_zero() {
            return Ok(None);
        }
        samples.push(serde_json::json!({
            "m": mv.to_string(),
            "n": nv.to_string(),
            "nonzero": true,
        }));
    }
    Ok(Some(serde_json::json!({
        "divisor": format!("{divisor}"),
        "cofactor_degree": cofactor.num_poly().total_degree(),
        "cofactor_terms": cofactor.num_poly().num_terms(),
        "rigor": "semi-rigorous: exact divisibility plus sampled nonvanishing of the cofactor",
        "samples": samples,
    })))
}

fn claim_stats(claim: &Claim) -> (u32, usize) {
    let mut degree = 0;
    let mut nterms = 0;
    let mut consider = |s: &Scalar| {
        degree = degree.max(s.num_poly().total_degree()).max(s.den_poly().total_degree());
        nterms = nterms.max(s.num_poly().num_terms()).max(s.den_poly().num_terms());
    };
    for s in &claim.stats {
        consider(s);
    }
    match &claim.body {
        ClaimBody::ZeroAll(ss) => ss.iter().for_each(&mut consider),
        ClaimBody::Colinear(ps) | ClaimBody::Concyclic(ps) => {
            ps.iter().for_each(|p| {
                consider(&p.x);
                consider(&p.y);
            });
        }
        ClaimBody::Concurrent(ls) => ls.iter().for_each(|l| consider(l.form())),
        ClaimBody::Equilateral(a, b, c) => {
            for p in [a, b, c] {
                consider(&p.x);
                consider(&p.y);
            }
        }
        ClaimBody::Touch(c1, c2) => {
            consider(c1.form());
            consider(c2.form());
        }
        ClaimBody::GroebnerZero { target, .. } => {
            degree = degree.max(target.total_degree());
            nterms = nterms.max(target.num_terms());
        }
        ClaimBody::Certificate { difference, .. } => consider(difference),
    }
    (degree, nterms)
}

/// Run one theorem symbolically.
pub fn prove(id: &str) -> ProofResult {
    prove_with(id, &ProveOptions::default())
}

pub fn prove_with(id: &str, opts: &ProveOptions) -> ProofResult {
    let start = Instant::now();
    let rec = match find(id) {
        Ok(r) => r,
        Err(e) => {
            return ProofResult {
                id: id.to_string(),
                verdict: Verdict::Error,
                millis: 0,
                degree: 0,
                nterms: 0,
                certificate: None,
                error: Some(e.to_string()),
            }
        }
    };
    let sess = Session::new();
    sess.set_max_terms(opts.max_terms);
    sess.set_deadline(Some(start + opts.timeout));
    if let Some(sink) = opts.trace.clone() {
        let id = id.to_string();
        sess.set_trace(Some(Box::new(move |msg| sink(&format!("[{id}] {msg}")))));
    }
    let outcome = catch_resource({
        let sess = sess.clone();
        move || {
            let mut params = Params::symbolic(&sess);
            let claim = rec.build(&sess, &mut params)?;
            let holds = check_claim(&sess, &claim.body)?;
            let (degree, nterms) = claim_stats(&claim);
            let certificate = if rec.kind == ClaimKind::Certificate && holds {
                certificate_payload(&sess, &claim.body)?
            } else if holds {
                match &claim.body {
                    ClaimBody::ZeroAll(_) => Some(serde_json::json!({
                        "degree": degree,
                        "parameters": params_in_claim(&claim),
                    })),
                    _ => None,
                }
            } else {
                None
            };
            Ok((holds, degree, nterms, certificate))
        }
    });
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok((holds, degree, nterms, certificate)) => {
            let verdict = if !holds {
                Verdict::Refuted
            } else if rec.kind == ClaimKind::Certificate {
                Verdict::Certificate
            } else {
                Verdict::Proved
            };
            ProofResult { id: id.to_string(), verdict, millis, degree, nterms, certificate, error: None }
        }
        Err(e) => ProofResult {
            id: id.to_string(),
            verdict: Verdict::Error,
            millis,
            degree: 0,
            nterms: 0,
            certificate: None,
            error: Some(e.to_string()),
        },
    }
}

fn params_in_claim(claim: &Claim) -> usize {
    use std::collections::BTreeSet;
    let mut vars: BTreeSet<VarId> = BTreeSet::new();
    let mut visit = |s: &Scalar| {
        for v in s.vars() {
            vars.insert(v);
        }
    };
    if let ClaimBody::ZeroAll(ss) = &claim.body {
        ss.iter().for_each(&mut visit);
    }
    claim.stats.iter().for_each(&mut visit);
    vars.len()
}

/// Run the whole catalog, optionally across threads.  Verdicts are
/// deterministic regardless of parallelism; report order follows the
/// catalog.
pub fn prove_all(parallel: bool, opts: &ProveOptions) -> Vec<ProofResult> {
    let ids: Vec<&'static str> = catalog().iter().map(|r| r.id).collect();
    if !parallel {
        return ids.iter().map(|id| prove_with(id, opts)).collect();
    }
    let mut results: Vec<Option<ProofResult>> = ids.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = ids
            .iter()
            .map(|id| scope.spawn(move || prove_with(id, opts)))
            .collect();
        for (slot, handle) in results.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("prover thread panicked"));
        }
    });
    results.into_iter().map(|r| r.expect("all slots filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_25_entries() {
        assert_eq!(catalog().len(), 25);
        assert!(find("Napoleon").is_ok());
        assert!(matches!(find("NoSuch"), Err(Error::NotFound(_))));
    }

    #[test]
    fn napoleon_proves() {
        let r = prove("Napoleon");
        assert_eq!(r.verdict, Verdict::Proved);
    }

    #[test]
    fn lehmus_yields_a_certificate() {
        let r = prove("Lehmus");
        assert_eq!(r.verdict, Verdict::Certificate);
        let cert = r.certificate.unwrap();
        assert_eq!(cert["divisor"], "m - n");
    }

    #[test]
    fn unknown_theorem_is_an_error_verdict() {
        let r = prove("Frobenius");
        assert_eq!(r.verdict, Verdict::Error);
    }

    #[test]
    fn oracle_verdicts_are_seed_independent() {
        let a = numeric_spot_check("Ptolemy", 1).unwrap();
        let b = numeric_spot_check("Ptolemy", 999).unwrap();
        assert_eq!(a, b);
        assert!(a);
    }

    #[test]
    fn resource_guardrail_reports_error() {
        let opts = ProveOptions { max_terms: 40, ..ProveOptions::default() };
        let r = prove_with("Feuerbach", &opts);
        assert_eq!(r.verdict, Verdict::Error);
        assert!(r.error.unwrap().contains("resource"));
    }
}
