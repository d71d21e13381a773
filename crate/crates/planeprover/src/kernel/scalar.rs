//! Canonical rational functions: coprime numerator/denominator, monic
//! generator-free denominator, quadratic-generator exponents below two.
//! Structural equality coincides with mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

use super::gcd::{certified_coprime, poly_gcd};
use super::monomial::Monomial;
use super::poly::Poly;
use super::{Session, VarId, VarKind};

/// Advisory list of likely denominator factors, used to keep gcd work cheap.
/// Correctness never depends on it: every factor is verified by exact trial
/// division before use.
type FactorHints = Vec<(Poly, u32)>;

const MAX_HINTS: usize = 24;

#[derive(Clone)]
pub struct Scalar {
    pub(crate) sess: Session,
    num: Arc<Poly>,
    den: Arc<Poly>,
    hints: Arc<FactorHints>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.sess.poly_string(&self.num))
        } else {
            write!(
                f,
                "({})/({})",
                self.sess.poly_string(&self.num),
                self.sess.poly_string(&self.den)
            )
        }
    }
}

impl Scalar {
    /// Wrap parts that are already canonical by construction.
    pub(crate) fn raw(sess: Session, num: Poly, den: Poly) -> Scalar {
        Scalar { sess, num: Arc::new(num), den: Arc::new(den), hints: Arc::new(Vec::new()) }
    }

    pub fn session(&self) -> &Session {
        &self.sess
    }

    pub fn num_poly(&self) -> &Poly {
        &self.num
    }

    pub fn den_poly(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(q)` when the scalar is an explicit rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn total_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn num_terms(&self) -> usize {
        self.num.num_terms().max(self.den.num_terms())
    }

    /// Variables occurring in the numerator or denominator.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// The canonical representative of `num/den`.
    ///
    /// `assume_coprime` records that the caller already guarantees
    /// `gcd(num, den) = 1`; it is dropped whenever generator rewriting or
    /// rationalization changes the fraction.
    pub(crate) fn canonical(
        sess: Session,
        mut num: Poly,
        mut den: Poly,
        mut hints: FactorHints,
        mut assume_coprime: bool,
    ) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::MalformedScalar);
        }
        let budget = sess.budget();

        // Quadratic-generator reduction and denominator rationalization.
        loop {
            let (n1, d1) = clear_generator_squares(&sess, &num)?;
            let (n2, d2) = clear_generator_squares(&sess, &den)?;
            if !d1.is_one() || !d2.is_one() || n1 != num || n2 != den {
                assume_coprime = false;
                hints.clear();
            }
            num = n1.mul(&d2, &budget);
            den = n2.mul(&d1, &budget);
            if den.is_zero() {
                return Err(Error::MalformedScalar);
            }

            // Highest generator still present in the denominator.
            let gen = den
                .vars()
                .into_iter()
                .filter(|&v| sess.kind(v) == VarKind::Generator)
                .max();
            let g = match gen {
                Some(g) => g,
                None => break,
            };
            assume_coprime = false;
            hints.clear();
            let p0 = den.coeff_of(g, 0);
            if p0.is_zero() {
                // Monomial in g: multiply through by g.
                let gp = Poly::var(g);
                num = num.mul(&gp, &budget);
                den = den.mul(&gp, &budget);
            } else if g == super::VAR_I || g == super::VAR_R3 {
                // Conjugate rationalization.
                let q1 = den.coeff_of(g, 1);
                let conj = p0.sub(&q1.mul(&Poly::var(g), &budget));
                num = num.mul(&conj, &budget);
                den = den.mul(&conj, &budget);
            } else {
                return Err(Error::UnsupportedRadicalDivision);
            }
        }

        if num.is_zero() {
            return Ok(Scalar::raw(sess, Poly::zero(), Poly::one()));
        }

        if !assume_coprime {
            // Common monomial content.
            let mono = num.monomial_content().gcd(&den.monomial_content());
            if !mono.is_one() {
                num = num.divide_monomial(&mono);
                den = den.divide_monomial(&mono);
            }
            // Advisory factor trials.
            let mut surviving: FactorHints = Vec::new();
            for (f, e) in hints.drain(..) {
                let mut remaining = e;
                for _ in 0..e {
                    let qn = num.divide_exact(&f);
                    let qd = den.divide_exact(&f);
                    match (qn, qd) {
                        (Some(qn), Some(qd)) => {
                            num = qn;
                            den = qd;
                            remaining -= 1;
                        }
                        _ => break,
                    }
                }
                if remaining > 0 {
                    surviving.push((f, remaining));
                }
            }
            hints = surviving;
            // Full cancellation.
            if !den.as_constant().is_some()
                && !num.as_constant().is_some()
                && !certified_coprime(&num, &den)
            {
                let g = poly_gcd(&num, &den);
                if g.as_constant().is_none() || !g.monomial_content().is_one() {
                    num = num.divide_exact(&g).expect("gcd divides numerator");
                    den = den.divide_exact(&g).expect("gcd divides denominator");
                }
            }
        }

        // Monic denominator.
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() {
            hints.clear();
        } else {
            hints.retain(|(f, _)| f.as_constant().is_none());
            hints.truncate(MAX_HINTS);
        }
        Ok(Scalar { sess, num: Arc::new(num), den: Arc::new(den), hints: Arc::new(hints) })
    }

    /// Re-canonicalize (idempotent on canonical scalars).
    pub fn normalize(&self) -> Result<Scalar> {
        Scalar::canonical(
            self.sess.clone(),
            (*self.num).clone(),
            (*self.den).clone(),
            (*self.hints).clone(),
            false,
        )
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let recip = rhs.recip()?;
        Ok(self * &recip)
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut hints: FactorHints = vec![];
        if self.num.as_constant().is_none() {
            let (prim, _) = self.num.primitive_int();
            let (monic, _) = prim.monic();
            hints.push((monic, 1));
        }
        Scalar::canonical(
            self.sess.clone(),
            (*self.den).clone(),
            (*self.num).clone(),
            hints,
            true,
        )
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut out = self.sess.one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(out)
    }

    /// Coefficient of `v^k`, viewing the scalar as univariate in `v`.
    pub fn coeff(&self, v: VarId, k: u32) -> Result<Scalar> {
        if self.den.contains_var(v) {
            return Err(Error::NotPolynomial(self.sess.name(v)));
        }
        Scalar::canonical(
            self.sess.clone(),
            self.num.coeff_of(v, k),
            (*self.den).clone(),
            (*self.hints).clone(),
            false,
        )
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.num.degree_in(v)
    }

    /// Simultaneous substitution of scalars for variables, then
    /// normalization.  Values may mention the substituted variables; the
    /// replacement is single-pass.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Scalar>) -> Result<Scalar> {
        if bindings.is_empty() || !self.vars().iter().any(|v| bindings.contains_key(v)) {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.sess, &self.num, bindings)?;
        let d = eval_poly(&self.sess, &self.den, bindings)?;
        n.div(&d)
    }

    /// Exact polynomial quotient `self / rhs`; both must be polynomial and
    /// the division must leave no remainder.
    pub fn divide_exact(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.den.is_one() || !rhs.den.is_one() {
            return Err(Error::NotDivisible);
        }
        match self.num.divide_exact(&rhs.num) {
            Some(q) => Ok(Scalar::raw(self.sess.clone(), q, Poly::one())),
            None => Err(Error::NotDivisible),
        }
    }

    /// Formal derivative with respect to a variable (quotient rule).
    pub fn derivative(&self, v: VarId) -> Scalar {
        let budget = self.sess.budget();
        let dn = self.num.derivative(v);
        if !self.den.contains_var(v) {
            return Scalar::canonical(
                self.sess.clone(),
                dn,
                (*self.den).clone(),
                (*self.hints).clone(),
                false,
            )
            .expect("derivative denominator nonzero");
        }
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den, &budget).sub(&self.num.mul(&dd, &budget));
        let den = self.den.mul(&self.den, &budget);
        let mut hints = (*self.hints).clone();
        let own: FactorHints = hints.iter().map(|(f, e)| (f.clone(), e * 2)).collect();
        hints = own;
        Scalar::canonical(self.sess.clone(), num, den, hints, false)
            .expect("derivative denominator nonzero")
    }
}

/// Evaluate a polynomial with some variables replaced by scalars.
fn eval_poly(sess: &Session, p: &Poly, bindings: &BTreeMap<VarId, Scalar>) -> Result<Scalar> {
    let budget = sess.budget();
    // Group terms by the bound part of the monomial to share scalar work.
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, BigRational)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut bound = Vec::new();
        let mut free = Vec::new();
        for &(id, e) in &m.0 {
            if bindings.contains_key(&VarId(id)) {
                bound.push((id, e));
            } else {
                free.push((id, e));
            }
        }
        groups
            .entry(Monomial(bound))
            .or_default()
            .push((Monomial(free), c.clone()));
    }
    let mut acc = sess.zero();
    let mut pow_cache: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
    for (bound, terms) in groups {
        let mut factor = sess.one();
        for &(id, e) in &bound.0 {
            let key = (id, e);
            let powed = match pow_cache.get(&key) {
                Some(s) => s.clone(),
                None => {
                    let s = bindings[&VarId(id)].pow(e as i64)?;
                    pow_cache.insert(key, s.clone());
                    s
                }
            };
            factor = &factor * &powed;
        }
        let mut free_terms: Vec<(Monomial, BigRational)> = terms;
        free_terms.sort_by(|a, b| b.0.cmp(&a.0));
        let free_poly = Poly::from_terms(free_terms);
        let free_scalar =
            Scalar::canonical(sess.clone(), free_poly, Poly::one(), Vec::new(), true)?;
        acc = &acc + &(&factor * &free_scalar);
    }
    let _ = budget;
    Ok(acc)
}

/// Rewrite every generator exponent >= 2 using the generators' square
/// rewrites.  Returns `(num, den)` with all generator exponents in {0, 1}.
fn clear_generator_squares(sess: &Session, p: &Poly) -> Result<(Poly, Poly)> {
    let budget = sess.budget();
    let gens = sess.generator_ids();
    let needs_work = |q: &Poly| {
        q.terms().any(|(m, _)| {
            m.0.iter().any(|&(id, e)| e >= 2 && gens.contains(&VarId(id)))
        })
    };
    if !needs_work(p) {
        return Ok((p.clone(), Poly::one()));
    }
    let mut num = p.clone();
    let mut den = Poly::one();
    while needs_work(&num) {
        let mut acc_num = Poly::zero();
        let mut acc_den = Poly::one();
        for (m, c) in num.terms() {
            let mut t_num = Poly::term(
                Monomial(
                    m.0.iter()
                        .map(|&(id, e)| {
                            if e >= 2 && gens.contains(&VarId(id)) {
                                (id, e % 2)
                            } else {
                                (id, e)
                            }
                        })
                        .filter(|&(_, e)| e > 0)
                        .collect(),
                ),
                c.clone(),
            );
            let mut t_den = Poly::one();
            for &(id, e) in &m.0 {
                if e >= 2 && gens.contains(&VarId(id)) {
                    let (rw_num, rw_den) =
                        sess.rewrite(VarId(id)).expect("generator has a rewrite");
                    let k = e / 2;
                    t_num = t_num.mul(&rw_num.pow(k, &budget), &budget);
                    t_den = t_den.mul(&rw_den.pow(k, &budget), &budget);
                }
            }
            // acc += t_num / t_den
            if t_den.is_one() {
                acc_num = acc_num.add(&t_num.mul(&acc_den, &budget));
            } else {
                acc_num = acc_num.mul(&t_den, &budget).add(&t_num.mul(&acc_den, &budget));
                acc_den = acc_den.mul(&t_den, &budget);
            }
        }
        num = acc_num;
        den = den.mul(&acc_den, &budget);
    }
    Ok((num, den))
}

/// gcd of two denominators, advisory hints first, certified gcd for the rest.
fn den_gcd(a: &Poly, a_hints: &FactorHints, b: &Poly, b_hints: &FactorHints) -> (Poly, FactorHints) {
    let mut g = Poly::one();
    let mut g_hints: FactorHints = Vec::new();
    let mut ar = a.clone();
    let mut br = b.clone();
    let budget = super::poly::Budget::UNLIMITED;
    let mut candidates: Vec<&Poly> = a_hints.iter().map(|(f, _)| f).collect();
    for (f, _) in b_hints.iter() {
        if !candidates.contains(&f) {
            candidates.push(f);
        }
    }
    for f in candidates {
        if f.as_constant().is_some() {
            continue;
        }
        let mut took = 0;
        while let (Some(qa), Some(qb)) = (ar.divide_exact(f), br.divide_exact(f)) {
            ar = qa;
            br = qb;
            g = g.mul(f, &budget);
            took += 1;
        }
        if took > 0 {
            g_hints.push((f.clone(), took));
        }
    }
    let mono = ar.monomial_content().gcd(&br.monomial_content());
    if !mono.is_one() {
        g = g.mul_term(&mono, &BigRational::one());
        ar = ar.divide_monomial(&mono);
        br = br.divide_monomial(&mono);
    }
    if ar.as_constant().is_none() && br.as_constant().is_none() && !certified_coprime(&ar, &br) {
        let extra = poly_gcd(&ar, &br);
        if extra.as_constant().is_none() {
            let (extra_monic, _) = extra.monic();
            g = g.mul(&extra_monic, &budget);
            g_hints.push((extra_monic, 1));
        }
    }
    (g, g_hints)
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        debug_assert!(self.sess.same_session(&rhs.sess));
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let budget = self.sess.budget();
        if self.den == rhs.den {
            let t = self.num.add(&rhs.num);
            if t.is_zero() {
                return self.sess.zero();
            }
            return Scalar::canonical(
                self.sess.clone(),
                t,
                (*self.den).clone(),
                (*self.hints).clone(),
                false,
            )
            .expect("denominator nonzero");
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::canonical(
                self.sess.clone(),
                self.num.add(&rhs.num),
                Poly::one(),
                Vec::new(),
                true,
            )
            .expect("denominator nonzero");
        }
        let (g1, _) = den_gcd(&self.den, &self.hints, &rhs.den, &rhs.hints);
        let bd_r = rhs.den.divide_exact(&g1).expect("gcd divides denominator");
        let ad_r = self.den.divide_exact(&g1).expect("gcd divides denominator");
        let t = self.num.mul(&bd_r, &budget).add(&rhs.num.mul(&ad_r, &budget));
        if t.is_zero() {
            return self.sess.zero();
        }
        let den = self.den.mul(&bd_r, &budget);
        // Any common factor of t and den divides g1.
        let (g2, _) = den_gcd(&t, &Vec::new(), &g1, &Vec::new());
        let (num, den) = if g2.is_one() {
            (t, den)
        } else {
            (
                t.divide_exact(&g2).expect("g2 divides t"),
                den.divide_exact(&g2).expect("g2 divides den"),
            )
        };
        let mut hints: FactorHints = (*self.hints).clone();
        for h in rhs.hints.iter() {
            hints.push(h.clone());
        }
        Scalar::canonical(self.sess.clone(), num, den, hints, true)
            .expect("denominator nonzero")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            sess: self.sess.clone(),
            num: Arc::new(self.num.neg()),
            den: self.den.clone(),
            hints: self.hints.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        debug_assert!(self.sess.same_session(&rhs.sess));
        if self.is_zero() || rhs.is_zero() {
            return self.sess.zero();
        }
        let budget = self.sess.budget();
        // Cross-cancel first so the product is born reduced.
        let (an, bd, _) = cancel_against(&self.num, &rhs.den, &rhs.hints);
        let (bn, ad, _) = cancel_against(&rhs.num, &self.den, &self.hints);
        let num = an.mul(&bn, &budget);
        let den = ad.mul(&bd, &budget);
        let mut hints: FactorHints = (*self.hints).clone();
        for h in rhs.hints.iter() {
            hints.push(h.clone());
        }
        Scalar::canonical(self.sess.clone(), num, den, hints, true).expect("denominator nonzero")
    }
}

/// Fully cancel `gcd(num, den)`: advisory trials, then a certified gcd.
/// Returns the reduced pair and the extracted gcd.
fn cancel_against(num: &Poly, den: &Poly, den_hints: &FactorHints) -> (Poly, Poly, Poly) {
    let budget = super::poly::Budget::UNLIMITED;
    let mut n = num.clone();
    let mut d = den.clone();
    let mut g = Poly::one();
    if d.is_one() {
        return (n, d, g);
    }
    for (f, e) in den_hints.iter() {
        for _ in 0..*e {
            match (n.divide_exact(f), d.divide_exact(f)) {
                (Some(qn), Some(qd)) => {
                    n = qn;
                    d = qd;
                    g = g.mul(f, &budget);
                }
                _ => break,
            }
        }
    }
    let mono = n.monomial_content().gcd(&d.monomial_content());
    if !mono.is_one() {
        n = n.divide_monomial(&mono);
        d = d.divide_monomial(&mono);
        g = g.mul_term(&mono, &BigRational::one());
    }
    if n.as_constant().is_none() && d.as_constant().is_none() && !certified_coprime(&n, &d) {
        let extra = poly_gcd(&n, &d);
        if extra.as_constant().is_none() {
            n = n.divide_exact(&extra).expect("gcd divides");
            d = d.divide_exact(&extra).expect("gcd divides");
            g = g.mul(&extra, &budget);
        }
    }
    (n, d, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sess() -> Session {
        Session::new()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let s = sess();
        let x = s.x();
        // (x^2 - 1) / (x - 1) -> x + 1
        let num = &(&x * &x) - &s.one();
        let den = &x - &s.one();
        let q = num.div(&den).unwrap();
        assert_eq!(q, &x + &s.one());
    }

    #[test]
    fn normalize_identity_case() {
        let s = sess();
        let m = s.var_scalar(s.param("m").unwrap());
        let n = s.var_scalar(s.param("n").unwrap());
        let d = &m - &n;
        assert_eq!(d.div(&d).unwrap(), s.one());
    }

    #[test]
    fn generator_rewrites() {
        let s = sess();
        let i = s.i_unit();
        assert_eq!(&i * &i, s.int(-1));
        let r3 = s.sqrt3();
        assert_eq!(&r3 * &r3, s.int(3));
        // (1 + i)(1 - i) = 2
        let a = &s.one() + &i;
        let b = &s.one() - &i;
        assert_eq!(&a * &b, s.int(2));
    }

    #[test]
    fn rational_arithmetic() {
        let s = sess();
        assert_eq!(&s.rat(1, 2) + &s.rat(1, 3), s.rat(5, 6));
        let m = s.var_scalar(s.param("m").unwrap());
        let n = s.var_scalar(s.param("n").unwrap());
        let lhs = &(&m + &n) * &(&m - &n);
        let rhs = &(&m * &m) - &(&n * &n);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_by_i_rationalizes() {
        let s = sess();
        let i = s.i_unit();
        let q = s.one().div(&i).unwrap();
        assert_eq!(q, -&i);
        // 1 / (1 + r3): denominator must become generator-free.
        let r3 = s.sqrt3();
        let q = s.one().div(&(&s.one() + &r3)).unwrap();
        assert!(q.den_poly().vars().is_empty());
        // (1 + r3) * q == 1
        assert_eq!(&(&s.one() + &r3) * &q, s.one());
    }

    #[test]
    fn adjoined_sqrt_multiplication() {
        let s = sess();
        let a = s.param("a").unwrap();
        let b = s.param("b").unwrap();
        let (sa, sb) = (s.var_scalar(a), s.var_scalar(b));
        let u = s.sqrt(&sa).unwrap();
        let v = s.sqrt(&sb).unwrap();
        // (u + v)(u - v) = a - b
        assert_eq!(&(&u + &v) * &(&u - &v), &sa - &sb);
        // sqrt(2)*sqrt(2) = 2
        let r2 = s.sqrt(&s.int(2)).unwrap();
        assert_eq!(&r2 * &r2, s.int(2));
        // sqrt caching
        assert_eq!(s.sqrt(&sa).unwrap(), u);
        // Division by a radical monomial is fine, by a radical sum is not.
        assert_eq!(s.one().div(&r2).unwrap(), r2.div(&s.int(2)).unwrap());
        let mixed = &s.one() + &u;
        assert_eq!(s.one().div(&mixed), Err(Error::UnsupportedRadicalDivision));
    }

    #[test]
    fn substitution() {
        let s = sess();
        let p = &(&s.x() * &s.x()) + &(&s.y() * &s.y());
        let mut b = BTreeMap::new();
        b.insert(super::super::VAR_X, s.int(3));
        b.insert(super::super::VAR_Y, s.int(4));
        assert_eq!(p.substitute(&b).unwrap(), s.int(25));
        let m = s.param("m").unwrap();
        assert_eq!(s.var_scalar(m).substitute(&BTreeMap::new()).unwrap(), s.var_scalar(m));
    }

    #[test]
    fn substitute_radius_example() {
        // x^2 + y^2 - x - y at (1/2, 1/2) -> -1/2, the squared-radius value.
        let s = sess();
        let form = &(&(&(&s.x() * &s.x()) + &(&s.y() * &s.y())) - &s.x()) - &s.y();
        let mut b = BTreeMap::new();
        b.insert(super::super::VAR_X, s.rat(1, 2));
        b.insert(super::super::VAR_Y, s.rat(1, 2));
        assert_eq!(form.substitute(&b).unwrap(), s.rat(-1, 2));
    }

    #[test]
    fn error_paths() {
        let s = sess();
        let m = s.var_scalar(s.param("m").unwrap());
        assert_eq!(s.one().div(&s.zero()), Err(Error::DivisionByZero));
        // coeff on an expression whose denominator involves the variable.
        let ratio = s.one().div(&s.x()).unwrap();
        assert!(matches!(ratio.coeff(super::super::VAR_X, 1), Err(Error::NotPolynomial(_))));
        // Exact division: (m^2 - n^2) / (m - n) = m + n; x^2 + 1 by x fails.
        let n = s.var_scalar(s.param("n").unwrap());
        let num = &(&m * &m) - &(&n * &n);
        assert_eq!(num.divide_exact(&(&m - &n)).unwrap(), &m + &n);
        let x2p1 = &(&s.x() * &s.x()) + &s.one();
        assert_eq!(x2p1.divide_exact(&s.x()), Err(Error::NotDivisible));
    }

    #[test]
    fn perfect_square_sqrt() {
        let s = sess();
        assert_eq!(s.sqrt(&s.int(4)).unwrap(), s.int(2));
        assert_eq!(s.sqrt(&s.rat(9, 16)).unwrap(), s.rat(3, 4));
        assert_eq!(s.sqrt(&s.int(-1)).unwrap(), s.i_unit());
    }
}
