//! Independent numeric evaluation of scalars at exact rational points.
//!
//! Values live in the tower Q(i, sqrt3)(u_1, u_2, ...) where each u_j is a
//! formal square root of an already-evaluated radicand.  Everything stays
//! exact, so a zero is a real zero and never a rounding artifact.  This path
//! shares no code with the symbolic normalizer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::poly::Poly;
use super::{Scalar, Session, VarId, VAR_I, VAR_R3};

/// Element of Q(i, sqrt3): `a + b*i + c*s + d*i*s` with `s = sqrt3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExt {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl QExt {
    pub fn zero() -> QExt {
        QExt {
            a: BigRational::zero(),
            b: BigRational::zero(),
            c: BigRational::zero(),
            d: BigRational::zero(),
        }
    }

    pub fn from_rational(q: BigRational) -> QExt {
        QExt { a: q, ..QExt::zero() }
    }

    pub fn i() -> QExt {
        QExt { b: BigRational::one(), ..QExt::zero() }
    }

    pub fn sqrt3() -> QExt {
        QExt { c: BigRational::one(), ..QExt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() && self.c.is_zero() && self.d.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn add(&self, o: &QExt) -> QExt {
        QExt { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d }
    }

    pub fn sub(&self, o: &QExt) -> QExt {
        QExt { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, d: &self.d - &o.d }
    }

    pub fn neg(&self) -> QExt {
        QExt { a: -self.a.clone(), b: -self.b.clone(), c: -self.c.clone(), d: -self.d.clone() }
    }

    pub fn mul(&self, o: &QExt) -> QExt {
        // (a1 + b1 i + c1 s + d1 i s)(a2 + b2 i + c2 s + d2 i s), i^2 = -1, s^2 = 3
        let three = BigRational::from_integer(BigInt::from(3));
        let a = &self.a * &o.a - &self.b * &o.b + (&self.c * &o.c - &self.d * &o.d) * &three;
        let b = &self.a * &o.b + &self.b * &o.a + (&self.c * &o.d + &self.d * &o.c) * &three;
        let c = &self.a * &o.c + &self.c * &o.a - (&self.b * &o.d + &self.d * &o.b);
        let d = &self.a * &o.d + &self.d * &o.a + &self.b * &o.c + &self.c * &o.b;
        QExt { a, b, c, d }
    }

    pub fn inv(&self) -> Result<QExt> {
        if self.is_zero() {
            return Err(Error::Evaluation("division by zero value".into()));
        }
        // Conjugate over i, then over s.
        let conj_i = QExt { a: self.a.clone(), b: -self.b.clone(), c: self.c.clone(), d: -self.d.clone() };
        let t = self.mul(&conj_i); // A + B s, with zero i-parts
        debug_assert!(t.b.is_zero() && t.d.is_zero());
        let three = BigRational::from_integer(BigInt::from(3));
        let norm = &t.a * &t.a - &t.c * &t.c * &three;
        if norm.is_zero() {
            return Err(Error::Evaluation("zero norm".into()));
        }
        let conj_s = QExt { a: t.a.clone(), b: BigRational::zero(), c: -t.c.clone(), d: BigRational::zero() };
        let mut out = conj_i.mul(&conj_s);
        let inv_norm = BigRational::one() / norm;
        out.a *= &inv_norm;
        out.b *= &inv_norm;
        out.c *= &inv_norm;
        out.d *= &inv_norm;
        Ok(out)
    }
}

/// Registry of adjoined real radicals; `rads[j]` holds the value of `u_j^2`,
/// expressed over radicals with smaller indices only.
#[derive(Debug, Clone, Default)]
pub struct Tower {
    rads: Vec<NumVal>,
}

impl Tower {
    /// Adjoin `sqrt(v)`.  Rational perfect squares fold away; negative
    /// rationals are rejected (the evaluation preconditions require
    /// nonnegative radicands).
    pub fn sqrt(&mut self, v: &NumVal) -> Result<NumVal> {
        if v.is_zero() {
            return Ok(NumVal::zero());
        }
        if let Some(q) = v.as_rational() {
            if q.is_negative() {
                return Err(Error::Evaluation("negative radicand".into()));
            }
            let (num, den) = (q.numer().clone(), q.denom().clone());
            let sn = num.sqrt();
            let sd = den.sqrt();
            if &sn * &sn == num && &sd * &sd == den {
                return Ok(NumVal::from_rational(BigRational::new(sn, sd)));
            }
        }
        for (j, r) in self.rads.iter().enumerate() {
            if r == v {
                return Ok(NumVal::radical(j));
            }
        }
        self.rads.push(v.clone());
        Ok(NumVal::radical(self.rads.len() - 1))
    }
}

/// A value in the radical tower: a map from radical bitmask to Q(i, sqrt3)
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NumVal {
    terms: BTreeMap<u64, QExt>,
}

impl NumVal {
    pub fn zero() -> NumVal {
        NumVal { terms: BTreeMap::new() }
    }

    pub fn from_rational(q: BigRational) -> NumVal {
        NumVal::from_qext(QExt::from_rational(q))
    }

    pub fn from_qext(q: QExt) -> NumVal {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0, q);
        }
        NumVal { terms }
    }

    fn radical(j: usize) -> NumVal {
        assert!(j < 64, "radical tower limited to 64 generators");
        let mut terms = BTreeMap::new();
        terms.insert(1u64 << j, QExt::from_rational(BigRational::one()));
        NumVal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&0) {
                return q.as_rational().cloned();
            }
        }
        None
    }

    pub fn as_qext(&self) -> Option<QExt> {
        if self.terms.is_empty() {
            return Some(QExt::zero());
        }
        if self.terms.len() == 1 {
            return self.terms.get(&0).cloned();
        }
        None
    }

    pub fn add(&self, o: &NumVal) -> NumVal {
        let mut out = self.terms.clone();
        for (mask, q) in &o.terms {
            match out.get_mut(mask) {
                Some(v) => {
                    let s = v.add(q);
                    if s.is_zero() {
                        out.remove(mask);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    out.insert(*mask, q.clone());
                }
            }
        }
        NumVal { terms: out }
    }

    pub fn sub(&self, o: &NumVal) -> NumVal {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> NumVal {
        NumVal { terms: self.terms.iter().map(|(m, q)| (*m, q.neg())).collect() }
    }

    pub fn mul(&self, o: &NumVal, tower: &Tower) -> NumVal {
        let mut acc = NumVal::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &o.terms {
                let common = m1 & m2;
                let xor = m1 ^ m2;
                let mut term = NumVal { terms: BTreeMap::from([(xor, q1.mul(q2))]) };
                let mut bits = common;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    term = term.mul(&tower.rads[j], tower);
                }
                acc = acc.add(&term);
            }
        }
        acc
    }

    pub fn inv(&self, tower: &Tower) -> Result<NumVal> {
        if self.is_zero() {
            return Err(Error::Evaluation("division by zero value".into()));
        }
        if self.terms.keys().all(|&m| m == 0) {
            let q = self.terms.get(&0).unwrap();
            return Ok(NumVal::from_qext(q.inv()?));
        }
        let j = self
            .terms
            .keys()
            .filter(|&&m| m != 0)
            .map(|m| 63 - m.leading_zeros())
            .max()
            .unwrap();
        let bit = 1u64 << j;
        let mut p = NumVal::zero();
        let mut q = NumVal::zero();
        for (m, c) in &self.terms {
            if m & bit != 0 {
                q.terms.insert(m & !bit, c.clone());
            } else {
                p.terms.insert(*m, c.clone());
            }
        }
        // 1/(P + Q u) = (P - Q u) / (P^2 - Q^2 u^2)
        let u = NumVal::radical(j as usize);
        let conj = p.sub(&q.mul(&u, tower));
        let denom = p.mul(&p, tower).sub(&q.mul(&q, tower).mul(&tower.rads[j as usize], tower));
        if denom.is_zero() {
            return Err(Error::Evaluation("radical denominator collapsed".into()));
        }
        let denom_inv = denom.inv(tower)?;
        Ok(conj.mul(&denom_inv, tower))
    }

    pub fn pow(&self, e: u32, tower: &Tower) -> NumVal {
        let mut out = NumVal::from_rational(BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base, tower);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, tower);
            }
        }
        out
    }
}

/// Evaluates scalars of one session at a fixed rational point, sharing a
/// radical tower so that values from different scalars stay comparable.
pub struct Evaluator {
    sess: Session,
    point: BTreeMap<VarId, BigRational>,
    pub tower: Tower,
    gen_cache: BTreeMap<VarId, NumVal>,
}

impl Evaluator {
    pub fn new(sess: &Session, point: BTreeMap<VarId, BigRational>) -> Evaluator {
        Evaluator { sess: sess.clone(), point, tower: Tower::default(), gen_cache: BTreeMap::new() }
    }

    pub fn eval(&mut self, s: &Scalar) -> Result<NumVal> {
        let num = self.eval_poly(s.num_poly())?;
        let den = self.eval_poly(s.den_poly())?;
        if den.is_zero() {
            return Err(Error::Evaluation("pole at sample point".into()));
        }
        let inv = den.inv(&self.tower)?;
        Ok(num.mul(&inv, &self.tower))
    }

    fn eval_poly(&mut self, p: &Poly) -> Result<NumVal> {
        let mut acc = NumVal::zero();
        for (m, c) in p.terms() {
            let mut t = NumVal::from_rational(c.clone());
            for &(id, e) in &m.0 {
                let v = self.var_value(VarId(id))?;
                t = t.mul(&v.pow(e, &self.tower), &self.tower);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn var_value(&mut self, v: VarId) -> Result<NumVal> {
        if let Some(q) = self.point.get(&v) {
            return Ok(NumVal::from_rational(q.clone()));
        }
        if v == VAR_I {
            return Ok(NumVal::from_qext(QExt::i()));
        }
        if v == VAR_R3 {
            return Ok(NumVal::from_qext(QExt::sqrt3()));
        }
        if let Some(cached) = self.gen_cache.get(&v) {
            return Ok(cached.clone());
        }
        if let Some((rw_num, rw_den)) = self.sess.rewrite(v) {
            let n = self.eval_poly(&rw_num)?;
            let d = self.eval_poly(&rw_den)?;
            if d.is_zero() {
                return Err(Error::Evaluation("pole in radicand".into()));
            }
            let radicand = n.mul(&d.inv(&self.tower)?, &self.tower);
            let root = self.tower.sqrt(&radicand)?;
            self.gen_cache.insert(v, root.clone());
            return Ok(root);
        }
        Err(Error::Evaluation(format!("unbound variable {}", self.sess.name(v))))
    }
}

/// One-shot evaluation of a scalar at a rational point.
pub fn eval_at(s: &Scalar, point: &BTreeMap<VarId, BigRational>) -> Result<NumVal> {
    Evaluator::new(s.session(), point.clone()).eval(s)
}
