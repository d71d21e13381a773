//! Exact multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted in descending global order with no zero
//! coefficients, so equality is structural.

use std::collections::BTreeMap;
use std::panic::panic_any;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ResourceAbort;

use super::monomial::Monomial;
use super::VarId;

/// Soft limits threaded through the heavy polynomial operations.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_terms: usize,
    pub deadline: Option<std::time::Instant>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_terms: usize::MAX, deadline: None };

    pub fn check(&self, terms: usize) {
        if terms > self.max_terms {
            panic_any(ResourceAbort(format!(
                "term count {terms} exceeds limit {}",
                self.max_terms
            )));
        }
        if let Some(d) = self.deadline {
            if std::time::Instant::now() > d {
                panic_any(ResourceAbort("wall-clock budget exhausted".into()));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    /// `(monomial, coefficient)` sorted descending in the global order.
    pub(crate) terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: VarId) -> Self {
        Poly { terms: vec![(Monomial::var(v), BigRational::one())] }
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub(crate) fn from_sorted(terms: Vec<(Monomial, BigRational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    /// Build from an arbitrary term list, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        }
        let mut out: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.reverse();
        Poly::from_sorted(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Leading term under the global order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    /// Sorted list of variables that occur with positive exponent.
    pub fn vars(&self) -> Vec<VarId> {
        let mut ids: Vec<u32> = self.terms.iter().flat_map(|(m, _)| m.0.iter().map(|&(id, _)| id)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(VarId).collect()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly::from_sorted(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, budget: &Budget) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (i, (m, c)) in small.terms.iter().enumerate() {
            for (tm, tc) in &large.terms {
                let key = m.mul(tm);
                let prod = c * tc;
                match acc.get_mut(&key) {
                    Some(v) => {
                        *v += prod;
                        if v.is_zero() {
                            acc.remove(&key);
                        }
                    }
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
            if i % 8 == 0 {
                budget.check(acc.len());
            }
        }
        budget.check(acc.len());
        let mut out: Vec<_> = acc.into_iter().collect();
        out.reverse();
        Poly::from_sorted(out)
    }

    pub fn pow(&self, e: u32, budget: &Budget) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, budget);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, budget);
            }
        }
        result
    }

    /// Coefficient of `v^k`, a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: VarId, k: u32) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                let reduced = m.div(&Monomial::var_pow(v, k)).unwrap();
                terms.push((reduced, c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// View as univariate in `v`: list of `(exponent, coefficient poly)`,
    /// descending in the exponent.
    pub fn coeffs_in(&self, v: VarId) -> Vec<(u32, Poly)> {
        let mut map: BTreeMap<u32, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let reduced = m.div(&Monomial::var_pow(v, e)).unwrap();
            map.entry(e).or_default().push((reduced, c.clone()));
        }
        map.into_iter()
            .rev()
            .map(|(e, ts)| (e, Poly::from_terms(ts)))
            .collect()
    }

    /// Formal derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let reduced = m.div(&Monomial::var(v)).unwrap();
                terms.push((reduced, c * BigRational::from_integer(BigInt::from(e))));
            }
        }
        Poly::from_terms(terms)
    }

    /// Exact multivariate division; `None` when the remainder is nonzero.
    pub fn divide_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem: BTreeMap<Monomial, BigRational> =
            self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((m, _)) = rem.iter().next_back() {
            let m = m.clone();
            let c = rem.remove(&m).unwrap();
            let qm = m.div(dm)?;
            let qc = &c / dc;
            // Subtract qc*qm*divisor from the remainder (leading term cancels).
            for (tm, tc) in divisor.terms.iter().skip(1) {
                let key = qm.mul(tm);
                let delta = &qc * tc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        quot.sort_by(|a, b| b.0.cmp(&a.0));
        Some(Poly::from_sorted(quot))
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(),
        };
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Divide out a monomial that divides every term.
    pub fn divide_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly::from_sorted(
            self.terms
                .iter()
                .map(|(tm, c)| (tm.div(m).expect("monomial divides all terms"), c.clone()))
                .collect(),
        )
    }

    /// Clear rational denominators and the integer content: returns
    /// `(primitive integer polynomial, unit)` with `self = unit * primitive`
    /// and the primitive part having positive leading coefficient.
    pub fn primitive_int(&self) -> (Poly, BigRational) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Poly::zero(), BigRational::one());
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            let g = den.gcd(c.denom());
            den = den / g * c.denom();
        }
        let mut num_gcd = BigInt::zero();
        let scaled: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&den / c.denom()))
            .collect();
        for n in &scaled {
            num_gcd = num_gcd.gcd(n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        let lead_negative = scaled.first().map(|n| n.is_negative()).unwrap_or(false);
        if lead_negative {
            num_gcd = -num_gcd;
        }
        let prim = Poly::from_sorted(
            self.terms
                .iter()
                .zip(scaled.iter())
                .map(|((m, _), n)| (m.clone(), BigRational::from_integer(n / &num_gcd)))
                .collect(),
        );
        (prim, BigRational::new(num_gcd, den))
    }

    /// Scale so the leading coefficient is one; returns the old leading
    /// coefficient.  Panics on the zero polynomial.
    pub fn monic(&self) -> (Poly, BigRational) {
        let lc = self.leading().expect("monic of zero polynomial").1.clone();
        (self.scale(&(BigRational::one() / &lc)), lc)
    }

    /// Substitute exact rational values for every variable.
    pub fn eval_rational(&self, values: &dyn Fn(VarId) -> Option<BigRational>) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(id, e) in &m.0 {
                let v = values(VarId(id))?;
                let mut p = BigRational::one();
                let mut base = v;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        p *= &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                t *= p;
            }
            acc += t;
        }
        Some(acc)
    }

    /// Maximum exponent over the given variables.
    pub fn max_exponent_over(&self, vars: &dyn Fn(VarId) -> bool) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.0.iter())
            .filter(|&&(id, _)| vars(VarId(id)))
            .map(|&(_, e)| e)
            .max()
            .unwrap_or(0)
    }
}
