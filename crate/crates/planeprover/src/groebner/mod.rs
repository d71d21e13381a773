//! Buchberger's algorithm and multivariate normal-form reduction under the
//! graded reverse lexicographic order.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{catch_resource, Error, Result};
use crate::kernel::{Budget, Monomial, Poly, VarId};

/// Graded reverse lexicographic order over an explicit variable sequence
/// (the first variable ranks highest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    vars: Vec<VarId>,
}

impl MonomialOrder {
    pub fn grevlex(vars: Vec<VarId>) -> MonomialOrder {
        MonomialOrder { vars }
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Compare two exponent vectors: higher total degree wins; on ties the
    /// last variable with differing exponents decides, smaller exponent
    /// winning.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Result<Ordering> {
        if a.len() != b.len() || a.len() != self.vars.len() {
            return Err(Error::Shape(format!(
                "exponent vectors of lengths {} and {} under an order on {} variables",
                a.len(),
                b.len(),
                self.vars.len()
            )));
        }
        Ok(cmp_exps(a, b))
    }
}

fn cmp_exps(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            return a[k].cmp(&b[k]).reverse();
        }
    }
    Ordering::Equal
}

fn exps_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exps_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn exps_sub(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exps_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Internal dense-exponent polynomial, terms sorted descending.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GPoly {
    terms: Vec<(Vec<u32>, BigRational)>,
}

impl GPoly {
    fn zero() -> GPoly {
        GPoly { terms: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> (&[u32], &BigRational) {
        let (m, c) = &self.terms[0];
        (m, c)
    }

    fn from_unsorted(mut terms: Vec<(Vec<u32>, BigRational)>) -> GPoly {
        terms.sort_by(|a, b| cmp_exps(&b.0, &a.0));
        let mut out: Vec<(Vec<u32>, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        GPoly { terms: out }
    }

    fn sub_scaled(&self, shift: &[u32], scale: &BigRational, other: &GPoly) -> GPoly {
        // self - scale * x^shift * other
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let mono: Vec<u32> = m.iter().zip(shift).map(|(a, b)| a + b).collect();
            terms.push((mono, -(c * scale)));
        }
        GPoly::from_unsorted(terms)
    }

    /// Remove rational content: make coefficients coprime integers with
    /// positive leading coefficient.
    fn primitive(&self) -> GPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            let g = den.gcd(c.denom());
            den = den / g * c.denom();
        }
        let scaled: Vec<BigInt> = self.terms.iter().map(|(_, c)| c.numer() * (&den / c.denom())).collect();
        let mut g = BigInt::zero();
        for n in &scaled {
            g = g.gcd(n);
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        if scaled[0].is_negative() {
            g = -g;
        }
        GPoly {
            terms: self
                .terms
                .iter()
                .zip(scaled)
                .map(|((m, _), n)| (m.clone(), BigRational::from_integer(n / &g)))
                .collect(),
        }
    }

    fn monic(&self) -> GPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.terms[0].1.clone();
        GPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &lc)).collect(),
        }
    }

    fn total_terms(&self) -> usize {
        self.terms.len()
    }
}

fn to_gpoly(p: &Poly, order: &MonomialOrder) -> Result<GPoly> {
    let index: std::collections::HashMap<VarId, usize> =
        order.vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; order.vars.len()];
        for &(id, e) in &m.0 {
            match index.get(&VarId(id)) {
                Some(&k) => exps[k] = e,
                None => {
                    return Err(Error::Shape(format!(
                        "polynomial mentions a variable outside the order (id {id})"
                    )))
                }
            }
        }
        terms.push((exps, c.clone()));
    }
    Ok(GPoly::from_unsorted(terms))
}

fn from_gpoly(p: &GPoly, order: &MonomialOrder) -> Poly {
    Poly::from_terms(p.terms.iter().map(|(exps, c)| {
        let pairs: Vec<(u32, u32)> = exps
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(k, &e)| (order.vars[k].0, e))
            .collect();
        let mut pairs = pairs;
        pairs.sort_by_key(|&(id, _)| id);
        (Monomial(pairs), c.clone())
    }))
}

/// A polynomial ideal presented by generators.
#[derive(Debug, Clone)]
pub struct PolyIdeal {
    pub generators: Vec<Poly>,
    pub order: MonomialOrder,
}

impl PolyIdeal {
    /// Zero generators are dropped; the rest are content-normalized.
    pub fn new(generators: Vec<Poly>, order: MonomialOrder) -> PolyIdeal {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.primitive_int().0)
            .collect();
        PolyIdeal { generators, order }
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    /// Reduced basis: monic, mutually reduced, sorted ascending by leading
    /// monomial.
    pub basis: Vec<Poly>,
    pub order: MonomialOrder,
}

/// The S-polynomial `lcm/LT(f) * f - lcm/LT(g) * g` (no normalization).
pub fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Result<Poly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Shape("s-polynomial of the zero polynomial".into()));
    }
    let fg = to_gpoly(f, order)?;
    let gg = to_gpoly(g, order)?;
    Ok(from_gpoly(&s_poly_internal(&fg, &gg), order))
}

fn s_poly_internal(f: &GPoly, g: &GPoly) -> GPoly {
    let (lmf, lcf) = f.leading();
    let (lmg, lcg) = g.leading();
    let lcm = exps_lcm(lmf, lmg);
    let sf = exps_sub(&lcm, lmf);
    let sg = exps_sub(&lcm, lmg);
    // f/LT(f) shifted minus g/LT(g) shifted
    let zero = GPoly::zero();
    let left = zero.sub_scaled(&sf, &(-(BigRational::one() / lcf)), f);
    left.sub_scaled(&sg, &(BigRational::one() / lcg), g)
}

/// Full reduction of `p` modulo `basis`: no term of the result is divisible
/// by any basis leading monomial.
fn reduce_full(p: &GPoly, basis: &[GPoly], budget: &Budget) -> GPoly {
    let mut work = p.clone();
    let mut out: Vec<(Vec<u32>, BigRational)> = Vec::new();
    let mut steps = 0usize;
    while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading();
            (m.to_vec(), c.clone())
        };
        let mut reduced = false;
        for g in basis {
            let (gm, gc) = g.leading();
            if exps_divides(gm, &lm) {
                let shift = exps_sub(&lm, gm);
                work = work.sub_scaled(&shift, &(&lc / gc), g);
                reduced = true;
                break;
            }
        }
        if !reduced {
            out.push((lm.clone(), lc.clone()));
            work.terms.remove(0);
        }
        steps += 1;
        if steps.is_multiple_of(32) {
            budget.check(work.total_terms() + out.len());
        }
    }
    GPoly::from_unsorted(out)
}

/// Reduced Gröbner basis by Buchberger's algorithm with normal pair
/// selection and the coprimality and chain criteria.
pub fn buchberger(ideal: &PolyIdeal, budget: &Budget) -> Result<GroebnerBasis> {
    let budget = *budget;
    let ideal = ideal.clone();
    catch_resource(move || buchberger_inner(&ideal, &budget))
}

fn buchberger_inner(ideal: &PolyIdeal, budget: &Budget) -> Result<GroebnerBasis> {
    let order = &ideal.order;
    let mut basis: Vec<GPoly> = Vec::new();
    for g in &ideal.generators {
        let gp = to_gpoly(g, order)?;
        if !gp.is_zero() {
            basis.push(gp.primitive());
        }
    }
    // Deterministic input order.
    basis.sort_by(|a, b| {
        cmp_exps(a.leading().0, b.leading().0).then_with(|| a.terms.cmp(&b.terms))
    });

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pending.push((j, i));
        }
    }

    while !pending.is_empty() {
        budget.check(basis.iter().map(|b| b.total_terms()).sum());
        // Normal selection: smallest lcm of leading monomials.
        let mut best = 0usize;
        let mut best_lcm = exps_lcm(basis[pending[0].0].leading().0, basis[pending[0].1].leading().0);
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = exps_lcm(basis[i].leading().0, basis[j].leading().0);
            if cmp_exps(&lcm, &best_lcm) == Ordering::Less {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pending.remove(best);
        let (lmi, lmj) = (basis[i].leading().0.to_vec(), basis[j].leading().0.to_vec());
        // First criterion: coprime leading monomials reduce to zero.
        if exps_coprime(&lmi, &lmj) {
            continue;
        }
        // Chain criterion: some k with lm(k) | lcm(i,j) and both pairs done.
        let lcm_ij = exps_lcm(&lmi, &lmj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && exps_divides(basis[k].leading().0, &lcm_ij)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly_internal(&basis[i], &basis[j]);
        let r = reduce_full(&s, &basis, budget);
        if !r.is_zero() {
            let r = r.primitive();
            for k in 0..basis.len() {
                pending.push((k, basis.len()));
            }
            basis.push(r);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && exps_divides(basis[j].leading().0, basis[i].leading().0)
                && (basis[j].leading().0 != basis[i].leading().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<GPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // Inter-reduce: reduce each fully against the others, then monicize.
    let mut reduced: Vec<GPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce_full(&minimal[i], &others, budget);
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|a, b| cmp_exps(a.leading().0, b.leading().0));
    Ok(GroebnerBasis {
        basis: reduced.iter().map(|g| from_gpoly(g, order)).collect(),
        order: order.clone(),
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Remainder of multivariate division of `p` by the basis.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis, budget: &Budget) -> Result<Poly> {
    let order = gb.order.clone();
    let gb_polys: Result<Vec<GPoly>> = gb.basis.iter().map(|g| to_gpoly(g, &order)).collect();
    let gb_polys = gb_polys?;
    let p = to_gpoly(p, &order)?;
    let budget = *budget;
    let r = catch_resource(move || Ok(reduce_full(&p, &gb_polys, &budget)))?;
    Ok(from_gpoly(&r, &order))
}
