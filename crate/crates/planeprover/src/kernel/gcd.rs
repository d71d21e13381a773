//! Multivariate polynomial GCD over the rationals.
//!
//! The heavy lifting happens modulo word-size primes: degrees of the gcd are
//! bounded per variable by univariate projections, the modular gcd is built
//! by dense interpolation (Brown's algorithm with imposed leading
//! coefficient), images are combined by CRT, and the lifted candidate is
//! certified by exact trial division.  Unlucky primes and evaluation points
//! only cost retries, never correctness.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::VarId;

// ---------------------------------------------------------------------------
// Deterministic RNG and Z/p arithmetic
// ---------------------------------------------------------------------------

pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a.wrapping_add(b);
    if s >= p || s < a {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// 62-bit primes used for modular images.
fn primes() -> &'static Vec<u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(128);
        let mut n: u64 = (1 << 62) + 1;
        while out.len() < 128 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n += 2;
        }
        out
    })
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64")
}

// ---------------------------------------------------------------------------
// Sparse polynomials over Z/p
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZpPoly {
    /// Terms sorted descending in the global order, coefficients in (0, p).
    terms: Vec<(Monomial, u64)>,
}

impl ZpPoly {
    fn zero() -> Self {
        ZpPoly { terms: Vec::new() }
    }

    fn constant(c: u64) -> Self {
        if c == 0 {
            ZpPoly::zero()
        } else {
            ZpPoly { terms: vec![(Monomial::one(), c)] }
        }
    }

    /// Reduce an integer-coefficient polynomial mod p.
    fn from_poly(p: &Poly, modulus: u64) -> ZpPoly {
        let terms: Vec<(Monomial, u64)> = p
            .terms()
            .filter_map(|(m, c)| {
                debug_assert!(c.denom().is_one());
                let r = bigint_mod(c.numer(), modulus);
                if r == 0 {
                    None
                } else {
                    Some((m.clone(), r))
                }
            })
            .collect();
        ZpPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1),
            _ => None,
        }
    }

    fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn degree_in(&self, v: VarId) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    fn vars(&self) -> Vec<VarId> {
        let mut ids: Vec<u32> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|&(id, _)| id))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(VarId).collect()
    }

    fn scale(&self, c: u64, p: u64) -> ZpPoly {
        if c == 0 {
            return ZpPoly::zero();
        }
        ZpPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), mul_mod(*k, c, p))).collect(),
        }
    }

    fn monic(&self, p: u64) -> ZpPoly {
        if self.is_zero() {
            return ZpPoly::zero();
        }
        self.scale(inv_mod(self.terms[0].1, p), p)
    }

    fn sub(&self, other: &ZpPoly, p: u64) -> ZpPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other.terms[j].0.clone(), sub_mod(0, other.terms[j].1, p)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = sub_mod(self.terms[i].1, other.terms[j].1, p);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for t in &other.terms[j..] {
            out.push((t.0.clone(), sub_mod(0, t.1, p)));
        }
        ZpPoly { terms: out }
    }

    fn mul(&self, other: &ZpPoly, p: u64) -> ZpPoly {
        if self.is_zero() || other.is_zero() {
            return ZpPoly::zero();
        }
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (tm, tc) in &other.terms {
                let key = m.mul(tm);
                let prod = mul_mod(*c, *tc, p);
                let e = acc.entry(key).or_insert(0);
                *e = add_mod(*e, prod, p);
            }
        }
        let mut out: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.reverse();
        ZpPoly { terms: out }
    }

    /// Multiply by `(z - a)`.
    fn mul_linear(&self, z: VarId, a: u64, p: u64) -> ZpPoly {
        let shifted = ZpPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(&Monomial::var(z)), *c)).collect(),
        };
        let mut shifted_sorted = shifted.terms;
        shifted_sorted.sort_by(|x, y| y.0.cmp(&x.0));
        let shifted = ZpPoly { terms: shifted_sorted };
        shifted.sub(&self.scale(a, p), p)
    }

    /// Substitute `v = a`.
    fn eval_var(&self, v: VarId, a: u64, p: u64) -> ZpPoly {
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let coeff = if e == 0 { *c } else { mul_mod(*c, pow_mod(a, e as u64, p), p) };
            if coeff == 0 {
                continue;
            }
            let key = m.div(&Monomial::var_pow(v, e)).unwrap();
            let entry = acc.entry(key).or_insert(0);
            *entry = add_mod(*entry, coeff, p);
        }
        let mut out: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.reverse();
        ZpPoly { terms: out }
    }

    /// Coefficient polynomials with respect to `v`, descending exponents.
    fn coeffs_in(&self, v: VarId) -> Vec<(u32, ZpPoly)> {
        let mut map: BTreeMap<u32, Vec<(Monomial, u64)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let reduced = m.div(&Monomial::var_pow(v, e)).unwrap();
            map.entry(e).or_default().push((reduced, *c));
        }
        map.into_iter()
            .rev()
            .map(|(e, mut ts)| {
                ts.sort_by(|x, y| y.0.cmp(&x.0));
                (e, ZpPoly { terms: ts })
            })
            .collect()
    }

    fn leading_coeff_in(&self, v: VarId) -> ZpPoly {
        let d = self.degree_in(v);
        let mut ts: Vec<(Monomial, u64)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(v) == d)
            .map(|(m, c)| (m.div(&Monomial::var_pow(v, d)).unwrap(), *c))
            .collect();
        ts.sort_by(|x, y| y.0.cmp(&x.0));
        ZpPoly { terms: ts }
    }

    fn monomial_content(&self) -> Monomial {
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

    fn divide_monomial(&self, m: &Monomial) -> ZpPoly {
        if m.is_one() {
            return self.clone();
        }
        ZpPoly {
            terms: self.terms.iter().map(|(tm, c)| (tm.div(m).unwrap(), *c)).collect(),
        }
    }

    fn mul_monomial(&self, m: &Monomial) -> ZpPoly {
        if m.is_one() {
            return self.clone();
        }
        let mut ts: Vec<(Monomial, u64)> =
            self.terms.iter().map(|(tm, c)| (tm.mul(m), *c)).collect();
        ts.sort_by(|x, y| y.0.cmp(&x.0));
        ZpPoly { terms: ts }
    }

    fn divide_exact(&self, divisor: &ZpPoly, p: u64) -> Option<ZpPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZpPoly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(inv_mod(c, p), p));
        }
        let dm = divisor.leading_monomial().clone();
        let dc_inv = inv_mod(divisor.terms[0].1, p);
        let mut rem: BTreeMap<Monomial, u64> =
            self.terms.iter().map(|(m, c)| (m.clone(), *c)).collect();
        let mut quot: Vec<(Monomial, u64)> = Vec::new();
        while let Some((m, _)) = rem.iter().next_back() {
            let m = m.clone();
            let c = rem.remove(&m).unwrap();
            let qm = m.div(&dm)?;
            let qc = mul_mod(c, dc_inv, p);
            for (tm, tc) in divisor.terms.iter().skip(1) {
                let key = qm.mul(tm);
                let delta = mul_mod(qc, *tc, p);
                let cur = rem.get(&key).copied().unwrap_or(0);
                let nv = sub_mod(cur, delta, p);
                if nv == 0 {
                    rem.remove(&key);
                } else {
                    rem.insert(key, nv);
                }
            }
            quot.push((qm, qc));
        }
        quot.sort_by(|x, y| y.0.cmp(&x.0));
        Some(ZpPoly { terms: quot })
    }

    /// Dense univariate coefficients (little-endian); the polynomial must
    /// involve no variable other than `v`.
    fn to_dense_univariate(&self, v: VarId) -> Vec<u64> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![0u64; d + 1];
        for (m, c) in &self.terms {
            debug_assert!(m.0.iter().all(|&(id, _)| id == v.0));
            out[m.exponent(v) as usize] = *c;
        }
        out
    }

    fn from_dense_univariate(v: VarId, coeffs: &[u64]) -> ZpPoly {
        let mut ts: Vec<(Monomial, u64)> = coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(e, &c)| (Monomial::var_pow(v, e as u32), c))
            .collect();
        ts.sort_by(|x, y| y.0.cmp(&x.0));
        ZpPoly { terms: ts }
    }
}

/// Monic univariate gcd in Z/p, dense little-endian representation.
fn gcd_univ(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let factor = mul_mod(*a.last().unwrap(), lb_inv, p);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(factor, bc, p);
                a[shift + i] = sub_mod(a[shift + i], t, p);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    if a.is_empty() {
        return a;
    }
    let inv = inv_mod(*a.last().unwrap(), p);
    for c in &mut a {
        *c = mul_mod(*c, inv, p);
    }
    a
}

// ---------------------------------------------------------------------------
// Brown's modular gcd
// ---------------------------------------------------------------------------

/// Rigorous per-variable degree bounds for the gcd: project to univariate
/// images that preserve the full degree of both inputs; the image gcd degree
/// then bounds the gcd degree from above.
fn degree_bounds(
    f: &ZpPoly,
    g: &ZpPoly,
    vars: &[VarId],
    p: u64,
    rng: &mut SplitMix64,
) -> Vec<(VarId, u32)> {
    let mut out = Vec::with_capacity(vars.len());
    for &v in vars {
        let df = f.degree_in(v);
        let dg = g.degree_in(v);
        let cap = df.min(dg);
        if cap == 0 {
            out.push((v, 0));
            continue;
        }
        let mut bound = cap;
        let others: Vec<VarId> = vars.iter().copied().filter(|&w| w != v).collect();
        'round: for _ in 0..2 {
            for _attempt in 0..8 {
                let mut fi = f.clone();
                let mut gi = g.clone();
                for &w in &others {
                    let a = 1 + rng.below(p - 1);
                    fi = fi.eval_var(w, a, p);
                    gi = gi.eval_var(w, a, p);
                }
                if fi.degree_in(v) != df || gi.degree_in(v) != dg {
                    continue;
                }
                let h = gcd_univ(&fi.to_dense_univariate(v), &gi.to_dense_univariate(v), p);
                let d = if h.is_empty() { 0 } else { (h.len() - 1) as u32 };
                bound = bound.min(d);
                continue 'round;
            }
            // Leading coefficient kept vanishing; keep the degree cap.
            break;
        }
        out.push((v, bound));
    }
    out
}

/// Nested dense interpolation with imposed leading coefficient `gamma`.
#[allow(clippy::too_many_arguments)]
fn interpolate(
    f: &ZpPoly,
    g: &ZpPoly,
    gamma: &ZpPoly,
    main: VarId,
    eval_vars: &[VarId],
    bounds: &BTreeMap<u32, u32>,
    p: u64,
    rng: &mut SplitMix64,
    depth: u32,
) -> Option<ZpPoly> {
    if depth > 64 {
        return None;
    }
    if eval_vars.is_empty() {
        let gam = gamma.as_constant()?;
        if gam == 0 {
            return None;
        }
        let h = gcd_univ(&f.to_dense_univariate(main), &g.to_dense_univariate(main), p);
        if h.is_empty() {
            return None;
        }
        return Some(ZpPoly::from_dense_univariate(main, &h).scale(gam, p));
    }
    let z = *eval_vars.last().unwrap();
    let rest = &eval_vars[..eval_vars.len() - 1];
    let dz = bounds
        .get(&z.0)
        .copied()
        .unwrap_or_else(|| f.degree_in(z).min(g.degree_in(z)));
    let needed = (dz + gamma.degree_in(z) + 1) as usize;

    let df_main = f.degree_in(main);
    let dg_main = g.degree_in(main);

    let mut xs: Vec<u64> = Vec::new();
    let mut cs: Vec<ZpPoly> = Vec::new();
    let mut best_lm: Option<Monomial> = None;
    let mut attempts = 0usize;
    while xs.len() < needed {
        attempts += 1;
        if attempts > 16 * needed + 32 {
            return None;
        }
        let a = rng.below(p);
        if xs.contains(&a) {
            continue;
        }
        let fa = f.eval_var(z, a, p);
        let ga = g.eval_var(z, a, p);
        if fa.degree_in(main) != df_main || ga.degree_in(main) != dg_main {
            continue;
        }
        let gamma_a = gamma.eval_var(z, a, p);
        if gamma_a.is_zero() {
            continue;
        }
        let img = match interpolate(&fa, &ga, &gamma_a, main, rest, bounds, p, rng, depth + 1) {
            Some(i) => i,
            None => continue,
        };
        if img.is_zero() {
            continue;
        }
        let lm = img.leading_monomial().clone();
        match &best_lm {
            None => best_lm = Some(lm),
            Some(cur) => match lm.cmp(cur) {
                Ordering::Greater => continue, // unlucky point
                Ordering::Less => {
                    // previous points were unlucky
                    xs.clear();
                    cs.clear();
                    best_lm = Some(lm);
                }
                Ordering::Equal => {}
            },
        }
        // Newton divided differences with polynomial values.
        let mut t = img;
        for (k, c) in cs.iter().enumerate() {
            let denom = sub_mod(a, xs[k], p);
            t = t.sub(c, p).scale(inv_mod(denom, p), p);
        }
        cs.push(t);
        xs.push(a);
    }
    // Assemble via Horner: H = c_{n-1}; H = H*(z - x_k) + c_k.
    let mut h = cs.pop().unwrap();
    while let Some(c) = cs.pop() {
        let xk = xs[cs.len()];
        h = h.mul_linear(z, xk, p);
        h = h.sub(&c.scale(sub_mod(0, 1, p), p), p);
    }
    Some(h)
}

/// Fold gcd over a list of polynomials, with early exit at a constant.
fn gcd_fold_zp(polys: &[ZpPoly], p: u64, rng: &mut SplitMix64, depth: u32) -> Option<ZpPoly> {
    let mut acc: Option<ZpPoly> = None;
    for q in polys {
        if q.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => q.monic(p),
            Some(a) => {
                if a.as_constant().is_some() {
                    return Some(ZpPoly::constant(1));
                }
                brown_zp(&a, q, p, rng, depth + 1)?
            }
        });
    }
    Some(acc.unwrap_or_else(|| ZpPoly::constant(1)))
}

/// Monic gcd in Z/p[vars] by content splitting and dense interpolation.
fn brown_zp(f: &ZpPoly, g: &ZpPoly, p: u64, rng: &mut SplitMix64, depth: u32) -> Option<ZpPoly> {
    if depth > 48 {
        return None;
    }
    if f.is_zero() {
        return Some(g.monic(p));
    }
    if g.is_zero() {
        return Some(f.monic(p));
    }
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let common_m = mf.gcd(&mg);
    let f = f.divide_monomial(&mf);
    let g = g.divide_monomial(&mg);
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return Some(ZpPoly::constant(1).mul_monomial(&common_m));
    }
    if f == g {
        return Some(f.monic(p).mul_monomial(&common_m));
    }

    let mut vars = f.vars();
    for v in g.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_by_key(|v| v.0);

    // Univariate case: direct Euclid.
    if vars.len() == 1 {
        let v = vars[0];
        let h = gcd_univ(&f.to_dense_univariate(v), &g.to_dense_univariate(v), p);
        if h.is_empty() {
            return None;
        }
        return Some(ZpPoly::from_dense_univariate(v, &h).mul_monomial(&common_m));
    }

    let bounds_list = degree_bounds(&f, &g, &vars, p, rng);
    let bounds: BTreeMap<u32, u32> = bounds_list.iter().map(|&(v, d)| (v.0, d)).collect();
    if bounds_list.iter().all(|&(_, d)| d == 0) {
        return Some(ZpPoly::constant(1).mul_monomial(&common_m));
    }

    // Main variable: largest gcd degree bound.
    let (main, _) = *bounds_list.iter().max_by_key(|&&(_, d)| d).unwrap();

    // Split off the content with respect to the main variable.
    let f_coeffs: Vec<ZpPoly> = f.coeffs_in(main).into_iter().map(|(_, c)| c).collect();
    let g_coeffs: Vec<ZpPoly> = g.coeffs_in(main).into_iter().map(|(_, c)| c).collect();
    let cont_f = gcd_fold_zp(&f_coeffs, p, rng, depth)?;
    let cont_g = gcd_fold_zp(&g_coeffs, p, rng, depth)?;
    let fp = f.divide_exact(&cont_f, p)?;
    let gp = g.divide_exact(&cont_g, p)?;
    let cont_gcd = brown_zp(&cont_f, &cont_g, p, rng, depth + 1)?;

    let gamma = brown_zp(&fp.leading_coeff_in(main), &gp.leading_coeff_in(main), p, rng, depth + 1)?;

    let mut eval_vars: Vec<VarId> = vars.iter().copied().filter(|&v| v != main).collect();
    for v in gamma.vars() {
        if v != main && !eval_vars.contains(&v) {
            eval_vars.push(v);
        }
    }
    eval_vars.sort_by_key(|v| v.0);

    for _attempt in 0..4 {
        let cand = match interpolate(&fp, &gp, &gamma, main, &eval_vars, &bounds, p, rng, depth) {
            Some(c) => c,
            None => continue,
        };
        if cand.is_zero() {
            continue;
        }
        // Strip the content in the main variable introduced by the gamma
        // imposition, then verify by division.
        let cand_coeffs: Vec<ZpPoly> = cand.coeffs_in(main).into_iter().map(|(_, c)| c).collect();
        let cand_cont = match gcd_fold_zp(&cand_coeffs, p, rng, depth) {
            Some(c) => c,
            None => continue,
        };
        let h = match cand.divide_exact(&cand_cont, p) {
            Some(h) => h,
            None => continue,
        };
        if fp.divide_exact(&h, p).is_some() && gp.divide_exact(&h, p).is_some() {
            let result = h.mul(&cont_gcd, p).monic(p).mul_monomial(&common_m);
            return Some(result);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Rational-level gcd with CRT lifting
// ---------------------------------------------------------------------------

fn crt_combine(r1: &BigInt, m1: &BigInt, r2: u64, p: u64) -> BigInt {
    // x = r1 mod m1, x = r2 mod p
    let pb = BigInt::from(p);
    let m1_inv = mod_inverse_big(m1, &pb);
    let diff = (BigInt::from(r2) - r1).mod_floor(&pb);
    r1 + m1 * ((diff * m1_inv).mod_floor(&pb))
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn symmetric(r: &BigInt, m: &BigInt) -> BigInt {
    if r * 2 > *m {
        r - m
    } else {
        r.clone()
    }
}

/// Greatest common divisor of two rational-coefficient polynomials, returned
/// as a primitive integer polynomial with positive leading coefficient.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_int().0;
    }
    if b.is_zero() {
        return a.primitive_int().0;
    }
    let (ap, _) = a.primitive_int();
    let (bp, _) = b.primitive_int();

    let ma = ap.monomial_content();
    let mb = bp.monomial_content();
    let common = ma.gcd(&mb);
    let ac = ap.divide_monomial(&ma);
    let bc = bp.divide_monomial(&mb);
    let one = BigRational::one();

    if ac.as_constant().is_some() || bc.as_constant().is_some() {
        return Poly::term(common, one);
    }
    if ac == bc {
        return ac.mul_term(&common, &one);
    }

    let lc_a = ac.leading().unwrap().1.numer().clone();
    let lc_b = bc.leading().unwrap().1.numer().clone();
    let lambda = lc_a.gcd(&lc_b);

    let mut rng = SplitMix64(
        0x9E37_79B9_7F4A_7C15 ^ ((ac.num_terms() as u64) << 32) ^ bc.num_terms() as u64,
    );

    type CrtState = (Vec<(Monomial, BigInt)>, BigInt, Monomial);
    let mut acc: Option<CrtState> = None;
    let mut prev: Option<Poly> = None;

    for &p in primes().iter() {
        if lambda.mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        let azp = ZpPoly::from_poly(&ac, p);
        let bzp = ZpPoly::from_poly(&bc, p);
        if azp.is_zero()
            || bzp.is_zero()
            || azp.leading_monomial() != ac.leading().unwrap().0
            || bzp.leading_monomial() != bc.leading().unwrap().0
        {
            continue;
        }
        let gz = match brown_zp(&azp, &bzp, p, &mut rng, 0) {
            Some(g) => g,
            None => continue,
        };
        if gz.as_constant().is_some() {
            // A unit gcd mod a prime preserving both leading monomials means
            // the true gcd is a unit; re-certify with the rigorous probe.
            if certified_coprime(&ac, &bc) {
                return Poly::term(common, one);
            }
            continue;
        }
        let scaled = gz.monic(p).scale(bigint_mod(&lambda, p), p);
        let lm = scaled.leading_monomial().clone();
        match &mut acc {
            Some((residues, modulus, best_lm)) => {
                match lm.cmp(best_lm) {
                    Ordering::Greater => continue, // unlucky prime
                    Ordering::Less => {
                        acc = Some((
                            scaled.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect(),
                            BigInt::from(p),
                            lm,
                        ));
                        prev = None;
                        continue;
                    }
                    Ordering::Equal => {}
                }
                // CRT merge over the union of supports.
                let mut merged: Vec<(Monomial, BigInt)> = Vec::new();
                let mut i = 0;
                let mut j = 0;
                while i < residues.len() || j < scaled.terms.len() {
                    let ord = if i >= residues.len() {
                        Ordering::Less
                    } else if j >= scaled.terms.len() {
                        Ordering::Greater
                    } else {
                        residues[i].0.cmp(&scaled.terms[j].0)
                    };
                    match ord {
                        Ordering::Greater => {
                            merged.push((
                                residues[i].0.clone(),
                                crt_combine(&residues[i].1, modulus, 0, p),
                            ));
                            i += 1;
                        }
                        Ordering::Less => {
                            merged.push((
                                scaled.terms[j].0.clone(),
                                crt_combine(&BigInt::zero(), modulus, scaled.terms[j].1, p),
                            ));
                            j += 1;
                        }
                        Ordering::Equal => {
                            merged.push((
                                residues[i].0.clone(),
                                crt_combine(&residues[i].1, modulus, scaled.terms[j].1, p),
                            ));
                            i += 1;
                            j += 1;
                        }
                    }
                }
                *residues = merged;
                *modulus *= BigInt::from(p);
            }
            None => {
                acc = Some((
                    scaled.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect(),
                    BigInt::from(p),
                    lm,
                ));
            }
        }
        let (residues, modulus, _) = acc.as_ref().unwrap();
        let lifted = Poly::from_terms(residues.iter().map(|(m, r)| {
            (m.clone(), BigRational::from_integer(symmetric(r, modulus)))
        }));
        let (candidate, _) = lifted.primitive_int();
        if prev.as_ref() == Some(&candidate) {
            if let (Some(q1), Some(q2)) =
                (ac.divide_exact(&candidate), bc.divide_exact(&candidate))
            {
                // `candidate` is a certified common divisor.  It is the full
                // gcd exactly when the cofactors are coprime.
                if certified_coprime(&q1, &q2) {
                    return candidate.mul_term(&common, &one);
                }
            }
            // Stabilized on a wrong image; start over with fresh primes.
            acc = None;
            prev = None;
            continue;
        }
        prev = Some(candidate);
    }
    // 128 62-bit primes failed: statistically impossible unless the inputs
    // are adversarial beyond the guardrails.
    panic!("modular gcd failed to stabilize");
}

/// Rigorous coprimality certificate.  A `true` answer is exact: it is
/// produced only from a prime preserving both leading monomials together
/// with degree-preserving univariate projections, which bound the gcd degree
/// in every variable by zero.  `false` only means "not certified".
pub fn certified_coprime(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let (ap, _) = a.primitive_int();
    let (bp, _) = b.primitive_int();
    if !ap.monomial_content().gcd(&bp.monomial_content()).is_one() {
        return false;
    }
    if ap.as_constant().is_some() || bp.as_constant().is_some() {
        return true;
    }
    let mut rng = SplitMix64(0xD1B5_4A32_D192_ED03 ^ ap.num_terms() as u64);
    for &p in primes().iter().take(4) {
        let azp = ZpPoly::from_poly(&ap, p);
        let bzp = ZpPoly::from_poly(&bp, p);
        if azp.is_zero()
            || bzp.is_zero()
            || azp.leading_monomial() != ap.leading().unwrap().0
            || bzp.leading_monomial() != bp.leading().unwrap().0
        {
            continue;
        }
        let mut vars = azp.vars();
        for v in bzp.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let bounds = degree_bounds(&azp, &bzp, &vars, p, &mut rng);
        return bounds.iter().all(|&(_, d)| d == 0);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Poly {
        Poly::var(VarId(i))
    }
    fn b() -> super::super::poly::Budget {
        super::super::poly::Budget::UNLIMITED
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime_u64(4611686018427388039));
        assert!(!is_prime_u64(4611686018427388038));
        for &p in primes().iter().take(8) {
            assert!(is_prime_u64(p));
            assert!(p > 1 << 62);
        }
    }

    #[test]
    fn univariate_gcd() {
        // (x+1)(x-1) vs (x-1)(x-2)
        let x = v(0);
        let a = x.add(&Poly::one()).mul(&x.sub(&Poly::one()), &b());
        let c = x.sub(&Poly::one()).mul(&x.sub(&Poly::from_int(2)), &b());
        assert_eq!(poly_gcd(&a, &c), x.sub(&Poly::one()));
    }

    #[test]
    fn multivariate_gcd() {
        // (x+y)^2 (x-y) vs (x+y)(x^2 + y)
        let x = v(0);
        let y = v(1);
        let s = x.add(&y);
        let a = s.pow(2, &b()).mul(&x.sub(&y), &b());
        let c = s.mul(&x.mul(&x, &b()).add(&y), &b());
        assert_eq!(poly_gcd(&a, &c), s);
        assert!(certified_coprime(&x.sub(&y), &x.add(&y)));
        assert!(!certified_coprime(&a, &c));
    }

    #[test]
    fn gcd_with_content() {
        // z*(x+y) vs z^2*(x-y): gcd z (content in the eliminated variable)
        let x = v(0);
        let y = v(1);
        let z = v(2);
        let a = z.mul(&x.add(&y), &b());
        let c = z.pow(2, &b()).mul(&x.sub(&y), &b());
        assert_eq!(poly_gcd(&a, &c), z);
    }

    #[test]
    fn trivariate_gcd() {
        let x = v(0);
        let y = v(1);
        let z = v(2);
        let g = x.mul(&y, &b()).add(&z.pow(2, &b())).add(&Poly::one());
        let a = g.mul(&x.add(&z), &b());
        let c = g.mul(&y.sub(&z.mul(&x, &b())), &b());
        assert_eq!(poly_gcd(&a, &c), g);
    }
}
