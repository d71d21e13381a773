//! Sparse monomials over session variables, ordered by a global
//! graded-reverse-lexicographic term order.

use std::cmp::Ordering;

use super::VarId;

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// ascending variable id with all exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v.0, 1)])
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v.0, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        match self.0.binary_search_by_key(&v.0, |&(id, _)| id) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|&(id, _)| VarId(id))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Componentwise quotient, `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(id, e) in &other.0 {
            while i < self.0.len() && self.0[i].0 < id {
                out.push(self.0[i]);
                i += 1;
            }
            if i >= self.0.len() || self.0[i].0 != id || self.0[i].1 < e {
                return None;
            }
            if self.0[i].1 > e {
                out.push((id, self.0[i].1 - e));
            }
            i += 1;
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }

    /// Componentwise minimum (the gcd of two power products).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    /// Componentwise maximum (the lcm of two power products).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1.max(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }
}

/// Global term order: graded reverse lexicographic over ascending variable
/// ids, earlier ids ranking higher.  Total degree decides first; on ties the
/// last variable (largest id) with differing exponents decides, the smaller
/// exponent winning.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Walk both exponent lists from the largest variable id downwards.
    let (mut i, mut j) = (a.0.len(), b.0.len());
    while i > 0 || j > 0 {
        let ida = if i > 0 { Some(a.0[i - 1].0) } else { None };
        let idb = if j > 0 { Some(b.0[j - 1].0) } else { None };
        match (ida, idb) {
            (Some(va), Some(vb)) => {
                if va > vb {
                    // `a` has a positive exponent on a later variable.
                    return Ordering::Less;
                } else if vb > va {
                    return Ordering::Greater;
                } else {
                    let (ea, eb) = (a.0[i - 1].1, b.0[j - 1].1);
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                    i -= 1;
                    j -= 1;
                }
            }
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (None, None) => unreachable!(),
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial(pairs.to_vec())
    }

    #[test]
    fn grevlex_degree_dominates() {
        // x^3 > x*y because 3 > 2
        assert_eq!(grevlex(&m(&[(0, 3)]), &m(&[(0, 1), (1, 1)])), Ordering::Greater);
    }

    #[test]
    fn grevlex_tie_break() {
        // On (x, y, z) = ids (0, 1, 2): x*z < y^2.
        assert_eq!(grevlex(&m(&[(0, 1), (2, 1)]), &m(&[(1, 2)])), Ordering::Less);
        assert_eq!(grevlex(&m(&[(0, 1)]), &m(&[(0, 1)])), Ordering::Equal);
        // x > y under the global order.
        assert_eq!(grevlex(&m(&[(0, 1)]), &m(&[(1, 1)])), Ordering::Greater);
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = m(&[(0, 2), (3, 1)]);
        let b = m(&[(0, 1), (1, 4)]);
        let p = a.mul(&b);
        assert_eq!(p, m(&[(0, 3), (1, 4), (3, 1)]));
        assert_eq!(p.div(&b).unwrap(), a);
        assert_eq!(p.div(&m(&[(2, 1)])), None);
        assert_eq!(a.gcd(&b), m(&[(0, 1)]));
        assert_eq!(a.lcm(&b), m(&[(0, 2), (1, 4), (3, 1)]));
    }
}
