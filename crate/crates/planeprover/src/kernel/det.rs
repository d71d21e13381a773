//! Exact determinants by the Bareiss fraction-free scheme.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

use super::gcd::poly_gcd;
use super::poly::Poly;
use super::{Scalar, Session};

/// Determinant of a square matrix of scalars.  Rational-function entries are
/// allowed; rows are cleared to polynomials first and the scale divided back
/// out at the end.
pub fn determinant(sess: &Session, matrix: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                n,
                row.len()
            )));
        }
    }
    if n == 0 {
        return Ok(sess.one());
    }
    let budget = sess.budget();

    // Clear each row to polynomial entries; track the denominator product.
    let mut scale = sess.one();
    let mut m: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for row in matrix {
        let mut lcm = Poly::one();
        for entry in row {
            let den = entry.den_poly();
            if !den.is_one() {
                let g = poly_gcd(&lcm, den);
                let quot = den.divide_exact(&g).expect("gcd divides");
                lcm = lcm.mul(&quot, &budget);
            }
        }
        if !lcm.is_one() {
            scale = &scale * &sess.poly_scalar(lcm.clone());
        }
        let cleared: Result<Vec<Poly>> = row
            .iter()
            .map(|e| {
                let factor = lcm.divide_exact(e.den_poly()).expect("lcm clears denominator");
                Ok(e.num_poly().mul(&factor, &budget))
            })
            .collect();
        m.push(cleared?);
    }

    // Bareiss elimination.
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return scaled_det(sess, Poly::zero(), &scale, sign),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j]
                    .mul(&m[k][k], &budget)
                    .sub(&m[i][k].mul(&m[k][j], &budget));
                m[i][j] = t
                    .divide_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    scaled_det(sess, det, &scale, sign)
}

fn scaled_det(sess: &Session, det: Poly, scale: &Scalar, sign: bool) -> Result<Scalar> {
    let det = sess.poly_scalar(if sign { det.neg() } else { det });
    det.div(scale)
}

/// Cofactor-expansion determinant; the independent oracle used by tests.
pub fn determinant_cofactor(sess: &Session, matrix: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::Shape("cofactor determinant of non-square matrix".into()));
        }
    }
    if n == 0 {
        return Ok(sess.one());
    }
    if n == 1 {
        return Ok(matrix[0][0].clone());
    }
    let mut acc = sess.zero();
    let mut sign = BigRational::one();
    for j in 0..n {
        let minor: Vec<Vec<Scalar>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sub = determinant_cofactor(sess, &minor)?;
        let term = &(&matrix[0][j] * &sub) * &sess.rational(sign.clone());
        acc = &acc + &term;
        sign = -sign;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident(s: &Session, n: usize) -> Vec<Vec<Scalar>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { s.one() } else { s.zero() }).collect())
            .collect()
    }

    #[test]
    fn identity_and_swap() {
        let s = Session::new();
        assert_eq!(determinant(&s, &ident(&s, 5)).unwrap(), s.one());
        let m = vec![vec![s.int(0), s.int(1)], vec![s.int(1), s.int(0)]];
        assert_eq!(determinant(&s, &m).unwrap(), s.int(-1));
    }

    #[test]
    fn rational_entries() {
        let s = Session::new();
        let m = vec![
            vec![s.rat(1, 2), s.rat(1, 3)],
            vec![s.rat(1, 5), s.rat(1, 7)],
        ];
        // 1/14 - 1/15 = 1/210
        assert_eq!(determinant(&s, &m).unwrap(), s.rat(1, 210));
    }

    #[test]
    fn non_square_rejected() {
        let s = Session::new();
        let m = vec![vec![s.one(), s.one()], vec![s.one()]];
        assert!(matches!(determinant(&s, &m), Err(Error::Shape(_))));
    }
}
