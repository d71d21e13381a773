//! Gaussian elimination over the rational-function field.  Pivots follow
//! generic semantics: an entry is usable iff it is not identically zero.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{Scalar, Session, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Underdetermined,
    Inconsistent,
}

#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub status: SolveStatus,
    /// Pivot unknowns expressed in the remaining parameters (and, when the
    /// system is underdetermined, the free unknowns).  Empty for
    /// inconsistent systems.
    pub bindings: BTreeMap<VarId, Scalar>,
}

/// Solve equations whose numerators are linear in `unknowns`, over the
/// rational functions in all remaining variables.
pub fn solve_linear(sess: &Session, eqs: &[Scalar], unknowns: &[VarId]) -> Result<LinearSolution> {
    let n = unknowns.len();
    // Rows: coefficients for each unknown plus the constant term.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for eq in eqs {
        let num = eq.num_poly();
        for (m, _) in num.terms() {
            let deg: u32 = unknowns.iter().map(|&u| m.exponent(u)).sum();
            if deg > 1 {
                return Err(Error::NonlinearSystem);
            }
        }
        let mut row: Vec<Scalar> = Vec::with_capacity(n + 1);
        let mut constant = num.clone();
        for &u in unknowns {
            let c = num.coeff_of(u, 1);
            for &v in unknowns {
                if c.contains_var(v) {
                    return Err(Error::NonlinearSystem);
                }
            }
            constant = constant.sub(&c.mul(&super::Poly::var(u), &sess.budget()));
            row.push(sess.poly_scalar(c));
        }
        row.push(sess.poly_scalar(constant));
        rows.push(row);
    }

    // Gauss-Jordan with generic pivoting, smallest pivot first.
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut next_row = 0usize;
    for col in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate().skip(next_row) {
            if !row[col].is_zero() {
                let size = row[col].num_terms();
                if best.map(|(_, s)| size < s).unwrap_or(true) {
                    best = Some((r, size));
                }
            }
        }
        let Some((r, _)) = best else { continue };
        rows.swap(next_row, r);
        let pivot_row = rows[next_row].clone();
        let pivot = pivot_row[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].div(&pivot)?;
            for j in 0..=n {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }

    // Inconsistency: a row 0 = nonzero.
    for row in &rows {
        if row[..n].iter().all(|c| c.is_zero()) && !row[n].is_zero() {
            return Ok(LinearSolution { status: SolveStatus::Inconsistent, bindings: BTreeMap::new() });
        }
    }

    let mut bindings = BTreeMap::new();
    for (col, &pr) in pivot_of_col.iter().enumerate() {
        let Some(r) = pr else { continue };
        let row = &rows[r];
        // pivot*u + sum(free coeff * free unknown) + const = 0
        let mut rhs = -&row[n];
        for (j, &u) in unknowns.iter().enumerate() {
            if j != col && !row[j].is_zero() {
                rhs = &rhs - &(&row[j] * &sess.var_scalar(u));
            }
        }
        bindings.insert(unknowns[col], rhs.div(&row[col])?);
    }
    let status = if bindings.len() == n {
        SolveStatus::Unique
    } else {
        SolveStatus::Underdetermined
    };
    Ok(LinearSolution { status, bindings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{VAR_X, VAR_Y};

    #[test]
    fn unique_solution() {
        let s = Session::new();
        let (x, y) = (s.x(), s.y());
        // x + y - 1 = 0, x - y = 0
        let sol = solve_linear(
            &s,
            &[&(&x + &y) - &s.one(), &x - &y],
            &[VAR_X, VAR_Y],
        )
        .unwrap();
        assert_eq!(sol.status, SolveStatus::Unique);
        assert_eq!(sol.bindings[&VAR_X], s.rat(1, 2));
        assert_eq!(sol.bindings[&VAR_Y], s.rat(1, 2));
    }

    #[test]
    fn inconsistent_system() {
        let s = Session::new();
        let x = s.x();
        let sol = solve_linear(&s, &[x.clone(), &x - &s.one()], &[VAR_X, VAR_Y]).unwrap();
        assert_eq!(sol.status, SolveStatus::Inconsistent);
    }

    #[test]
    fn circle_through_three_points() {
        // Circle x^2+y^2+ax+by+c through (0,0), (1,0), (0,1):
        // c = 0, 1 + a + c = 0, 1 + b + c = 0.
        let s = Session::new();
        let a = s.param("a").unwrap();
        let b = s.param("b").unwrap();
        let c = s.param("c").unwrap();
        let eqs = [
            s.var_scalar(c),
            &(&s.one() + &s.var_scalar(a)) + &s.var_scalar(c),
            &(&s.one() + &s.var_scalar(b)) + &s.var_scalar(c),
        ];
        let sol = solve_linear(&s, &eqs, &[a, b, c]).unwrap();
        assert_eq!(sol.status, SolveStatus::Unique);
        assert_eq!(sol.bindings[&a], s.int(-1));
        assert_eq!(sol.bindings[&b], s.int(-1));
        assert_eq!(sol.bindings[&c], s.int(0));
    }

    #[test]
    fn nonlinear_system_rejected() {
        let s = Session::new();
        let sq = &s.x() * &s.x();
        assert!(matches!(
            solve_linear(&s, &[sq], &[VAR_X, VAR_Y]),
            Err(crate::error::Error::NonlinearSystem)
        ));
    }

    #[test]
    fn underdetermined_keeps_free_unknowns() {
        let s = Session::new();
        let (x, y) = (s.x(), s.y());
        // Single equation x + y - 1 = 0.
        let sol = solve_linear(&s, &[&(&x + &y) - &s.one()], &[VAR_X, VAR_Y]).unwrap();
        assert_eq!(sol.status, SolveStatus::Underdetermined);
        let bx = &sol.bindings[&VAR_X];
        assert_eq!(bx, &(&s.one() - &y));
        assert!(!sol.bindings.contains_key(&VAR_Y));
    }
}
