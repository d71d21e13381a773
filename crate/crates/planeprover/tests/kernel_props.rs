//! Randomized properties of the kernel: canonical forms, arithmetic
//! homomorphisms, gcd behavior, determinants and linear solving.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use planeprover::kernel::det::{determinant, determinant_cofactor};
use planeprover::kernel::eval::Evaluator;
use planeprover::kernel::gcd::poly_gcd;
use planeprover::kernel::{arith, solve_linear, ArithOp, Scalar, Session, SolveStatus, VarId};

/// One random term: coefficient and exponents over (m, n, k, i, r3).
type TermData = ((i16, u8), [u8; 5]);

fn term_strategy() -> impl Strategy<Value = TermData> {
    (
        (-40i16..=40, 1u8..=6),
        [0u8..=3, 0u8..=3, 0u8..=2, 0u8..=2, 0u8..=2],
    )
}

fn poly_data() -> impl Strategy<Value = Vec<TermData>> {
    prop::collection::vec(term_strategy(), 0..5)
}

struct Vars {
    sess: Session,
    vars: [VarId; 5],
}

fn setup() -> Vars {
    let sess = Session::new();
    let m = sess.param("m").unwrap();
    let n = sess.param("n").unwrap();
    let k = sess.param("k").unwrap();
    let i = sess.lookup("i").unwrap();
    let r3 = sess.lookup("r3").unwrap();
    Vars { sess, vars: [m, n, k, i, r3] }
}

fn build_poly(v: &Vars, data: &[TermData]) -> Scalar {
    let mut acc = v.sess.zero();
    for ((num, den), exps) in data {
        let mut term = v.sess.rat(*num as i64, *den as i64);
        for (var, e) in v.vars.iter().zip(exps) {
            for _ in 0..*e {
                term = &term * &v.sess.var_scalar(*var);
            }
        }
        acc = &acc + &term;
    }
    acc
}

fn build_scalar(v: &Vars, num: &[TermData], den: &[TermData]) -> Option<Scalar> {
    let n = build_poly(v, num);
    let d = build_poly(v, den);
    n.div(&d).ok()
}

fn sample_point(v: &Vars, seeds: &[i16; 3]) -> BTreeMap<VarId, BigRational> {
    let mut point = BTreeMap::new();
    for (var, s) in v.vars.iter().take(3).zip(seeds) {
        point.insert(
            *var,
            BigRational::new(BigInt::from(*s as i64), BigInt::from(7)),
        );
    }
    point
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalize_is_idempotent(num in poly_data(), den in poly_data()) {
        let v = setup();
        if let Some(s) = build_scalar(&v, &num, &den) {
            let once = s.normalize().unwrap();
            prop_assert_eq!(&once, &s);
            let twice = once.normalize().unwrap();
            prop_assert_eq!(&twice, &once);
        }
    }

    #[test]
    fn generator_exponents_stay_below_two(num in poly_data(), den in poly_data()) {
        let v = setup();
        if let Some(s) = build_scalar(&v, &num, &den) {
            for poly in [s.num_poly(), s.den_poly()] {
                for var in poly.vars() {
                    if v.sess.is_generator(var) {
                        prop_assert!(poly.degree_in(var) < 2);
                    }
                }
            }
            // The canonical denominator is generator-free entirely.
            for var in s.den_poly().vars() {
                prop_assert!(!v.sess.is_generator(var));
            }
        }
    }

    #[test]
    fn arith_commutes_with_evaluation(
        a_num in poly_data(), a_den in poly_data(),
        b_num in poly_data(), b_den in poly_data(),
        seeds in [-30i16..=30, -30i16..=30, -30i16..=30],
        op_pick in 0u8..4,
    ) {
        let v = setup();
        let (Some(a), Some(b)) = (build_scalar(&v, &a_num, &a_den), build_scalar(&v, &b_num, &b_den)) else {
            return Ok(());
        };
        let op = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div][op_pick as usize];
        let Ok(combined) = arith(&a, &b, op) else { return Ok(()) };
        let point = sample_point(&v, &seeds);
        let mut ev = Evaluator::new(&v.sess, point);
        let (Ok(va), Ok(vb), Ok(vc)) = (ev.eval(&a), ev.eval(&b), ev.eval(&combined)) else {
            return Ok(()); // pole at the sample point
        };
        let expect = match op {
            ArithOp::Add => va.add(&vb),
            ArithOp::Sub => va.sub(&vb),
            ArithOp::Mul => va.mul(&vb, &ev.tower),
            ArithOp::Div => {
                let Ok(inv) = vb.inv(&ev.tower) else { return Ok(()) };
                va.mul(&inv, &ev.tower)
            }
        };
        prop_assert_eq!(vc, expect);
    }

    #[test]
    fn canonical_form_is_path_independent(
        a_num in poly_data(), a_den in poly_data(),
        b_num in poly_data(), b_den in poly_data(),
        c_num in poly_data(), c_den in poly_data(),
    ) {
        let v = setup();
        let (Some(a), Some(b), Some(c)) = (
            build_scalar(&v, &a_num, &a_den),
            build_scalar(&v, &b_num, &b_den),
            build_scalar(&v, &c_num, &c_den),
        ) else {
            return Ok(());
        };
        // Distributivity must hold structurally, not just mathematically.
        let left = &(&a + &b) * &c;
        let right = &(&a * &c) + &(&b * &c);
        prop_assert_eq!(&left, &right);
        // Two division routes agree structurally.
        if !c.is_zero() {
            if let (Ok(q1), Ok(q2)) = (a.div(&c), (&a * &b).div(&(&c * &b))) {
                if !b.is_zero() {
                    prop_assert_eq!(q1, q2);
                }
            }
        }
        // Subtracting a value from itself through different routes is zero.
        let twisted = &(&a + &b) - &(&b + &a);
        prop_assert!(twisted.is_zero());
    }

    #[test]
    fn gcd_divides_and_cancels(p_data in poly_data(), q_data in poly_data()) {
        let v = setup();
        let p = build_poly(&v, &p_data);
        let q = build_poly(&v, &q_data);
        if p.is_zero() || q.is_zero() {
            return Ok(());
        }
        let g = v.sess.poly_scalar(poly_gcd(p.num_poly(), q.num_poly()));
        // The gcd divides both inputs exactly.
        prop_assert!(p.divide_exact(&g).is_ok());
        prop_assert!(q.divide_exact(&g).is_ok());
        // (p*q)/q normalizes back to p.
        let prod = &p * &q;
        prop_assert_eq!(prod.div(&q).unwrap(), p);
    }

    #[test]
    fn determinant_matches_cofactor_oracle(
        entries in prop::collection::vec(((-20i16..=20, 1u8..=5), 0u8..=2), 16),
        size in 1usize..=4,
    ) {
        let v = setup();
        let matrix: Vec<Vec<Scalar>> = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| {
                        let ((num, den), var_exp) = entries[r * 4 + c];
                        let mut e = v.sess.rat(num as i64, den as i64);
                        for _ in 0..var_exp {
                            e = &e * &v.sess.var_scalar(v.vars[0]);
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        let fast = determinant(&v.sess, &matrix).unwrap();
        let slow = determinant_cofactor(&v.sess, &matrix).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn solve_linear_bindings_satisfy_symbolically(
        coeffs in prop::collection::vec((-9i16..=9, -9i16..=9, -9i16..=9, -9i16..=9, 0u8..=1), 3),
    ) {
        let v = setup();
        let sess = &v.sess;
        let u1 = sess.param("u1").unwrap();
        let u2 = sess.param("u2").unwrap();
        let u3 = sess.param("u3").unwrap();
        let unknowns = [u1, u2, u3];
        let eqs: Vec<Scalar> = coeffs
            .iter()
            .map(|(c1, c2, c3, c0, with_param)| {
                let mut eq = sess.int(*c0 as i64);
                for (c, u) in [c1, c2, c3].into_iter().zip(unknowns) {
                    let mut coeff = sess.int(*c as i64);
                    if *with_param == 1 {
                        coeff = &coeff + &sess.var_scalar(v.vars[0]);
                    }
                    eq = &eq + &(&coeff * &sess.var_scalar(u));
                }
                eq
            })
            .collect();
        let sol = solve_linear(sess, &eqs, &unknowns).unwrap();
        if sol.status != SolveStatus::Inconsistent {
            for eq in &eqs {
                let after = eq.substitute(&sol.bindings).unwrap();
                if sol.status == SolveStatus::Unique {
                    prop_assert!(after.is_zero());
                } else {
                    // Underdetermined: residual must vanish identically in the
                    // free unknowns as well.
                    let resolved = after.substitute(&sol.bindings).unwrap();
                    prop_assert!(resolved.is_zero());
                }
            }
        }
    }
}

/// Exponents over the three parameters only: no generator rewriting, so
/// scalar products remain free-ring multiples of their factors.
fn param_poly_data() -> impl Strategy<Value = Vec<TermData>> {
    prop::collection::vec(
        ((-40i16..=40, 1u8..=6), [0u8..=2, 0u8..=2, 0u8..=2, 0u8..=0, 0u8..=0]),
        1..4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gcd_recovers_planted_common_factors(
        g_data in param_poly_data(), p_data in param_poly_data(), q_data in param_poly_data(),
    ) {
        let v = setup();
        let g = build_poly(&v, &g_data);
        let p = build_poly(&v, &p_data);
        let q = build_poly(&v, &q_data);
        if g.is_zero() || p.is_zero() || q.is_zero() {
            return Ok(());
        }
        let gp = &g * &p;
        let gq = &g * &q;
        let found = v.sess.poly_scalar(poly_gcd(gp.num_poly(), gq.num_poly()));
        // Maximality: the planted factor divides the computed gcd.
        let planted = v.sess.poly_scalar(g.num_poly().clone());
        prop_assert!(found.divide_exact(&planted).is_ok());
        // And the gcd divides both products.
        prop_assert!(gp.divide_exact(&found).is_ok());
        prop_assert!(gq.divide_exact(&found).is_ok());
    }
}
