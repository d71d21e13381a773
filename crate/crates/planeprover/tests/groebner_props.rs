//! Randomized Gröbner-basis properties: Buchberger's criterion re-checked
//! post hoc, ideal membership of the inputs and idempotent normal forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use planeprover::groebner::{buchberger, normal_form, s_polynomial, MonomialOrder, PolyIdeal};
use planeprover::kernel::{Budget, Poly, Session, VarId};

type TermData = (i16, [u8; 3]);

fn gen_poly() -> impl Strategy<Value = Vec<TermData>> {
    prop::collection::vec((-9i16..=9, [0u8..=3, 0u8..=3, 0u8..=3]), 1..4)
}

fn build(vars: &[VarId; 3], data: &[TermData]) -> Poly {
    let mut acc = Poly::zero();
    for (c, exps) in data {
        let mut term = Poly::constant(BigRational::from_integer(BigInt::from(*c as i64)));
        for (v, e) in vars.iter().zip(exps) {
            term = term.mul(&Poly::var(*v).pow(*e as u32, &Budget::UNLIMITED), &Budget::UNLIMITED);
        }
        acc = acc.add(&term);
    }
    acc
}

fn check_basis(ideal: &PolyIdeal) {
    let gb = buchberger(ideal, &Budget::UNLIMITED).unwrap();
    // Every S-polynomial of basis pairs reduces to zero.
    for i in 0..gb.basis.len() {
        for j in 0..i {
            let s = s_polynomial(&gb.basis[i], &gb.basis[j], &gb.order).unwrap();
            assert!(
                normal_form(&s, &gb, &Budget::UNLIMITED).unwrap().is_zero(),
                "S-polynomial of basis elements {i}, {j} did not reduce to zero"
            );
        }
    }
    // Every input generator reduces to zero.
    for g in &ideal.generators {
        assert!(normal_form(g, &gb, &Budget::UNLIMITED).unwrap().is_zero());
    }
    // The basis is reduced: monic, no leading monomial divides another.
    for g in &gb.basis {
        assert!(g.leading().unwrap().1 == &BigRational::from_integer(BigInt::from(1)));
    }
    // Normal form is idempotent on a probe polynomial.
    if let Some(first) = gb.basis.first() {
        let probe = first.add(&Poly::one());
        let n1 = normal_form(&probe, &gb, &Budget::UNLIMITED).unwrap();
        let n2 = normal_form(&n1, &gb, &Budget::UNLIMITED).unwrap();
        assert_eq!(n1, n2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn random_small_ideals(g1 in gen_poly(), g2 in gen_poly(), g3 in gen_poly()) {
        let sess = Session::new();
        let vars = [
            sess.param("gA").unwrap(),
            sess.param("gB").unwrap(),
            sess.param("gC").unwrap(),
        ];
        let gens = vec![build(&vars, &g1), build(&vars, &g2), build(&vars, &g3)];
        let order = MonomialOrder::grevlex(vars.to_vec());
        let ideal = PolyIdeal::new(gens, order);
        if ideal.generators.is_empty() {
            return Ok(());
        }
        check_basis(&ideal);
    }

    #[test]
    fn normal_form_invariant_under_ideal_shifts(
        g1 in gen_poly(), g2 in gen_poly(), p in gen_poly(), q in gen_poly(),
    ) {
        let sess = Session::new();
        let vars = [
            sess.param("gA").unwrap(),
            sess.param("gB").unwrap(),
            sess.param("gC").unwrap(),
        ];
        let gens = vec![build(&vars, &g1), build(&vars, &g2)];
        let order = MonomialOrder::grevlex(vars.to_vec());
        let ideal = PolyIdeal::new(gens, order);
        if ideal.generators.is_empty() {
            return Ok(());
        }
        let gb = buchberger(&ideal, &Budget::UNLIMITED).unwrap();
        let pq = build(&vars, &p).mul(&build(&vars, &q), &Budget::UNLIMITED);
        let shifted = pq.add(&ideal.generators[0]);
        let nf1 = normal_form(&pq, &gb, &Budget::UNLIMITED).unwrap();
        let nf2 = normal_form(&shifted, &gb, &Budget::UNLIMITED).unwrap();
        prop_assert_eq!(nf1, nf2);
    }
}
