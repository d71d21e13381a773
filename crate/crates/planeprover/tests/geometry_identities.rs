//! Symbolic geometry identities over fully generic points: incidence,
//! perpendicularity, parametrization-on-conic, circle-through-points and
//! center/radius roundtrips, with numeric cross-checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use planeprover::geometry::{
    altitude, area, at_point, center, circle_through, colinear, concurrent, de_sq, line_through,
    named_point, param_circle, param_ellipse, radius_sq, tan_sum, Conic, Line, Point,
};
use planeprover::kernel::eval::{Evaluator, NumVal};
use planeprover::kernel::{Scalar, Session, VarId};

fn generic_pair(sess: &Session) -> (Point, Point) {
    (named_point(sess, "A").unwrap(), named_point(sess, "B").unwrap())
}

#[test]
fn incidence_of_line_through() {
    let sess = Session::new();
    let (a, b) = generic_pair(&sess);
    let l = line_through(&a, &b).unwrap();
    assert!(at_point(l.form(), &a).unwrap().is_zero());
    assert!(at_point(l.form(), &b).unwrap().is_zero());
}

#[test]
fn perpendicularity_of_altitude() {
    let sess = Session::new();
    let (a, b) = generic_pair(&sess);
    let p = named_point(&sess, "P").unwrap();
    let l = line_through(&a, &b).unwrap();
    let alt = altitude(&p, &l).unwrap();
    let dot = &(&l.coeff_x() * &alt.coeff_x()) + &(&l.coeff_y() * &alt.coeff_y());
    assert!(dot.is_zero());
}

#[test]
fn parametric_points_lie_on_their_conics() {
    let sess = Session::new();
    let r = sess.var_scalar(sess.param("R").unwrap());
    let t = sess.var_scalar(sess.param("t").unwrap());
    let p = param_circle(&Point::origin(&sess), &r, &t).unwrap();
    let circle = &(&(&sess.x() * &sess.x()) + &(&sess.y() * &sess.y())) - &(&r * &r);
    assert!(at_point(&circle, &p).unwrap().is_zero());

    let d1 = sess.var_scalar(sess.param("d1").unwrap());
    let d2 = sess.var_scalar(sess.param("d2").unwrap());
    let pe = param_ellipse(&Point::origin(&sess), &(d1.clone(), d2.clone()), &t).unwrap();
    // x^2/d1^2 + y^2/d2^2 - 1, cleared: x^2 d2^2 + y^2 d1^2 - d1^2 d2^2
    let ellipse = &(&(&(&sess.x() * &sess.x()) * &(&d2 * &d2))
        + &(&(&sess.y() * &sess.y()) * &(&d1 * &d1)))
        - &(&(&d1 * &d1) * &(&d2 * &d2));
    assert!(at_point(&ellipse, &pe).unwrap().is_zero());
}

#[test]
fn circle_through_vanishes_at_its_points() {
    let sess = Session::new();
    let a = named_point(&sess, "A").unwrap();
    let b = named_point(&sess, "B").unwrap();
    let c = named_point(&sess, "C").unwrap();
    let circ = circle_through(&a, &b, &c).unwrap();
    for p in [&a, &b, &c] {
        assert!(at_point(circ.form(), p).unwrap().is_zero());
    }
}

#[test]
fn center_radius_roundtrip() {
    let sess = Session::new();
    let a = named_point(&sess, "A").unwrap();
    let b = named_point(&sess, "B").unwrap();
    let c = named_point(&sess, "C").unwrap();
    let circ = circle_through(&a, &b, &c).unwrap();
    let q = center(&circ).unwrap();
    let rho = radius_sq(&circ).unwrap();
    let dx = &sess.x() - &q.x;
    let dy = &sess.y() - &q.y;
    let rebuilt = &(&(&dx * &dx) + &(&dy * &dy)) - &rho;
    assert_eq!(&rebuilt, circ.form());
}

#[test]
fn concurrent_invariant_under_scaling() {
    let sess = Session::new();
    let m = sess.var_scalar(sess.param("m").unwrap());
    let l1 = Line::new(&sess.y() - &(&m * &sess.x())).unwrap();
    let l2 = Line::new(&(&sess.y() + &sess.x()) - &sess.one()).unwrap();
    let l3 = Line::new(&sess.x() - &sess.y()).unwrap();
    let base = concurrent(&[l1.clone(), l2.clone(), l3.clone()]).unwrap();
    let scaled =
        |l: &Line, k: i64| Line::new(&sess.int(k) * l.form()).unwrap();
    for k in [2, -3, 7] {
        let varied = concurrent(&[scaled(&l1, k), l2.clone(), scaled(&l3, -k)]).unwrap();
        assert_eq!(varied, base);
    }
}

#[test]
fn colinear_invariant_under_permutation() {
    let sess = Session::new();
    let t = sess.var_scalar(sess.param("t").unwrap());
    let p1 = Point::new(t.clone(), &sess.int(2) * &t);
    let p2 = Point::new(&t + &sess.one(), &(&sess.int(2) * &t) + &sess.int(2));
    let p3 = Point::new(&t - &sess.one(), &(&sess.int(2) * &t) - &sess.int(2));
    let base = colinear(&[p1.clone(), p2.clone(), p3.clone()]).unwrap();
    assert!(base);
    for perm in [
        [&p2, &p1, &p3],
        [&p3, &p2, &p1],
        [&p2, &p3, &p1],
    ] {
        let pts: Vec<Point> = perm.into_iter().cloned().collect();
        assert_eq!(colinear(&pts).unwrap(), base);
    }
}

#[test]
fn tan_sum_is_associative() {
    let sess = Session::new();
    let a = sess.var_scalar(sess.param("a").unwrap());
    let b = sess.var_scalar(sess.param("b").unwrap());
    let c = sess.var_scalar(sess.param("c").unwrap());
    let all = tan_sum(&[a.clone(), b.clone(), c.clone()]).unwrap();
    let nested = tan_sum(&[tan_sum(&[a, b]).unwrap(), c]).unwrap();
    assert_eq!(all, nested);
}

/// Numeric cross-check: boolean operations agree with evaluation at random
/// rational points (resampling on poles).
#[test]
fn boolean_operations_agree_with_numeric_evaluation() {
    let sess = Session::new();
    let a = named_point(&sess, "A").unwrap();
    let b = named_point(&sess, "B").unwrap();
    let c = named_point(&sess, "C").unwrap();
    // A true incidence identity and a false one.
    let l = line_through(&a, &b).unwrap();
    let on_line = at_point(l.form(), &a).unwrap();
    let off_line = at_point(l.form(), &c).unwrap();
    assert!(on_line.is_zero());
    assert!(!off_line.is_zero());

    let vars: Vec<VarId> = off_line.vars();
    let mut checked = 0;
    let mut salt = 0u64;
    while checked < 5 {
        salt += 1;
        let mut point = BTreeMap::new();
        for (k, v) in vars.iter().enumerate() {
            let num = ((salt as i64) * 31 + (k as i64) * 17) % 89 - 44;
            point.insert(*v, BigRational::new(BigInt::from(num), BigInt::from(9)));
        }
        let mut ev = Evaluator::new(&sess, point);
        let (zero_val, nonzero_val): (NumVal, NumVal) =
            match (ev.eval(&on_line), ev.eval(&off_line)) {
                (Ok(z), Ok(nz)) => (z, nz),
                _ => continue, // pole: resample
            };
        assert!(zero_val.is_zero());
        if nonzero_val.is_zero() {
            continue; // the special locus of the false claim: resample
        }
        checked += 1;
    }
}

/// The touching discriminant agrees between the boolean and the expression
/// variants.
#[test]
fn touch_expression_variants() {
    let sess = Session::new();
    let r = sess.var_scalar(sess.param("r").unwrap());
    let unit = Conic::new(&(&(&sess.x() * &sess.x()) + &(&sess.y() * &sess.y())) - &sess.one())
        .unwrap();
    // Circle centered (0, 1 + r) with radius r: externally tangent to the
    // unit circle at (0, 1).
    let cy = &sess.y() - &(&sess.one() + &r);
    let tangent_circle =
        Conic::new(&(&(&sess.x() * &sess.x()) + &(&cy * &cy)) - &(&r * &r)).unwrap();
    assert!(planeprover::geometry::touch_circles(&unit, &tangent_circle).unwrap());
    assert!(planeprover::geometry::touch_circles_expr(&unit, &tangent_circle)
        .unwrap()
        .is_zero());
    // Shifted circle: not tangent, nonzero residual.
    let cy2 = &sess.y() - &(&sess.int(2) + &r);
    let shifted = Conic::new(&(&(&sess.x() * &sess.x()) + &(&cy2 * &cy2)) - &(&r * &r)).unwrap();
    assert!(!planeprover::geometry::touch_circles(&unit, &shifted).unwrap());
    let residual: Scalar = planeprover::geometry::touch_circles_expr(&unit, &shifted).unwrap();
    assert!(!residual.is_zero());
}

#[test]
fn centroid_lies_on_the_euler_line() {
    let sess = Session::new();
    let a = named_point(&sess, "A").unwrap();
    let b = named_point(&sess, "B").unwrap();
    let c = named_point(&sess, "C").unwrap();
    let el = planeprover::geometry::euler_line(&a, &b, &c).unwrap();
    let g = planeprover::geometry::centroid(&a, &b, &c).unwrap();
    assert!(at_point(el.form(), &g).unwrap().is_zero());
}

#[test]
fn perpendicular_bisector_properties() {
    let sess = Session::new();
    let (p, q) = generic_pair(&sess);
    let l = planeprover::geometry::perp_mid(&p, &q).unwrap();
    // Passes through the midpoint and is equidistant from the endpoints.
    let mid = planeprover::geometry::midpoint(&p, &q);
    assert!(at_point(l.form(), &mid).unwrap().is_zero());
    let dp = planeprover::geometry::de_pt_line_sq(&p, &l).unwrap();
    let dq = planeprover::geometry::de_pt_line_sq(&q, &l).unwrap();
    assert_eq!(dp, dq);
}

#[test]
fn signed_area_antisymmetry() {
    let sess = Session::new();
    let a = named_point(&sess, "A").unwrap();
    let b = named_point(&sess, "B").unwrap();
    let c = named_point(&sess, "C").unwrap();
    let lhs = area(&a, &b, &c);
    let rhs = -&area(&b, &a, &c);
    assert_eq!(lhs, rhs);
    // Translating every point by the same offset fixes the area.
    let o = named_point(&sess, "T").unwrap();
    let shift = |p: &Point| Point::new(&p.x + &o.x, &p.y + &o.y);
    assert_eq!(area(&shift(&a), &shift(&b), &shift(&c)), area(&a, &b, &c));
    let d = de_sq(&a, &b);
    assert_eq!(de_sq(&shift(&a), &shift(&b)), d);
}
