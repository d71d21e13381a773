//! Numeric spot checks: every theorem re-run on random rational instances
//! through an arithmetic path independent of the symbolic normalizer, plus
//! the deliberately-false mutations used to show the prover is not vacuous.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{catch_resource, Error, Result};
use crate::geometry::{
    area, circle_through, circumcenter, de_sq, foot, incenter, inradius_sq, intersect,
    line_through, midpoint, orthocenter, param_circle, param_line, standard_triangle, tan_sum,
    Conic, Line, Point,
};
use crate::kernel::eval::{Evaluator, NumVal, Tower};
use crate::kernel::gcd::SplitMix64;
use crate::kernel::{Scalar, Session};

use super::{check_claim, find, Claim, ClaimBody, ClaimKind, Params};

fn mix(seed: u64, attempt: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt.wrapping_mul(0xD1B5_4A32))
}

/// Re-run a theorem's construction with random rational parameters
/// (numerators and denominators in [-100, 100]), resampling on degenerate
/// configurations, and report whether the claim holds at the sample.
pub fn numeric_spot_check(id: &str, seed: u64) -> Result<bool> {
    let rec = find(id)?;
    match rec.kind {
        ClaimKind::GroebnerZero => soddy_numeric(seed, descartes_residual),
        ClaimKind::Certificate => lehmus_numeric(seed, lehmus_difference),
        _ => generic_numeric(rec.construct, seed),
    }
}

fn generic_numeric(construct: super::Construct, seed: u64) -> Result<bool> {
    for attempt in 0..20 {
        let sess = Session::new();
        let outcome = catch_resource({
            let sess = sess.clone();
            move || {
                let mut params = Params::numeric(&sess, mix(seed, attempt));
                let claim = construct(&sess, &mut params)?;
                check_numeric(&sess, &claim)
            }
        });
        match outcome {
            Ok(v) => return Ok(v),
            Err(Error::Resource(r)) => return Err(Error::Resource(r)),
            Err(_) => continue,
        }
    }
    Err(Error::UnableToSample)
}

fn check_numeric(sess: &Session, claim: &Claim) -> Result<bool> {
    let holds = check_claim(sess, &claim.body)?;
    if let ClaimBody::ZeroAll(scalars) = &claim.body {
        // Cross-check the defining scalars through the independent
        // radical-tower evaluator.
        let mut ev = Evaluator::new(sess, BTreeMap::new());
        for s in scalars {
            let v = ev.eval(s)?;
            if v.is_zero() != s.is_zero() {
                return Err(Error::InternalInconsistency(
                    "evaluator disagrees with the canonical zero test".into(),
                ));
            }
        }
    }
    Ok(holds)
}

fn rational_in_unit(rng: &mut SplitMix64) -> BigRational {
    BigRational::new((1 + rng.below(97) as i64).into(), 100.into())
}

// ---------------------------------------------------------------------------
// Steiner-Lehmus, numerically
// ---------------------------------------------------------------------------

/// The squared-bisector-length difference of the Steiner-Lehmus
/// configuration, as a function of the base half-angle tangents.
pub(crate) fn lehmus_difference(sess: &Session, m: &Scalar, n: &Scalar) -> Result<Scalar> {
    let n_pt = intersect(
        &Line::new(&sess.y() - &(&tan_sum(&[m.clone(), m.clone()])? * &sess.x()))?,
        &Line::new(&sess.y() + &(n * &(&sess.x() - &sess.one())))?,
    )?;
    let m_pt = intersect(
        &Line::new(&sess.y() - &(m * &sess.x()))?,
        &Line::new(&sess.y() + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())))?,
    )?;
    let unit = Point::new(sess.one(), sess.zero());
    Ok(&de_sq(&unit, &n_pt) - &de_sq(&Point::origin(sess), &m_pt))
}

type DifferenceBuilder = fn(&Session, &Scalar, &Scalar) -> Result<Scalar>;

/// Certificate-style numeric check: the difference vanishes on the diagonal
/// m = n and is nonzero at a generic sample.
fn lehmus_numeric(seed: u64, builder: DifferenceBuilder) -> Result<bool> {
    for attempt in 0..20 {
        let sess = Session::new();
        let mut rng = SplitMix64(mix(seed, attempt));
        let m = sess.rational(rational_in_unit(&mut rng));
        let mut n = sess.rational(rational_in_unit(&mut rng));
        if m == n {
            n = &n + &sess.rat(1, 101);
        }
        let outcome = catch_resource({
            let sess = sess.clone();
            let m = m.clone();
            let n = n.clone();
            move || {
                let equal_case = builder(&sess, &m, &m)?;
                let generic_case = builder(&sess, &m, &n)?;
                Ok(equal_case.is_zero() && !generic_case.is_zero())
            }
        });
        match outcome {
            Ok(v) => return Ok(v),
            Err(Error::Resource(r)) => return Err(Error::Resource(r)),
            Err(_) => continue,
        }
    }
    Err(Error::UnableToSample)
}

// ---------------------------------------------------------------------------
// Soddy circles, numerically
// ---------------------------------------------------------------------------

/// `(k1+k2+k3+k4)^2 - 2(k1^2+k2^2+k3^2+k4^2)` over the radical tower.
fn descartes_residual(curv: &[NumVal; 4], tower: &Tower) -> NumVal {
    let sum = curv.iter().fold(NumVal::zero(), |acc, k| acc.add(k));
    let sum_sq = curv
        .iter()
        .fold(NumVal::zero(), |acc, k| acc.add(&k.mul(k, tower)));
    sum.mul(&sum, tower).sub(&sum_sq.add(&sum_sq))
}

type ResidualBuilder = fn(&[NumVal; 4], &Tower) -> NumVal;

/// Solve a random mutually-tangent four-circle configuration exactly in the
/// radical tower and evaluate the curvature residual.
fn soddy_numeric(seed: u64, residual: ResidualBuilder) -> Result<bool> {
    'attempt: for attempt in 0..20 {
        let mut rng = SplitMix64(mix(seed, attempt));
        let r = BigRational::new((1 + rng.below(60) as i64).into(), (1 + rng.below(12) as i64).into());
        let s = BigRational::new((1 + rng.below(60) as i64).into(), (1 + rng.below(12) as i64).into());
        let one = NumVal::from_rational(BigRational::from_integer(1.into()));
        let rv = NumVal::from_rational(r.clone());
        let sv = NumVal::from_rational(s.clone());
        let mut tower = Tower::default();

        // Unit circle at the origin; circle of radius r at (1 + r, 0).
        // Circle of radius s: center (d1, d2) from tangency to both.
        let one_r = one.add(&rv);
        let one_s = one.add(&sv);
        let r_s = rv.add(&sv);
        // d1 = [(1+s)^2 - (r+s)^2 + (1+r)^2] / (2(1+r))
        let d1 = {
            let num = one_s
                .mul(&one_s, &tower)
                .sub(&r_s.mul(&r_s, &tower))
                .add(&one_r.mul(&one_r, &tower));
            let den = one_r.add(&one_r);
            match den.inv(&tower) {
                Ok(inv) => num.mul(&inv, &tower),
                Err(_) => continue 'attempt,
            }
        };
        // d2 = sqrt((1+s)^2 - d1^2)
        let d2_sq = one_s.mul(&one_s, &tower).sub(&d1.mul(&d1, &tower));
        if let Some(q) = d2_sq.as_rational() {
            if q < BigRational::from_integer(0.into()) {
                continue 'attempt;
            }
        }
        let d2 = match tower.sqrt(&d2_sq) {
            Ok(v) => v,
            Err(_) => continue 'attempt,
        };
        if d2.is_zero() {
            continue 'attempt;
        }

        // Fourth circle: radius t unknown; e1, e2 linear in t.
        // e1 = [(1-r)(1+r+2t) + (1+r)^2] / (2(1+r))
        let two = NumVal::from_rational(BigRational::from_integer(2.into()));
        let inv_2one_r = match one_r.add(&one_r).inv(&tower) {
            Ok(v) => v,
            Err(_) => continue 'attempt,
        };
        let one_minus_r = one.sub(&rv);
        let alpha1 = one_minus_r
            .mul(&one_r, &tower)
            .add(&one_r.mul(&one_r, &tower))
            .mul(&inv_2one_r, &tower);
        let beta1 = one_minus_r.mul(&two, &tower).mul(&inv_2one_r, &tower);
        // e2 = [(1-s)(1+s+2t) + d1^2 + d2^2 - 2 d1 e1] / (2 d2)
        let inv_2d2 = match d2.add(&d2).inv(&tower) {
            Ok(v) => v,
            Err(_) => continue 'attempt,
        };
        let one_minus_s = one.sub(&sv);
        let const_part = one_minus_s
            .mul(&one_s, &tower)
            .add(&d1.mul(&d1, &tower))
            .add(&d2_sq)
            .sub(&d1.mul(&alpha1, &tower).add(&d1.mul(&alpha1, &tower)));
        let t_part = one_minus_s
            .mul(&two, &tower)
            .sub(&d1.mul(&beta1, &tower).add(&d1.mul(&beta1, &tower)));
        let alpha2 = const_part.mul(&inv_2d2, &tower);
        let beta2 = t_part.mul(&inv_2d2, &tower);

        // e1^2 + e2^2 = (1 + t)^2: quadratic in t.
        let qa = beta1
            .mul(&beta1, &tower)
            .add(&beta2.mul(&beta2, &tower))
            .sub(&one);
        let qb = alpha1
            .mul(&beta1, &tower)
            .add(&alpha2.mul(&beta2, &tower))
            .mul(&two, &tower)
            .sub(&two);
        let qc = alpha1
            .mul(&alpha1, &tower)
            .add(&alpha2.mul(&alpha2, &tower))
            .sub(&one);
        if qa.is_zero() {
            continue 'attempt;
        }
        let disc = qb
            .mul(&qb, &tower)
            .sub(&NumVal::from_rational(BigRational::from_integer(4.into())).mul(&qa.mul(&qc, &tower), &tower));
        if let Some(q) = disc.as_rational() {
            if q < BigRational::from_integer(0.into()) {
                continue 'attempt;
            }
        }
        let root = match tower.sqrt(&disc) {
            Ok(v) => v,
            Err(_) => continue 'attempt,
        };
        let inv_2qa = match qa.add(&qa).inv(&tower) {
            Ok(v) => v,
            Err(_) => continue 'attempt,
        };
        let t = root.sub(&qb).mul(&inv_2qa, &tower);
        if t.is_zero() {
            continue 'attempt;
        }
        let (inv_r, inv_s, inv_t) = match (rv.inv(&tower), sv.inv(&tower), t.inv(&tower)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => continue 'attempt,
        };
        let curv = [one.clone(), inv_r, inv_s, inv_t];
        return Ok(residual(&curv, &tower).is_zero());
    }
    Err(Error::UnableToSample)
}

// ---------------------------------------------------------------------------
// Mutation suite: deliberately false variants per claim kind
// ---------------------------------------------------------------------------

enum MutationCheck {
    Construct(super::Construct),
    Soddy(ResidualBuilder),
    Lehmus(DifferenceBuilder),
}

pub struct Mutation {
    pub label: &'static str,
    pub kind: ClaimKind,
    check: MutationCheck,
}

impl Mutation {
    /// Numeric verdict for the mutated claim; a healthy prover returns
    /// `false` for every mutation.
    pub fn spot_check(&self, seed: u64) -> Result<bool> {
        match &self.check {
            MutationCheck::Construct(c) => generic_numeric(*c, seed),
            MutationCheck::Soddy(r) => soddy_numeric(seed, *r),
            MutationCheck::Lehmus(b) => lehmus_numeric(seed, *b),
        }
    }
}

pub fn mutations() -> Vec<Mutation> {
    vec![
        Mutation {
            label: "area formula with the quarter replaced by a fifth",
            kind: ClaimKind::ZeroIdentity,
            check: MutationCheck::Construct(mut_area_formula),
        },
        Mutation {
            label: "cevian products added instead of subtracted",
            kind: ClaimKind::ZeroIdentity,
            check: MutationCheck::Construct(mut_ceva_sum),
        },
        Mutation {
            label: "butterfly with one squared distance doubled",
            kind: ClaimKind::ZeroIdentity,
            check: MutationCheck::Construct(mut_butterfly_scaled),
        },
        Mutation {
            label: "pedal points of a point off the circle",
            kind: ClaimKind::Colinearity,
            check: MutationCheck::Construct(mut_simson_off_circle),
        },
        Mutation {
            label: "cross joins with one base point shifted off its line",
            kind: ClaimKind::Colinearity,
            check: MutationCheck::Construct(mut_pappus_shifted),
        },
        Mutation {
            label: "orthocenter, circumcenter and a free point",
            kind: ClaimKind::Colinearity,
            check: MutationCheck::Construct(mut_euler_line_free_point),
        },
        Mutation {
            label: "two altitudes and a median",
            kind: ClaimKind::Concurrency,
            check: MutationCheck::Construct(mut_orthocenter_median),
        },
        Mutation {
            label: "medians with one side split at a third",
            kind: ClaimKind::Concurrency,
            check: MutationCheck::Construct(mut_centroid_third),
        },
        Mutation {
            label: "bisector slope with the wrong half-angle argument",
            kind: ClaimKind::Concurrency,
            check: MutationCheck::Construct(mut_incenter_wrong_bisector),
        },
        Mutation {
            label: "nine-point set with the centroid included",
            kind: ClaimKind::Concyclicity,
            check: MutationCheck::Construct(mut_nine_point_with_centroid),
        },
        Mutation {
            label: "three circle points and a free point",
            kind: ClaimKind::Concyclicity,
            check: MutationCheck::Construct(mut_circle_points_plus_free),
        },
        Mutation {
            label: "nine-point set with a fake Euler point",
            kind: ClaimKind::Concyclicity,
            check: MutationCheck::Construct(mut_nine_point_fake_euler),
        },
        Mutation {
            label: "erected triangles flattened to right angles",
            kind: ClaimKind::Equilaterality,
            check: MutationCheck::Construct(mut_napoleon_squashed),
        },
        Mutation {
            label: "trisector configuration with a doubled sqrt3 offset",
            kind: ClaimKind::Equilaterality,
            check: MutationCheck::Construct(mut_morley_offset),
        },
        Mutation {
            label: "triangle with its own midpoint as apex",
            kind: ClaimKind::Equilaterality,
            check: MutationCheck::Construct(mut_degenerate_equilateral),
        },
        Mutation {
            label: "nine-point circle against a doubled incircle",
            kind: ClaimKind::Tangency,
            check: MutationCheck::Construct(mut_feuerbach_scaled),
        },
        Mutation {
            label: "unit circles at a generic distance",
            kind: ClaimKind::Tangency,
            check: MutationCheck::Construct(mut_generic_distance_circles),
        },
        Mutation {
            label: "circumcircle against the incircle",
            kind: ClaimKind::Tangency,
            check: MutationCheck::Construct(mut_circumcircle_incircle),
        },
        Mutation {
            label: "curvature relation with coefficient three",
            kind: ClaimKind::GroebnerZero,
            check: MutationCheck::Soddy(mut_descartes_minus_three),
        },
        Mutation {
            label: "curvature relation with the outer curvature doubled",
            kind: ClaimKind::GroebnerZero,
            check: MutationCheck::Soddy(mut_descartes_e4_two),
        },
        Mutation {
            label: "curvature relation with the outer circle dropped",
            kind: ClaimKind::GroebnerZero,
            check: MutationCheck::Soddy(mut_descartes_drop_e4),
        },
        Mutation {
            label: "bisector difference with a trisector slope",
            kind: ClaimKind::Certificate,
            check: MutationCheck::Lehmus(mut_lehmus_trisector),
        },
        Mutation {
            label: "bisector difference with the other trisector slope",
            kind: ClaimKind::Certificate,
            check: MutationCheck::Lehmus(mut_lehmus_other_trisector),
        },
        Mutation {
            label: "bisector difference with one length doubled",
            kind: ClaimKind::Certificate,
            check: MutationCheck::Lehmus(mut_lehmus_scaled),
        },
    ]
}

fn mut_area_formula(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let lhs = (&de_sq(&a, &b) * &de_sq(&c, &foot(&c, &line_through(&a, &b)?)?))
        .div(&sess.int(5))?;
    let ar = area(&a, &b, &c);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&lhs - &(&ar * &ar)]), vec![]))
}

fn mut_ceva_sum(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = Point::origin(sess);
    let b = Point::new(sess.one(), sess.zero());
    let c = p.point("C")?;
    let o = p.point("O")?;
    let d = intersect(&line_through(&b, &c)?, &line_through(&a, &o)?)?;
    let e = intersect(&line_through(&a, &c)?, &line_through(&b, &o)?)?;
    let f = intersect(&line_through(&a, &b)?, &line_through(&c, &o)?)?;
    let lhs = &(&de_sq(&b, &d) * &de_sq(&c, &e)) * &de_sq(&a, &f);
    let rhs = &(&de_sq(&d, &c) * &de_sq(&e, &a)) * &de_sq(&f, &b);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&lhs + &rhs]), vec![]))
}

fn mut_butterfly_scaled(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut pts = Vec::with_capacity(4);
    for i in 1..=4 {
        pts.push(param_circle(&o, &r, &p.scalar(&format!("t{i}"))?)?);
    }
    let m = intersect(
        &line_through(&pts[0], &pts[2])?,
        &line_through(&pts[1], &pts[3])?,
    )?;
    let axis = crate::geometry::perp_pq(&o, &m)?;
    let x = intersect(&line_through(&pts[0], &pts[3])?, &axis)?;
    let y = intersect(&line_through(&pts[1], &pts[2])?, &axis)?;
    let claim = &de_sq(&m, &x) - &(&sess.int(2) * &de_sq(&m, &y));
    Ok(Claim::new(ClaimBody::ZeroAll(vec![claim]), vec![]))
}

fn mut_simson_off_circle(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut pts = Vec::with_capacity(3);
    for i in 1..=3 {
        pts.push(param_circle(&o, &r, &p.scalar(&format!("t{i}"))?)?);
    }
    let off = p.point("P")?;
    let feet = vec![
        foot(&off, &line_through(&pts[0], &pts[1])?)?,
        foot(&off, &line_through(&pts[1], &pts[2])?)?,
        foot(&off, &line_through(&pts[2], &pts[0])?)?,
    ];
    Ok(Claim::new(ClaimBody::Colinear(feet), vec![]))
}

fn mut_pappus_shifted(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let b = p.scalar("b")?;
    let m1 = p.scalar("m1")?;
    let b1 = p.scalar("b1")?;
    let shifted = &b1 + &sess.one();
    let on_first: Vec<Point> = (1..=3)
        .map(|i| Ok(param_line(&m, &b, &p.scalar(&format!("t{i}"))?)))
        .collect::<Result<_>>()?;
    let q1 = param_line(&m1, &b1, &p.scalar("s1")?);
    let q2 = param_line(&m1, &b1, &p.scalar("s2")?);
    let q3 = param_line(&m1, &shifted, &p.scalar("s3")?);
    let on_second = [q1, q2, q3];
    let cross = |i: usize, j: usize| -> Result<Point> {
        intersect(
            &line_through(&on_first[i], &on_second[j])?,
            &line_through(&on_first[j], &on_second[i])?,
        )
    };
    Ok(Claim::new(
        ClaimBody::Colinear(vec![cross(0, 1)?, cross(0, 2)?, cross(1, 2)?]),
        vec![],
    ))
}

fn mut_euler_line_free_point(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let free = p.point("D")?;
    Ok(Claim::new(
        ClaimBody::Colinear(vec![orthocenter(&a, &b, &c)?, circumcenter(&a, &b, &c)?, free]),
        vec![],
    ))
}

fn mut_orthocenter_median(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let lines = vec![
        crate::geometry::altitude(&a, &line_through(&b, &c)?)?,
        crate::geometry::altitude(&b, &line_through(&a, &c)?)?,
        line_through(&midpoint(&a, &b), &c)?,
    ];
    Ok(Claim::new(ClaimBody::Concurrent(lines), vec![]))
}

fn mut_centroid_third(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let third = Point::new(
        &a.x + (&(&b.x - &a.x).div(&sess.int(3))?),
        &a.y + (&(&b.y - &a.y).div(&sess.int(3))?),
    );
    let lines = vec![
        line_through(&third, &c)?,
        line_through(&midpoint(&a, &c), &b)?,
        line_through(&midpoint(&b, &c), &a)?,
    ];
    Ok(Claim::new(ClaimBody::Concurrent(lines), vec![]))
}

fn mut_incenter_wrong_bisector(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let t = standard_triangle(&m, &n)?;
    let c = &t[2];
    let l1 = Line::new(&sess.y() - &(&m * &sess.x()))?;
    let l2 = Line::new(&(&sess.y() + &(&n * &sess.x())) - &n)?;
    let wrong = tan_sum(&[m.clone(), sess.int(2).div(&n)?])?;
    let l3 = Line::new(&(&sess.y() - &c.y) - &(&(&sess.x() - &c.x) * &wrong))?;
    Ok(Claim::new(ClaimBody::Concurrent(vec![l1, l2, l3]), vec![]))
}

fn mut_nine_point_with_centroid(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let points = vec![
        midpoint(&a, &b),
        midpoint(&a, &c),
        midpoint(&b, &c),
        crate::geometry::centroid(&a, &b, &c)?,
    ];
    Ok(Claim::new(ClaimBody::Concyclic(points), vec![]))
}

fn mut_circle_points_plus_free(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut pts = Vec::with_capacity(4);
    for i in 1..=3 {
        pts.push(param_circle(&o, &r, &p.scalar(&format!("t{i}"))?)?);
    }
    pts.push(p.point("P")?);
    Ok(Claim::new(ClaimBody::Concyclic(pts), vec![]))
}

fn mut_nine_point_fake_euler(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let o = orthocenter(&a, &b, &c)?;
    let points = vec![
        midpoint(&a, &b),
        midpoint(&a, &c),
        midpoint(&b, &c),
        midpoint(&o, &midpoint(&a, &b)),
    ];
    Ok(Claim::new(ClaimBody::Concyclic(points), vec![]))
}

fn squashed_cet(sess: &Session, a: &Point, b: &Point) -> Result<Point> {
    // Height factor 1 instead of sqrt3: the circumcenters collapse onto the
    // side midpoints, so the claim degenerates to "the medial triangle is
    // equilateral".
    let two = sess.int(2);
    let scale = sess.one();
    let third = Point::new(
        &(&a.x + &b.x).div(&two)? - &(&(&a.y - &b.y) * &scale).div(&two)?,
        &(&b.y.div(&two)? + &(&(&a.x - &b.x) * &scale).div(&two)?) + &a.y.div(&two)?,
    );
    circumcenter(a, b, &third)
}

fn mut_napoleon_squashed(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    Ok(Claim::new(
        ClaimBody::Equilateral(
            squashed_cet(sess, &a, &b)?,
            squashed_cet(sess, &b, &c)?,
            squashed_cet(sess, &c, &a)?,
        ),
        vec![],
    ))
}

fn mut_morley_offset(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let double_r3 = &sess.int(2) * &sess.sqrt3();
    let c = intersect(
        &Line::new(&sess.y() - &(&tan_sum(&[m.clone(), m.clone(), m.clone()])? * &sess.x()))?,
        &Line::new(
            &sess.y()
                + &(&tan_sum(&[n.clone(), n.clone(), n.clone()])? * &(&sess.x() - &sess.one())),
        )?,
    )?;
    let d = intersect(
        &Line::new(&sess.y() - &(&m * &sess.x()))?,
        &Line::new(&(&sess.y() + &(&n * &sess.x())) - &n)?,
    )?;
    let e = intersect(
        &Line::new(&sess.y() - &(&tan_sum(&[m.clone(), m.clone()])? * &sess.x()))?,
        &Line::new(
            &(&sess.y() - &c.y)
                - &(&(&sess.x() - &c.x)
                    * &tan_sum(&[m.clone(), m.clone(), -&n, double_r3.clone()])?),
        )?,
    )?;
    let f = intersect(
        &Line::new(&sess.y() + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())))?,
        &Line::new(
            &(&sess.y() - &c.y)
                + &(&(&sess.x() - &c.x)
                    * &tan_sum(&[n.clone(), n.clone(), -&m, double_r3])?),
        )?,
    )?;
    Ok(Claim::new(ClaimBody::Equilateral(d, e, f), vec![]))
}

fn mut_degenerate_equilateral(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    Ok(Claim::new(
        ClaimBody::Equilateral(a.clone(), b.clone(), midpoint(&a, &b)),
        vec![],
    ))
}

fn mut_feuerbach_scaled(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let t = standard_triangle(&m, &n)?;
    let npc = crate::geometry::nine_point_circle(&t[0], &t[1], &t[2])?;
    let o = incenter(&m, &n)?;
    let r2 = inradius_sq(&m, &n)?;
    let dx = &sess.x() - &o.x;
    let dy = &sess.y() - &o.y;
    let scaled = Conic::new(&(&(&dx * &dx) + &(&dy * &dy)) - &(&sess.int(2) * &r2))?;
    Ok(Claim::new(ClaimBody::Touch(npc, scaled), vec![]))
}

fn mut_generic_distance_circles(sess: &Session, p: &mut Params) -> Result<Claim> {
    let d = p.scalar("d")?;
    let unit = Conic::new(&(&(&sess.x() * &sess.x()) + &(&sess.y() * &sess.y())) - &sess.one())?;
    let dx = &sess.x() - &d;
    let other = Conic::new(&(&(&dx * &dx) + &(&sess.y() * &sess.y())) - &sess.one())?;
    Ok(Claim::new(ClaimBody::Touch(unit, other), vec![]))
}

fn mut_circumcircle_incircle(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let t = standard_triangle(&m, &n)?;
    let circum = circle_through(&t[0], &t[1], &t[2])?;
    let inc = crate::geometry::incircle(&m, &n)?;
    Ok(Claim::new(ClaimBody::Touch(circum, inc), vec![]))
}

fn mut_descartes_minus_three(curv: &[NumVal; 4], tower: &Tower) -> NumVal {
    let sum = curv.iter().fold(NumVal::zero(), |acc, k| acc.add(k));
    let sum_sq = curv
        .iter()
        .fold(NumVal::zero(), |acc, k| acc.add(&k.mul(k, tower)));
    let three = NumVal::from_rational(BigRational::from_integer(3.into()));
    sum.mul(&sum, tower).sub(&three.mul(&sum_sq, tower))
}

fn mut_descartes_e4_two(curv: &[NumVal; 4], tower: &Tower) -> NumVal {
    let two = NumVal::from_rational(BigRational::from_integer(2.into()));
    let mutated = [two.clone(), curv[1].clone(), curv[2].clone(), curv[3].clone()];
    descartes_residual(&mutated, tower)
}

fn mut_descartes_drop_e4(curv: &[NumVal; 4], tower: &Tower) -> NumVal {
    let zero = NumVal::zero();
    let mutated = [zero, curv[1].clone(), curv[2].clone(), curv[3].clone()];
    descartes_residual(&mutated, tower)
}

fn mut_lehmus_trisector(sess: &Session, m: &Scalar, n: &Scalar) -> Result<Scalar> {
    let n_pt = intersect(
        &Line::new(&sess.y() - &(&tan_sum(&[m.clone(), m.clone(), m.clone()])? * &sess.x()))?,
        &Line::new(&sess.y() + &(n * &(&sess.x() - &sess.one())))?,
    )?;
    let m_pt = intersect(
        &Line::new(&sess.y() - &(m * &sess.x()))?,
        &Line::new(&sess.y() + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())))?,
    )?;
    let unit = Point::new(sess.one(), sess.zero());
    Ok(&de_sq(&unit, &n_pt) - &de_sq(&Point::origin(sess), &m_pt))
}

fn mut_lehmus_other_trisector(sess: &Session, m: &Scalar, n: &Scalar) -> Result<Scalar> {
    let n_pt = intersect(
        &Line::new(&sess.y() - &(&tan_sum(&[m.clone(), m.clone()])? * &sess.x()))?,
        &Line::new(&sess.y() + &(n * &(&sess.x() - &sess.one())))?,
    )?;
    let m_pt = intersect(
        &Line::new(&sess.y() - &(m * &sess.x()))?,
        &Line::new(
            &sess.y()
                + &(&tan_sum(&[n.clone(), n.clone(), n.clone()])? * &(&sess.x() - &sess.one())),
        )?,
    )?;
    let unit = Point::new(sess.one(), sess.zero());
    Ok(&de_sq(&unit, &n_pt) - &de_sq(&Point::origin(sess), &m_pt))
}

fn mut_lehmus_scaled(sess: &Session, m: &Scalar, n: &Scalar) -> Result<Scalar> {
    let base = lehmus_difference(sess, m, n)?;
    let doubled_term = &sess.int(2)
        * &de_sq(
            &Point::origin(sess),
            &intersect(
                &Line::new(&sess.y() - &(m * &sess.x()))?,
                &Line::new(
                    &sess.y()
                        + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())),
                )?,
            )?,
        );
    Ok(&base - &doubled_term)
}
