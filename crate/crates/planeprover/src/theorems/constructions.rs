//! The construction programs behind the catalog, one per theorem.  These
//! transcribe the classical statements onto the geometry primitives,
//! including the original WLOG coordinate choices.

use crate::error::{Error, Result};
use crate::geometry::{
    altitude, area, cet, circle_through, circumcenter, circumradius_sq, de_sq, de_sq_g, foot,
    incenter, incircle, inradius_sq, intersect, line_through, midpoint, mirror_origin,
    nine_point_circle, orthocenter, param_circle, param_ellipse, param_line, perp_pq, quad,
    radius_sq, standard_triangle, tan_sum, tangent_to_ellipse, tc_ces_out, Line, Point,
};
use crate::groebner::{MonomialOrder, PolyIdeal};
use crate::kernel::{det::determinant, Scalar, Session};

use super::{Claim, ClaimBody, ClaimKind, Params, TheoremRecord, Verdict};

pub(crate) static CATALOG: &[TheoremRecord] = &[
    TheoremRecord {
        id: "AreaFormula",
        title: "Squared area equals base squared times height squared over four",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: area_formula,
    },
    TheoremRecord {
        id: "Brianchon",
        title: "Principal diagonals of a hexagon circumscribed about a conic concur",
        kind: ClaimKind::Concurrency,
        expected: Verdict::Proved,
        construct: brianchon,
    },
    TheoremRecord {
        id: "Butterfly",
        title: "A chord through the midpoint of another is bisected there",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: butterfly,
    },
    TheoremRecord {
        id: "CentroidExists",
        title: "The three medians of a triangle concur",
        kind: ClaimKind::Concurrency,
        expected: Verdict::Proved,
        construct: centroid_exists,
    },
    TheoremRecord {
        id: "Ceva",
        title: "Product identity for cevians through a common point",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: ceva,
    },
    TheoremRecord {
        id: "Desargues",
        title: "Perspective triangles have colinear side intersections",
        kind: ClaimKind::Colinearity,
        expected: Verdict::Proved,
        construct: desargues,
    },
    TheoremRecord {
        id: "EulerLineExists",
        title: "Orthocenter, circumcenter and centroid are colinear",
        kind: ClaimKind::Colinearity,
        expected: Verdict::Proved,
        construct: euler_line_exists,
    },
    TheoremRecord {
        id: "EulerTetrahedronVolumeFormula",
        title: "Bordered distance determinant equals 288 times the squared volume",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: euler_tetrahedron,
    },
    TheoremRecord {
        id: "EulerTriangleFormula",
        title: "Distance between incenter and circumcenter: d^2 = R^2 - 2rR",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: euler_triangle,
    },
    TheoremRecord {
        id: "Feuerbach",
        title: "The nine-point circle touches the incircle",
        kind: ClaimKind::Tangency,
        expected: Verdict::Proved,
        construct: feuerbach,
    },
    TheoremRecord {
        id: "FoxTalbot",
        title: "Midline construction over five lines concurs",
        kind: ClaimKind::Concurrency,
        expected: Verdict::Proved,
        construct: fox_talbot,
    },
    TheoremRecord {
        id: "Herron",
        title: "Squared area from the semi-perimeter product",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: herron,
    },
    TheoremRecord {
        id: "IncenterExists",
        title: "The three angle bisectors concur",
        kind: ClaimKind::Concurrency,
        expected: Verdict::Proved,
        construct: incenter_exists,
    },
    TheoremRecord {
        id: "Johnson",
        title: "Three congruent circles through a point: the other triple point lies on a congruent circle",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: johnson,
    },
    TheoremRecord {
        id: "Lehmus",
        title: "Equal internal bisectors force an isosceles triangle (certificate)",
        kind: ClaimKind::Certificate,
        expected: Verdict::Certificate,
        construct: lehmus,
    },
    TheoremRecord {
        id: "Menelaus",
        title: "Product identity for a transversal of a triangle",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: menelaus,
    },
    TheoremRecord {
        id: "Morley",
        title: "Adjacent angle trisectors meet in an equilateral triangle",
        kind: ClaimKind::Equilaterality,
        expected: Verdict::Proved,
        construct: morley,
    },
    TheoremRecord {
        id: "Napoleon",
        title: "Centers of equilateral triangles erected on the sides form an equilateral triangle",
        kind: ClaimKind::Equilaterality,
        expected: Verdict::Proved,
        construct: napoleon,
    },
    TheoremRecord {
        id: "NinePointCircleExists",
        title: "Feet, midpoints and Euler points are concyclic",
        kind: ClaimKind::Concyclicity,
        expected: Verdict::Proved,
        construct: nine_point_circle_exists,
    },
    TheoremRecord {
        id: "OrthocenterExists",
        title: "The three altitudes concur",
        kind: ClaimKind::Concurrency,
        expected: Verdict::Proved,
        construct: orthocenter_exists,
    },
    TheoremRecord {
        id: "Pappus",
        title: "Cross joins of points on two lines are colinear",
        kind: ClaimKind::Colinearity,
        expected: Verdict::Proved,
        construct: pappus,
    },
    TheoremRecord {
        id: "Pascal",
        title: "Cross joins of points on a conic are colinear",
        kind: ClaimKind::Colinearity,
        expected: Verdict::Proved,
        construct: pascal,
    },
    TheoremRecord {
        id: "Ptolemy",
        title: "Chord-product relation for concyclic quadrilaterals",
        kind: ClaimKind::ZeroIdentity,
        expected: Verdict::Proved,
        construct: ptolemy,
    },
    TheoremRecord {
        id: "Simson",
        title: "Feet of perpendiculars from a circle point are colinear",
        kind: ClaimKind::Colinearity,
        expected: Verdict::Proved,
        construct: simson,
    },
    TheoremRecord {
        id: "Soddy",
        title: "Curvature relation for four mutually tangent circles",
        kind: ClaimKind::GroebnerZero,
        expected: Verdict::Proved,
        construct: soddy,
    },
];

fn line(form: Scalar) -> Result<Line> {
    Line::new(form)
}

fn area_formula(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let base_sq = de_sq(&a, &b);
    let height_sq = de_sq(&c, &foot(&c, &line_through(&a, &b)?)?);
    let lhs = (&base_sq * &height_sq).div(&sess.int(4))?;
    let ar = area(&a, &b, &c);
    let rhs = &ar * &ar;
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&lhs - &rhs]), vec![lhs, rhs]))
}

fn brianchon(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let c = p.point("c")?;
    let d = (p.scalar("d1")?, p.scalar("d2")?);
    let mut tangents = Vec::with_capacity(6);
    for i in 0..6 {
        let t = p.scalar(&format!("t{i}"))?;
        tangents.push(tangent_to_ellipse(&c, &d, &t)?);
    }
    let mut corners = Vec::with_capacity(6);
    for i in 0..6 {
        corners.push(intersect(&tangents[i], &tangents[(i + 1) % 6])?);
    }
    let diagonals = vec![
        line_through(&corners[0], &corners[3])?,
        line_through(&corners[1], &corners[4])?,
        line_through(&corners[2], &corners[5])?,
    ];
    Ok(Claim::new(ClaimBody::Concurrent(diagonals), vec![]))
}

fn butterfly(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut pts = Vec::with_capacity(4);
    for i in 1..=4 {
        let t = p.scalar(&format!("t{i}"))?;
        pts.push(param_circle(&o, &r, &t)?);
    }
    let m = intersect(
        &line_through(&pts[0], &pts[2])?,
        &line_through(&pts[1], &pts[3])?,
    )?;
    let axis = perp_pq(&o, &m)?;
    let x = intersect(&line_through(&pts[0], &pts[3])?, &axis)?;
    let y = intersect(&line_through(&pts[1], &pts[2])?, &axis)?;
    let dx = de_sq(&m, &x);
    let dy = de_sq(&m, &y);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&dx - &dy]), vec![dx, dy]))
}

fn centroid_exists(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let medians = vec![
        line_through(&midpoint(&a, &b), &c)?,
        line_through(&midpoint(&a, &c), &b)?,
        line_through(&midpoint(&b, &c), &a)?,
    ];
    Ok(Claim::new(ClaimBody::Concurrent(medians), vec![]))
}

fn ceva(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = Point::origin(sess);
    let b = Point::new(sess.one(), sess.zero());
    let c = p.point("C")?;
    let o = p.point("O")?;
    let d = intersect(&line_through(&b, &c)?, &line_through(&a, &o)?)?;
    let e = intersect(&line_through(&a, &c)?, &line_through(&b, &o)?)?;
    let f = intersect(&line_through(&a, &b)?, &line_through(&c, &o)?)?;
    let lhs = &(&de_sq(&b, &d) * &de_sq(&c, &e)) * &de_sq(&a, &f);
    let rhs = &(&de_sq(&d, &c) * &de_sq(&e, &a)) * &de_sq(&f, &b);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&lhs - &rhs]), vec![lhs, rhs]))
}

fn desargues(sess: &Session, p: &mut Params) -> Result<Claim> {
    let zero = sess.zero();
    let mut first = Vec::with_capacity(3);
    let mut second = Vec::with_capacity(3);
    for i in 1..=3 {
        let m = p.scalar(&format!("m{i}"))?;
        let t = p.scalar(&format!("t{i}"))?;
        let s = p.scalar(&format!("s{i}"))?;
        first.push(param_line(&m, &zero, &t));
        second.push(param_line(&m, &zero, &s));
    }
    let cross = |i: usize, j: usize| -> Result<Point> {
        intersect(
            &line_through(&first[i], &first[j])?,
            &line_through(&second[i], &second[j])?,
        )
    };
    Ok(Claim::new(
        ClaimBody::Colinear(vec![cross(0, 1)?, cross(0, 2)?, cross(1, 2)?]),
        vec![],
    ))
}

fn euler_line_exists(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    Ok(Claim::new(
        ClaimBody::Colinear(vec![
            orthocenter(&a, &b, &c)?,
            circumcenter(&a, &b, &c)?,
            crate::geometry::centroid(&a, &b, &c)?,
        ]),
        vec![],
    ))
}

fn euler_tetrahedron(sess: &Session, p: &mut Params) -> Result<Claim> {
    let p31 = p.scalar("p31")?;
    let p32 = p.scalar("p32")?;
    let p41 = p.scalar("p41")?;
    let p42 = p.scalar("p42")?;
    let p43 = p.scalar("p43")?;
    let zero = sess.zero();
    let one = sess.one();
    let v1 = [zero.clone(), zero.clone(), zero.clone()];
    let v2 = [one.clone(), zero.clone(), zero.clone()];
    let v3 = [p31.clone(), p32.clone(), zero.clone()];
    let v4 = [p41.clone(), p42.clone(), p43.clone()];
    let pp = de_sq_g(&v1, &v4, 3)?;
    let qq = de_sq_g(&v2, &v4, 3)?;
    let rr = de_sq_g(&v3, &v4, 3)?;
    let aa = de_sq_g(&v2, &v3, 3)?;
    let bb = de_sq_g(&v3, &v1, 3)?;
    let cc = de_sq_g(&v1, &v2, 3)?;
    let base = area(
        &Point::new(p31.clone(), p32.clone()),
        &Point::new(one.clone(), zero.clone()),
        &Point::origin(sess),
    );
    let vol = (&base * &p43).div(&sess.int(3))?;
    let matrix = vec![
        vec![zero.clone(), pp.clone(), qq.clone(), rr.clone(), one.clone()],
        vec![pp.clone(), zero.clone(), cc.clone(), bb.clone(), one.clone()],
        vec![qq.clone(), cc.clone(), zero.clone(), aa.clone(), one.clone()],
        vec![rr.clone(), bb.clone(), aa.clone(), zero.clone(), one.clone()],
        vec![one.clone(), one.clone(), one.clone(), one.clone(), zero.clone()],
    ];
    let det = determinant(sess, &matrix)?;
    let ratio = det
        .div(&(&vol * &vol))?
        .div(&sess.int(288))?;
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&ratio - &one]), vec![det, vol]))
}

fn euler_triangle(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let t = standard_triangle(&m, &n)?;
    let o = incenter(&m, &n)?;
    let i1 = circumcenter(&t[0], &t[1], &t[2])?;
    let r_small = sess.sqrt(&inradius_sq(&m, &n)?)?;
    let r_big = sess.sqrt(&circumradius_sq(&t[0], &t[1], &t[2])?)?;
    let d = sess.sqrt(&de_sq(&o, &i1))?;
    let d2 = &d * &d;
    let r2 = &r_big * &r_big;
    let inner = &d2 - &r2;
    let four = sess.int(4);
    let claim = &(&inner * &inner)
        - &(&(&four * &(&r_small * &r_small)) * &r2);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![claim]), vec![d2, r2]))
}

fn feuerbach(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let t = standard_triangle(&m, &n)?;
    let npc = nine_point_circle(&t[0], &t[1], &t[2])?;
    let inc = incircle(&m, &n)?;
    Ok(Claim::new(ClaimBody::Touch(npc, inc), vec![]))
}

fn fox_talbot(sess: &Session, p: &mut Params) -> Result<Claim> {
    let mut lines = vec![line(sess.x())?];
    for i in 2..=5 {
        let a = p.scalar(&format!("a{i}"))?;
        let b = p.scalar(&format!("b{i}"))?;
        let c = p.scalar(&format!("c{i}"))?;
        lines.push(line(&(&(&a * &sess.x()) + &(&b * &sess.y())) + &c)?);
    }
    let mut midlines = Vec::with_capacity(5);
    for i in 0..5 {
        let others: Vec<&Line> = (0..5).filter(|&j| j != i).map(|j| &lines[j]).collect();
        let q = quad(others[0], others[1], others[2], others[3])?;
        midlines.push(line_through(&midpoint(&q[0], &q[2]), &midpoint(&q[1], &q[3]))?);
    }
    Ok(Claim::new(ClaimBody::Concurrent(midlines), vec![]))
}

fn herron(sess: &Session, p: &mut Params) -> Result<Claim> {
    let b1 = p.scalar("b1")?;
    let a2 = p.scalar("a2")?;
    let b2 = p.scalar("b2")?;
    let a_pt = Point::origin(sess);
    let b_pt = Point::new(sess.zero(), b1);
    let c_pt = Point::new(a2, b2);
    let a = sess.sqrt(&de_sq(&b_pt, &c_pt))?;
    let b = sess.sqrt(&de_sq(&a_pt, &c_pt))?;
    let c = sess.sqrt(&de_sq(&a_pt, &b_pt))?;
    let two = sess.int(2);
    let s = (&(&a + &b) + &c).div(&two)?;
    let product = &(&(&s * &(&s - &a)) * &(&s - &b)) * &(&s - &c);
    let ar = area(&a_pt, &b_pt, &c_pt);
    let claim = &(&ar * &ar) - &product;
    Ok(Claim::new(ClaimBody::ZeroAll(vec![claim]), vec![product, ar]))
}

fn incenter_exists(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let t = standard_triangle(&m, &n)?;
    let c = &t[2];
    let l1 = line(&sess.y() - &(&m * &sess.x()))?;
    let l2 = line(&(&sess.y() + &(&n * &sess.x())) - &n)?;
    let bisector = tan_sum(&[m.clone(), sess.one().div(&n)?])?;
    let l3 = line(&(&sess.y() - &c.y) - &(&(&sess.x() - &c.x) * &bisector))?;
    Ok(Claim::new(ClaimBody::Concurrent(vec![l1, l2, l3]), vec![]))
}

fn johnson(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut on_circles = Vec::with_capacity(3);
    for i in 0..3 {
        let t = p.scalar(&format!("t{i}"))?;
        on_circles.push(param_circle(&o, &r, &t)?);
    }
    let mut mirrored = Vec::with_capacity(3);
    for i in 0..3 {
        mirrored.push(mirror_origin(&on_circles[i], &on_circles[(i + 1) % 3])?);
    }
    let circ = circle_through(&mirrored[0], &mirrored[1], &mirrored[2])?;
    let claim = &radius_sq(&circ)? - &(&r * &r);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![claim]), vec![circ.form().clone()]))
}

fn lehmus(sess: &Session, p: &mut Params) -> Result<Claim> {
    if p.is_numeric() {
        return Err(Error::InternalInconsistency(
            "the certificate claim is checked numerically by the oracle".into(),
        ));
    }
    let m_var = sess.param("m")?;
    let n_var = sess.param("n")?;
    let m = sess.var_scalar(m_var);
    let n = sess.var_scalar(n_var);
    let n_pt = intersect(
        &line(&sess.y() - &(&tan_sum(&[m.clone(), m.clone()])? * &sess.x()))?,
        &line(&sess.y() + &(&n * &(&sess.x() - &sess.one())))?,
    )?;
    let m_pt = intersect(
        &line(&sess.y() - &(&m * &sess.x()))?,
        &line(&sess.y() + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())))?,
    )?;
    let unit = Point::new(sess.one(), sess.zero());
    let difference = &de_sq(&unit, &n_pt) - &de_sq(&Point::origin(sess), &m_pt);
    let divisor = &m - &n;
    Ok(Claim::new(
        ClaimBody::Certificate { difference: difference.clone(), divisor, m: m_var, n: n_var },
        vec![difference],
    ))
}

fn menelaus(sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let m = p.scalar("m")?;
    let bb = p.scalar("b")?;
    let transversal = line(&(&sess.y() - &(&m * &sess.x())) - &bb)?;
    let x = intersect(&line_through(&b, &c)?, &transversal)?;
    let y = intersect(&line_through(&a, &c)?, &transversal)?;
    let z = intersect(&line_through(&a, &b)?, &transversal)?;
    let lhs = &(&de_sq(&b, &x) * &de_sq(&c, &y)) * &de_sq(&a, &z);
    let rhs = &(&de_sq(&c, &x) * &de_sq(&a, &y)) * &de_sq(&b, &z);
    Ok(Claim::new(ClaimBody::ZeroAll(vec![&lhs - &rhs]), vec![lhs, rhs]))
}

fn morley(sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let n = p.scalar("n")?;
    let r3 = sess.sqrt3();
    let c = intersect(
        &line(&sess.y() - &(&tan_sum(&[m.clone(), m.clone(), m.clone()])? * &sess.x()))?,
        &line(
            &sess.y()
                + &(&tan_sum(&[n.clone(), n.clone(), n.clone()])? * &(&sess.x() - &sess.one())),
        )?,
    )?;
    let d = intersect(
        &line(&sess.y() - &(&m * &sess.x()))?,
        &line(&(&sess.y() + &(&n * &sess.x())) - &n)?,
    )?;
    let e = intersect(
        &line(&sess.y() - &(&tan_sum(&[m.clone(), m.clone()])? * &sess.x()))?,
        &line(
            &(&sess.y() - &c.y)
                - &(&(&sess.x() - &c.x) * &tan_sum(&[m.clone(), m.clone(), -&n, r3.clone()])?),
        )?,
    )?;
    let f = intersect(
        &line(&sess.y() + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())))?,
        &line(
            &(&sess.y() - &c.y)
                + &(&(&sess.x() - &c.x) * &tan_sum(&[n.clone(), n.clone(), -&m, r3.clone()])?),
        )?,
    )?;
    Ok(Claim::new(ClaimBody::Equilateral(d, e, f), vec![]))
}

fn napoleon(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    Ok(Claim::new(
        ClaimBody::Equilateral(cet(&a, &b)?, cet(&b, &c)?, cet(&c, &a)?),
        vec![],
    ))
}

fn nine_point_circle_exists(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let o = orthocenter(&a, &b, &c)?;
    let points = vec![
        foot(&a, &line_through(&b, &c)?)?,
        foot(&b, &line_through(&a, &c)?)?,
        foot(&c, &line_through(&a, &b)?)?,
        midpoint(&a, &b),
        midpoint(&a, &c),
        midpoint(&b, &c),
        midpoint(&o, &a),
        midpoint(&o, &b),
        midpoint(&o, &c),
    ];
    Ok(Claim::new(ClaimBody::Concyclic(points), vec![]))
}

fn orthocenter_exists(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let a = p.point("A")?;
    let b = p.point("B")?;
    let c = p.point("C")?;
    let alts = vec![
        altitude(&a, &line_through(&b, &c)?)?,
        altitude(&b, &line_through(&a, &c)?)?,
        altitude(&c, &line_through(&a, &b)?)?,
    ];
    Ok(Claim::new(ClaimBody::Concurrent(alts), vec![]))
}

fn pappus(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let m = p.scalar("m")?;
    let b = p.scalar("b")?;
    let m1 = p.scalar("m1")?;
    let b1 = p.scalar("b1")?;
    let mut on_first = Vec::with_capacity(3);
    let mut on_second = Vec::with_capacity(3);
    for i in 1..=3 {
        on_first.push(param_line(&m, &b, &p.scalar(&format!("t{i}"))?));
        on_second.push(param_line(&m1, &b1, &p.scalar(&format!("s{i}"))?));
    }
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

fn pascal(_sess: &Session, p: &mut Params) -> Result<Claim> {
    let c = p.point("c")?;
    let d = (p.scalar("d1")?, p.scalar("d2")?);
    let mut on_first = Vec::with_capacity(3);
    let mut on_second = Vec::with_capacity(3);
    for i in 1..=3 {
        on_first.push(param_ellipse(&c, &d, &p.scalar(&format!("t{i}"))?)?);
        on_second.push(param_ellipse(&c, &d, &p.scalar(&format!("s{i}"))?)?);
    }
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

fn ptolemy(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut pts = Vec::with_capacity(4);
    for i in 1..=4 {
        pts.push(param_circle(&o, &r, &p.scalar(&format!("t{i}"))?)?);
    }
    let a = &de_sq(&pts[0], &pts[1]) * &de_sq(&pts[2], &pts[3]);
    let b = &de_sq(&pts[1], &pts[2]) * &de_sq(&pts[3], &pts[0]);
    let c = &de_sq(&pts[0], &pts[2]) * &de_sq(&pts[1], &pts[3]);
    // sqrt(a) + sqrt(b) = sqrt(c), squared twice.
    let lhs = &(&c - &a) - &b;
    let four_ab = &(&sess.int(4) * &a) * &b;
    let claim = &(&lhs * &lhs) - &four_ab;
    Ok(Claim::new(ClaimBody::ZeroAll(vec![claim]), vec![a, b, c]))
}

fn simson(sess: &Session, p: &mut Params) -> Result<Claim> {
    let r = p.scalar("R")?;
    let o = Point::origin(sess);
    let mut pts = Vec::with_capacity(4);
    for i in 1..=4 {
        pts.push(param_circle(&o, &r, &p.scalar(&format!("t{i}"))?)?);
    }
    let feet = vec![
        foot(&pts[3], &line_through(&pts[0], &pts[1])?)?,
        foot(&pts[3], &line_through(&pts[1], &pts[2])?)?,
        foot(&pts[3], &line_through(&pts[2], &pts[0])?)?,
    ];
    Ok(Claim::new(ClaimBody::Colinear(feet), vec![]))
}

fn soddy(sess: &Session, p: &mut Params) -> Result<Claim> {
    if p.is_numeric() {
        return Err(Error::InternalInconsistency(
            "the curvature claim is checked numerically by the oracle".into(),
        ));
    }
    let d1 = sess.param("d1")?;
    let e1 = sess.param("e1")?;
    let d2 = sess.param("d2")?;
    let e2 = sess.param("e2")?;
    let r = sess.param("r")?;
    let s = sess.param("s")?;
    let t = sess.param("t")?;
    let sv = |v| sess.var_scalar(v);
    let one = sess.one();
    let c_center = Point::new(&sv(r) + &one, sess.zero());
    let d_center = Point::new(sv(d1), sv(d2));
    let e_center = Point::new(sv(e1), sv(e2));
    let origin = Point::origin(sess);
    let conditions = [
        tc_ces_out(&c_center, &sv(r), &d_center, &sv(s)),
        tc_ces_out(&c_center, &sv(r), &e_center, &sv(t)),
        tc_ces_out(&d_center, &sv(s), &e_center, &sv(t)),
        tc_ces_out(&origin, &one, &c_center, &sv(r)),
        tc_ces_out(&origin, &one, &d_center, &sv(s)),
        tc_ces_out(&origin, &one, &e_center, &sv(t)),
    ];
    let order = MonomialOrder::grevlex(vec![d1, e1, d2, e2, r, s, t]);
    let generators = conditions.iter().map(|c| {
        debug_assert!(c.den_poly().is_one());
        c.num_poly().clone()
    });
    let ideal = PolyIdeal::new(generators.collect(), order);
    // Descartes residual with curvatures 1, 1/r, 1/s, 1/t.
    let curv = [one.clone(), sv(r).recip()?, sv(s).recip()?, sv(t).recip()?];
    let sum = curv.iter().fold(sess.zero(), |acc, e| &acc + e);
    let sum_sq = curv.iter().fold(sess.zero(), |acc, e| &acc + &(e * e));
    let residual = &(&sum * &sum) - &(&sess.int(2) * &sum_sq);
    let target = residual.num_poly().clone();
    Ok(Claim::new(
        ClaimBody::GroebnerZero { ideal, target },
        vec![residual],
    ))
}
