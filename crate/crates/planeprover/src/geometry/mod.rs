//! Plane-geometry construction primitives over kernel scalars.  Points are
//! coordinate pairs, lines are degree-1 polynomials in the distinguished
//! variables x, y, and conics are degree-2 polynomials; circles are monic in
//! x^2 + y^2.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::{solve_linear, Scalar, Session, SolveStatus, VarId, VAR_X, VAR_Y};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Point {
        Point { x, y }
    }

    pub fn origin(sess: &Session) -> Point {
        Point { x: sess.zero(), y: sess.zero() }
    }

    pub fn session(&self) -> &Session {
        self.x.session()
    }
}

/// A line `a*x + b*y + c` with scalar coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    form: Scalar,
}

impl Line {
    pub fn new(form: Scalar) -> Result<Line> {
        let deg = xy_degree(&form);
        if deg != 1 || form.den_poly().contains_var(VAR_X) || form.den_poly().contains_var(VAR_Y) {
            return Err(Error::Shape(format!(
                "line form must have total degree 1 in x, y (got {deg})"
            )));
        }
        Ok(Line { form })
    }

    pub fn form(&self) -> &Scalar {
        &self.form
    }

    pub fn coeff_x(&self) -> Scalar {
        self.form.coeff(VAR_X, 1).expect("line denominators are free of x")
    }

    pub fn coeff_y(&self) -> Scalar {
        self.form.coeff(VAR_Y, 1).expect("line denominators are free of y")
    }
}

/// A conic `form = 0` of total degree 2 in x, y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic {
    form: Scalar,
}

impl Conic {
    pub fn new(form: Scalar) -> Result<Conic> {
        let deg = xy_degree(&form);
        if deg != 2 || form.den_poly().contains_var(VAR_X) || form.den_poly().contains_var(VAR_Y) {
            return Err(Error::Shape(format!(
                "conic form must have total degree 2 in x, y (got {deg})"
            )));
        }
        Ok(Conic { form })
    }

    pub fn form(&self) -> &Scalar {
        &self.form
    }
}

fn xy_degree(s: &Scalar) -> u32 {
    s.num_poly()
        .terms()
        .map(|(m, _)| m.exponent(VAR_X) + m.exponent(VAR_Y))
        .max()
        .unwrap_or(0)
}

fn xy_binding(sess: &Session, p: &Point) -> BTreeMap<VarId, Scalar> {
    let _ = sess;
    let mut b = BTreeMap::new();
    b.insert(VAR_X, p.x.clone());
    b.insert(VAR_Y, p.y.clone());
    b
}

/// Evaluate a curve form at a point.
pub fn at_point(form: &Scalar, p: &Point) -> Result<Scalar> {
    form.substitute(&xy_binding(p.session(), p))
}

/// Register a free symbolic point with coordinates `<name>1`, `<name>2`.
pub fn named_point(sess: &Session, name: &str) -> Result<Point> {
    let x = sess.param(&format!("{name}1"))?;
    let y = sess.param(&format!("{name}2"))?;
    Ok(Point::new(sess.var_scalar(x), sess.var_scalar(y)))
}

/// Signed area of the triangle ABC.
pub fn area(a: &Point, b: &Point, c: &Point) -> Scalar {
    let sess = a.session();
    let t = &(&(&b.x * &c.y) - &(&b.y * &c.x)) - &(&a.x * &c.y);
    let t = &(&t + &(&a.y * &c.x)) - &(&b.x * &a.y);
    let t = &t + &(&b.y * &a.x);
    t.div(&sess.int(2)).expect("2 is nonzero")
}

/// Squared distance between two points.
pub fn de_sq(a: &Point, b: &Point) -> Scalar {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &(&dx * &dx) + &(&dy * &dy)
}

/// Squared distance in `dim`-dimensional space.
pub fn de_sq_g(a: &[Scalar], b: &[Scalar], dim: usize) -> Result<Scalar> {
    if a.len() < dim || b.len() < dim || dim == 0 {
        return Err(Error::Shape(format!(
            "de_sq_g over dimension {dim} with points of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let sess = a[0].session();
    let mut acc = sess.zero();
    for k in 0..dim {
        let d = &a[k] - &b[k];
        acc = &acc + &(&d * &d);
    }
    Ok(acc)
}

/// The line joining A and B, exactly `area(A, B, [x, y])`.
pub fn line_through(a: &Point, b: &Point) -> Result<Line> {
    if a == b {
        return Err(Error::Shape("line through structurally identical points".into()));
    }
    let sess = a.session();
    let generic = Point::new(sess.x(), sess.y());
    let line = Line::new(area(a, b, &generic))?;
    sess.trace_with(|| format!("line: {}", line.form()));
    Ok(line)
}

/// Slope of the line joining A and B.
pub fn slope(a: &Point, b: &Point) -> Result<Scalar> {
    let den = &b.x - &a.x;
    if den.is_zero() {
        return Err(Error::Pole);
    }
    (&b.y - &a.y).div(&den)
}

pub fn midpoint(a: &Point, b: &Point) -> Point {
    let sess = a.session();
    let two = sess.int(2);
    Point::new(
        (&a.x + &b.x).div(&two).expect("2 is nonzero"),
        (&a.y + &b.y).div(&two).expect("2 is nonzero"),
    )
}

/// Perpendicular to `l` through `p`.
pub fn altitude(p: &Point, l: &Line) -> Result<Line> {
    let sess = p.session();
    let a = l.coeff_x();
    let b = l.coeff_y();
    let form = &(&a * &(&sess.y() - &p.y)) - &(&b * &(&sess.x() - &p.x));
    Line::new(form)
}

/// Projection of `p` onto `l`.
pub fn foot(p: &Point, l: &Line) -> Result<Point> {
    intersect(&altitude(p, l)?, l)
}

/// Line through Q perpendicular to PQ.
pub fn perp_pq(p: &Point, q: &Point) -> Result<Line> {
    let sess = p.session();
    let form = &(&(&sess.y() - &q.y) * &(&p.y - &q.y)) + &(&(&sess.x() - &q.x) * &(&p.x - &q.x));
    Line::new(form)
}

/// Perpendicular bisector: line through the midpoint of PQ, perpendicular to it.
pub fn perp_mid(p: &Point, q: &Point) -> Result<Line> {
    perp_pq(p, &midpoint(p, q))
}

/// Mirror image of the origin in the line AB.
pub fn mirror_origin(a: &Point, b: &Point) -> Result<Point> {
    let sess = a.session();
    let q = foot(&Point::origin(sess), &line_through(a, b)?)?;
    let two = sess.int(2);
    Ok(Point::new(&two * &q.x, &two * &q.y))
}

/// Mirror image of `p` in the line `l` (translate, reflect the origin,
/// translate back).
pub fn mirror_pt_line(p: &Point, l: &Line) -> Result<Point> {
    let sess = p.session();
    let mut shift = BTreeMap::new();
    shift.insert(VAR_X, &sess.x() + &p.x);
    shift.insert(VAR_Y, &sess.y() + &p.y);
    let shifted = Line::new(l.form().substitute(&shift)?)?;
    let q = foot(&Point::origin(sess), &shifted)?;
    let two = sess.int(2);
    Ok(Point::new(&(&two * &q.x) + &p.x, &(&two * &q.y) + &p.y))
}

/// Intersection point of two lines.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Point> {
    let sess = l1.form().session();
    let sol = solve_linear(sess, &[l1.form().clone(), l2.form().clone()], &[VAR_X, VAR_Y])?;
    if sol.status != SolveStatus::Unique {
        return Err(Error::DegenerateIntersection);
    }
    let p = Point::new(sol.bindings[&VAR_X].clone(), sol.bindings[&VAR_Y].clone());
    sess.trace_with(|| format!("point: [{}, {}]", p.x, p.y));
    Ok(p)
}

/// The quadrilateral cut out by four lines.
pub fn quad(l1: &Line, l2: &Line, l3: &Line, l4: &Line) -> Result<[Point; 4]> {
    Ok([
        intersect(l1, l2)?,
        intersect(l2, l3)?,
        intersect(l3, l4)?,
        intersect(l4, l1)?,
    ])
}

/// Common point of the lines; requires a consistent system, and verifies the
/// solution against every input line.
pub fn concurrency_point(lines: &[Line]) -> Result<Point> {
    if lines.is_empty() {
        return Err(Error::Shape("concurrency of no lines".into()));
    }
    let sess = lines[0].form().session();
    let forms: Vec<Scalar> = lines.iter().map(|l| l.form().clone()).collect();
    let sol = solve_linear(sess, &forms, &[VAR_X, VAR_Y])?;
    if sol.status == SolveStatus::Inconsistent {
        return Err(Error::NoCommonPoint);
    }
    // Unbound coordinates stay symbolic, matching a parametric solution.
    let px = sol.bindings.get(&VAR_X).cloned().unwrap_or_else(|| sess.x());
    let py = sol.bindings.get(&VAR_Y).cloned().unwrap_or_else(|| sess.y());
    let p = Point::new(px, py);
    for l in lines {
        if !at_point(l.form(), &p)?.is_zero() {
            return Err(Error::InternalInconsistency(
                "solved concurrency point misses an input line".into(),
            ));
        }
    }
    sess.trace_with(|| format!("point: [{}, {}]", p.x, p.y));
    Ok(p)
}

/// Do the lines share at least one common point?
pub fn concurrent(lines: &[Line]) -> Result<bool> {
    if lines.is_empty() {
        return Err(Error::Shape("concurrency of no lines".into()));
    }
    let sess = lines[0].form().session();
    let forms: Vec<Scalar> = lines.iter().map(|l| l.form().clone()).collect();
    let sol = solve_linear(sess, &forms, &[VAR_X, VAR_Y])?;
    Ok(sol.status != SolveStatus::Inconsistent)
}

/// Are all points on one line?  Needs at least two points.
pub fn colinear(points: &[Point]) -> Result<bool> {
    if points.len() < 2 {
        return Err(Error::Shape("need at least two points".into()));
    }
    for p in &points[2..] {
        if !area(&points[0], &points[1], p).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The monic circle `x^2 + y^2 + a*x + b*y + c` through three points.
pub fn circle_through(p1: &Point, p2: &Point, p3: &Point) -> Result<Conic> {
    let sess = p1.session();
    let a = sess.fresh_param("a");
    let b = sess.fresh_param("b");
    let c = sess.fresh_param("c");
    let template = {
        let (x, y) = (sess.x(), sess.y());
        let sq = &(&x * &x) + &(&y * &y);
        let lin = &(&sess.var_scalar(a) * &x) + &(&sess.var_scalar(b) * &y);
        &(&sq + &lin) + &sess.var_scalar(c)
    };
    let eqs: Result<Vec<Scalar>> =
        [p1, p2, p3].iter().map(|p| at_point(&template, p)).collect();
    let sol = solve_linear(sess, &eqs?, &[a, b, c])?;
    if sol.status != SolveStatus::Unique {
        return Err(Error::DegenerateCircle);
    }
    let conic = Conic::new(template.substitute(&sol.bindings)?)?;
    sess.trace_with(|| format!("circle: {}", conic.form()));
    Ok(conic)
}

/// Center of a monic circle.
pub fn center(circ: &Conic) -> Result<Point> {
    let sess = circ.form().session();
    let minus_two = sess.int(-2);
    Ok(Point::new(
        circ.form().coeff(VAR_X, 1)?.div(&minus_two)?,
        circ.form().coeff(VAR_Y, 1)?.div(&minus_two)?,
    ))
}

/// Squared radius: the negated form evaluated at the center.
pub fn radius_sq(circ: &Conic) -> Result<Scalar> {
    let q = center(circ)?;
    at_point(&-circ.form(), &q)
}

/// Are the points all on one circle?  Needs at least four.
pub fn concyclic(points: &[Point]) -> Result<bool> {
    if points.len() < 4 {
        return Err(Error::Shape("need at least four points".into()));
    }
    let c1 = circle_through(&points[0], &points[1], &points[2])?;
    for p in &points[3..] {
        let ci = circle_through(&points[0], &points[1], p)?;
        if ci.form() != c1.form() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn circumcenter(a: &Point, b: &Point, c: &Point) -> Result<Point> {
    center(&circle_through(a, b, c)?)
}

pub fn circumradius_sq(a: &Point, b: &Point, c: &Point) -> Result<Scalar> {
    radius_sq(&circle_through(a, b, c)?)
}

/// Circle through the three side midpoints.
pub fn nine_point_circle(a: &Point, b: &Point, c: &Point) -> Result<Conic> {
    circle_through(&midpoint(a, b), &midpoint(a, c), &midpoint(b, c))
}

/// Line through the orthocenter and the circumcenter.
pub fn euler_line(a: &Point, b: &Point, c: &Point) -> Result<Line> {
    line_through(&orthocenter(a, b, c)?, &circumcenter(a, b, c)?)
}

/// Intersection of the three medians.
pub fn centroid(a: &Point, b: &Point, c: &Point) -> Result<Point> {
    concurrency_point(&[
        line_through(&midpoint(a, b), c)?,
        line_through(&midpoint(a, c), b)?,
        line_through(&midpoint(b, c), a)?,
    ])
}

/// Intersection of the three altitudes.
pub fn orthocenter(a: &Point, b: &Point, c: &Point) -> Result<Point> {
    concurrency_point(&[
        altitude(a, &line_through(b, c)?)?,
        altitude(b, &line_through(a, c)?)?,
        altitude(c, &line_through(a, b)?)?,
    ])
}

/// Circumcenter of the equilateral triangle erected on A, B.
pub fn cet(a: &Point, b: &Point) -> Result<Point> {
    let sess = a.session();
    let two = sess.int(2);
    let r3 = sess.sqrt3();
    let third = Point::new(
        &(&a.x + &b.x).div(&two)? - &(&(&a.y - &b.y) * &r3).div(&two)?,
        &(&b.y.div(&two)? + &(&(&a.x - &b.x) * &r3).div(&two)?) + &a.y.div(&two)?,
    );
    circumcenter(a, b, &third)
}

/// Generic point on the circle with center `c` and radius `r`.
pub fn param_circle(c: &Point, r: &Scalar, t: &Scalar) -> Result<Point> {
    let sess = c.session();
    let two = sess.int(2);
    let t_inv = sess.one().div(t)?;
    let x = &c.x + &(r * &(t + &t_inv)).div(&two)?;
    let y = &c.y + &(r * &(t - &t_inv)).div(&two)?.div(&sess.i_unit())?;
    Ok(Point::new(x, y))
}

/// Generic point on the axis-aligned ellipse with semi-axes `d`.
pub fn param_ellipse(c: &Point, d: &(Scalar, Scalar), t: &Scalar) -> Result<Point> {
    let sess = c.session();
    let two = sess.int(2);
    let t_inv = sess.one().div(t)?;
    let x = &c.x + &(&d.0 * &(t + &t_inv)).div(&two)?;
    let y = &c.y + &(&d.1 * &(t - &t_inv)).div(&two)?.div(&sess.i_unit())?;
    Ok(Point::new(x, y))
}

/// Generic point on the line `y = m*x + b`.
pub fn param_line(m: &Scalar, b: &Scalar, t: &Scalar) -> Point {
    Point::new(t.clone(), &(m * t) + b)
}

/// Tangent to a conic at an incident point.
pub fn tangent(conic: &Conic, p: &Point) -> Result<Line> {
    if !at_point(conic.form(), p)?.is_zero() {
        return Err(Error::NotIncident);
    }
    let sess = p.session();
    let two = sess.int(2);
    let a = conic.form().coeff(VAR_X, 2)?;
    let cx = conic.form().coeff(VAR_X, 1)?;
    let cy = conic.form().coeff(VAR_Y, 1)?;
    let expr = &(&(&sess.y() - &p.y) * &(&(&(&two * &a) * &p.y) + &cy))
        + &(&(&sess.x() - &p.x) * &(&(&(&two * &a) * &p.x) + &cx));
    Line::new(numerator(&expr))
}

/// Tangent to the parametric ellipse at the parametric point, via the formal
/// derivative in `t`.
pub fn tangent_to_ellipse(c: &Point, d: &(Scalar, Scalar), t: &Scalar) -> Result<Line> {
    let sess = c.session();
    let p = param_ellipse(c, d, t)?;
    let (dx, dy) = if let Some(v) = single_var(t) {
        (p.x.derivative(v), p.y.derivative(v))
    } else {
        // d/dt of (t + 1/t)/2 and (t - 1/t)/(2 i) at a fixed scalar t.
        let two = sess.int(2);
        let t2_inv = t.pow(-2)?;
        (
            (&d.0 * &(&sess.one() - &t2_inv)).div(&two)?,
            (&d.1 * &(&sess.one() + &t2_inv)).div(&two)?.div(&sess.i_unit())?,
        )
    };
    let form = &(&dx * &(&sess.y() - &p.y)) - &(&(&sess.x() - &p.x) * &dy);
    Line::new(form)
}

fn single_var(s: &Scalar) -> Option<VarId> {
    if !s.den_poly().is_one() {
        return None;
    }
    let vars = s.num_poly().vars();
    if vars.len() == 1 && s.num_poly() == &crate::kernel::Poly::var(vars[0]) {
        Some(vars[0])
    } else {
        None
    }
}

/// External tangency residual of two circles given centers and radii:
/// `(r1 + r2)^2 - |c1 - c2|^2`.
pub fn tc_ces_out(c1: &Point, r1: &Scalar, c2: &Point, r2: &Scalar) -> Scalar {
    let s = &(r1 + r2) * &(r1 + r2);
    &s - &de_sq(c1, c2)
}

fn numerator(s: &Scalar) -> Scalar {
    s.session().poly_scalar(s.num_poly().clone())
}

/// Discriminant whose vanishing characterizes tangency of two monic circles.
/// Solves the radical line for y (falling back to x) and substitutes.
fn touch_discriminant(c1_form: &Scalar, radical: &Scalar) -> Result<Scalar> {
    let sess = c1_form.session();
    let by = radical.coeff(VAR_Y, 1)?;
    let (main, other, coeff_main) = if !by.is_zero() {
        (VAR_Y, VAR_X, by)
    } else {
        let bx = radical.coeff(VAR_X, 1)?;
        if bx.is_zero() {
            return Err(Error::UnsupportedOrientation);
        }
        (VAR_X, VAR_Y, bx)
    };
    // radical = coeff_main * main + rest  =>  main = -rest / coeff_main
    let rest = radical - &(&coeff_main * &sess.var_scalar(main));
    let solved = (-&rest).div(&coeff_main)?;
    let mut binding = BTreeMap::new();
    binding.insert(main, solved);
    let gu = c1_form.substitute(&binding)?;
    let q2 = gu.coeff(other, 2)?;
    let q1 = gu.coeff(other, 1)?;
    let q0 = gu.coeff(other, 0)?;
    let four = sess.int(4);
    Ok(&(&(&four * &q2) * &q0) - &(&q1 * &q1))
}

/// Do two symbolic circles touch?
pub fn touch_circles(c1: &Conic, c2: &Conic) -> Result<bool> {
    Ok(touch_discriminant(c1.form(), &(c1.form() - c2.form()))?.is_zero())
}

/// Numerator of the touching condition for two circles.
pub fn touch_circles_expr(c1: &Conic, c2: &Conic) -> Result<Scalar> {
    Ok(numerator(&touch_discriminant(c1.form(), &(c1.form() - c2.form()))?))
}

/// Does the circle touch the line?
pub fn touch_circle_line(c: &Conic, l: &Line) -> Result<bool> {
    Ok(touch_discriminant(c.form(), l.form())?.is_zero())
}

/// Numerator of the touching condition for a circle and a line.
pub fn touch_circle_line_expr(c: &Conic, l: &Line) -> Result<Scalar> {
    Ok(numerator(&touch_discriminant(c.form(), l.form())?))
}

/// `tan(a_1 + a_2 + ...)` in terms of the individual tangents.
pub fn tan_sum(args: &[Scalar]) -> Result<Scalar> {
    match args {
        [] => Err(Error::Shape("tan_sum of no arguments".into())),
        [a] => Ok(a.clone()),
        [a, rest @ ..] => {
            let t = tan_sum(rest)?;
            let sess = a.session();
            let den = &sess.one() - &(&t * a);
            if den.is_zero() {
                return Err(Error::Pole);
            }
            (a + &t).div(&den).map_err(|e| match e {
                Error::DivisionByZero => Error::Pole,
                other => other,
            })
        }
    }
}

/// The standard triangle: A=(0,0), B=(1,0), apex cut out by the slopes
/// `tan_sum(m, m)` and `-tan_sum(n, n)`.
pub fn standard_triangle(m: &Scalar, n: &Scalar) -> Result<[Point; 3]> {
    let sess = m.session();
    let a = Point::origin(sess);
    let b = Point::new(sess.one(), sess.zero());
    let la = Line::new(&sess.y() - &(&tan_sum(&[m.clone(), m.clone()])? * &sess.x()))?;
    let lb = Line::new(
        &sess.y() + &(&tan_sum(&[n.clone(), n.clone()])? * &(&sess.x() - &sess.one())),
    )?;
    let c = intersect(&la, &lb)?;
    Ok([a, b, c])
}

/// Incenter of the standard triangle.
pub fn incenter(m: &Scalar, n: &Scalar) -> Result<Point> {
    let sess = m.session();
    if m == n {
        return Ok(Point::new(sess.rat(1, 2), m.div(&sess.int(2))?));
    }
    let c = &standard_triangle(m, n)?[2];
    let bisector_slope = tan_sum(&[m.clone(), sess.one().div(n)?])?;
    let l1 = Line::new(&sess.y() - &(m * &sess.x()))?;
    let l2 = Line::new(&(&sess.y() + &(n * &sess.x())) - n)?;
    let l3 = Line::new(
        &(&sess.y() - &c.y) - &(&(&sess.x() - &c.x) * &bisector_slope),
    )?;
    concurrency_point(&[l1, l2, l3])
}

/// Squared inradius of the standard triangle; asserts that the three
/// point-line distances agree.
pub fn inradius_sq(m: &Scalar, n: &Scalar) -> Result<Scalar> {
    let t = standard_triangle(m, n)?;
    let o = incenter(m, n)?;
    let d_ab = de_pt_line_sq(&o, &line_through(&t[0], &t[1])?)?;
    let d_ac = de_pt_line_sq(&o, &line_through(&t[0], &t[2])?)?;
    let d_bc = de_pt_line_sq(&o, &line_through(&t[1], &t[2])?)?;
    if d_ab != d_ac || d_bc != d_ab {
        return Err(Error::InternalInconsistency(
            "incenter distances to the three sides disagree".into(),
        ));
    }
    Ok(d_ab)
}

/// The incircle of the standard triangle.
pub fn incircle(m: &Scalar, n: &Scalar) -> Result<Conic> {
    let sess = m.session();
    let o = incenter(m, n)?;
    let r2 = inradius_sq(m, n)?;
    let dx = &sess.x() - &o.x;
    let dy = &sess.y() - &o.y;
    Conic::new(&(&(&dx * &dx) + &(&dy * &dy)) - &r2)
}

/// Is the triangle ABC equilateral?
pub fn is_equilateral(a: &Point, b: &Point, c: &Point) -> bool {
    (&de_sq(a, b) - &de_sq(a, c)).is_zero() && (&de_sq(b, c) - &de_sq(c, a)).is_zero()
}

/// Is the scalar identically zero?
pub fn is_zero(s: &Scalar) -> bool {
    s.is_zero()
}

/// Does `sqrt(a) + sqrt(b) = sqrt(c)` hold identically?
pub fn sqrt_sum(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let lhs = &(c - a) - b;
    let sess = a.session();
    let rhs = &(&sess.int(4) * a) * b;
    (&(&lhs * &lhs) - &rhs).is_zero()
}

/// Squared distance from a point to a line.
pub fn de_pt_line_sq(p: &Point, l: &Line) -> Result<Scalar> {
    Ok(de_sq(&foot(p, l)?, p))
}
