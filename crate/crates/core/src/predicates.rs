//! Exact-sign orientation and the containment/crossing tests built on it.
//!
//! `orient2d` runs a static floating-point filter first and only falls back
//! to exact expansion arithmetic when the filter cannot certify the sign.
//! Every other predicate in this module is a combination of `orient2d`
//! signs and exact coordinate comparisons, so no decision here is ever
//! rounded.

use std::fmt;

use thiserror::Error;

/// A point in the plane with finite double-precision coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2 { x, y }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the signed area of an ordered point triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Counterclockwise, positive area.
    Ccw,
    Collinear,
    /// Clockwise, negative area.
    Cw,
}

impl Orientation {
    pub fn from_sign(s: i32) -> Self {
        match s.signum() {
            1 => Orientation::Ccw,
            -1 => Orientation::Cw,
            _ => Orientation::Collinear,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Orientation::Ccw => 1,
            Orientation::Collinear => 0,
            Orientation::Cw => -1,
        }
    }

    pub fn reversed(self) -> Self {
        Orientation::from_sign(-self.sign())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    StrictlyInside,
    OnBoundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    /// The open segments cross at a single interior point.
    Proper,
    /// The segments meet only at an endpoint of at least one of them.
    EndpointTouch,
    /// Collinear with a shared sub-segment of positive length.
    CollinearOverlap,
    None,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PredicateError {
    #[error("triangle {0}, {1}, {2} is not counterclockwise")]
    DegenerateTriangle(Point2, Point2, Point2),
    #[error("segment {0} - {1} has zero length")]
    DegenerateSegment(Point2, Point2),
}

const EPSILON: f64 = f64::EPSILON * 0.5;
const CCW_ERR_BOUND_A: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;

/// Exact orientation of `c` relative to the directed line `a -> b`.
#[inline]
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Orientation {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;

    let detsum = if detleft > 0.0 {
        if detright <= 0.0 {
            return Orientation::from_float(det);
        }
        detleft + detright
    } else if detleft < 0.0 {
        if detright >= 0.0 {
            return Orientation::from_float(det);
        }
        -detleft - detright
    } else {
        return Orientation::from_float(det);
    };

    let errbound = CCW_ERR_BOUND_A * detsum;
    if det >= errbound || -det >= errbound {
        return Orientation::from_float(det);
    }
    orient2d_exact(a, b, c)
}

impl Orientation {
    #[inline]
    fn from_float(v: f64) -> Self {
        if v > 0.0 {
            Orientation::Ccw
        } else if v < 0.0 {
            Orientation::Cw
        } else {
            Orientation::Collinear
        }
    }
}

// det = bx*cy - bx*ay - ax*cy - by*cx + by*ax + ay*cx, each product split
// into an exact two-term expansion and summed without rounding.
#[cold]
fn orient2d_exact(a: Point2, b: Point2, c: Point2) -> Orientation {
    let terms = [
        two_product(b.x, c.y),
        two_product(-b.x, a.y),
        two_product(-a.x, c.y),
        two_product(-b.y, c.x),
        two_product(b.y, a.x),
        two_product(a.y, c.x),
    ];
    let mut expansion: Vec<f64> = Vec::with_capacity(12);
    for (hi, lo) in terms {
        grow_expansion(&mut expansion, lo);
        grow_expansion(&mut expansion, hi);
    }
    // Components are nonoverlapping and sorted by increasing magnitude, so
    // the most significant nonzero one carries the sign.
    let top = expansion
        .iter()
        .rev()
        .find(|v| **v != 0.0)
        .copied()
        .unwrap_or(0.0);
    Orientation::from_float(top)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bv = x - a;
    let av = x - bv;
    let br = b - bv;
    let ar = a - av;
    (x, ar + br)
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let x = a * b;
    (x, a.mul_add(b, -x))
}

fn grow_expansion(e: &mut Vec<f64>, b: f64) {
    let mut q = b;
    for h in e.iter_mut() {
        let (sum, err) = two_sum(q, *h);
        *h = err;
        q = sum;
    }
    e.push(q);
}

/// Classifies `p` against the counterclockwise triangle `(a, b, c)`.
pub fn point_in_triangle(
    p: Point2,
    a: Point2,
    b: Point2,
    c: Point2,
) -> Result<Containment, PredicateError> {
    if orient2d(a, b, c) != Orientation::Ccw {
        return Err(PredicateError::DegenerateTriangle(a, b, c));
    }
    Ok(classify_in_ccw_triangle(p, a, b, c))
}

/// Same as [`point_in_triangle`] but trusts the caller that `(a, b, c)` is
/// counterclockwise.
#[inline]
pub(crate) fn classify_in_ccw_triangle(p: Point2, a: Point2, b: Point2, c: Point2) -> Containment {
    let o1 = orient2d(a, b, p);
    if o1 == Orientation::Cw {
        return Containment::Outside;
    }
    let o2 = orient2d(b, c, p);
    if o2 == Orientation::Cw {
        return Containment::Outside;
    }
    let o3 = orient2d(c, a, p);
    if o3 == Orientation::Cw {
        return Containment::Outside;
    }
    if o1 == Orientation::Ccw && o2 == Orientation::Ccw && o3 == Orientation::Ccw {
        Containment::StrictlyInside
    } else {
        Containment::OnBoundary
    }
}

/// True when `p`, known to be collinear with `a` and `b`, lies in the closed
/// bounding box of `a` and `b`.
#[inline]
pub(crate) fn within_box(p: Point2, a: Point2, b: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Classifies how the segments `p1-p2` and `q1-q2` meet.
pub fn segment_crossing(
    p1: Point2,
    p2: Point2,
    q1: Point2,
    q2: Point2,
) -> Result<Crossing, PredicateError> {
    if p1 == p2 {
        return Err(PredicateError::DegenerateSegment(p1, p2));
    }
    if q1 == q2 {
        return Err(PredicateError::DegenerateSegment(q1, q2));
    }
    let o1 = orient2d(p1, p2, q1).sign();
    let o2 = orient2d(p1, p2, q2).sign();
    let o3 = orient2d(q1, q2, p1).sign();
    let o4 = orient2d(q1, q2, p2).sign();

    if o1 == 0 && o2 == 0 {
        return Ok(collinear_crossing(p1, p2, q1, q2));
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(Crossing::Proper);
    }
    let touches = (o1 == 0 && within_box(q1, p1, p2))
        || (o2 == 0 && within_box(q2, p1, p2))
        || (o3 == 0 && within_box(p1, q1, q2))
        || (o4 == 0 && within_box(p2, q1, q2));
    Ok(if touches {
        Crossing::EndpointTouch
    } else {
        Crossing::None
    })
}

fn collinear_crossing(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> Crossing {
    // Project on the axis where the first segment is not degenerate; exact
    // comparisons since collinearity is already established.
    let key = |p: Point2| if p1.x != p2.x { (p.x, p.y) } else { (p.y, p.x) };
    let (a0, a1) = ordered(key(p1), key(p2));
    let (b0, b1) = ordered(key(q1), key(q2));
    let lo = if a0 > b0 { a0 } else { b0 };
    let hi = if a1 < b1 { a1 } else { b1 };
    if lo < hi {
        Crossing::CollinearOverlap
    } else if lo == hi {
        Crossing::EndpointTouch
    } else {
        Crossing::None
    }
}

fn ordered(a: (f64, f64), b: (f64, f64)) -> ((f64, f64), (f64, f64)) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
