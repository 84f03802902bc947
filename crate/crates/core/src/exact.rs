//! Unbounded-precision rational evaluation of the same quantities the
//! floating-point code decides. Slow, but independent of the filtered
//! predicate path, so it serves as the reference in audits and tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::predicates::{Orientation, Point2};

/// Exact rational value of a finite double.
pub fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

/// Rational copy of a point.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl From<Point2> for RationalPoint {
    fn from(p: Point2) -> Self {
        RationalPoint {
            x: rational(p.x),
            y: rational(p.y),
        }
    }
}

/// Twice the signed area of `(a, b, c)` in exact arithmetic.
pub fn det(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> BigRational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orientation_of(v: &BigRational) -> Orientation {
    if v.is_positive() {
        Orientation::Ccw
    } else if v.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// Reference orientation computed entirely in rationals.
pub fn orient2d_rational(a: Point2, b: Point2, c: Point2) -> Orientation {
    orientation_of(&det(&a.into(), &b.into(), &c.into()))
}

/// Twice the signed area enclosed by a closed polygon (shoelace formula).
pub fn polygon_area2(points: &[Point2]) -> BigRational {
    let n = points.len();
    let rp: Vec<RationalPoint> = points.iter().map(|&p| p.into()).collect();
    let mut sum = BigRational::zero();
    for i in 0..n {
        let a = &rp[i];
        let b = &rp[(i + 1) % n];
        sum += &a.x * &b.y - &a.y * &b.x;
    }
    sum
}

/// Twice the summed signed area of a set of triangles given by coordinates.
pub fn triangles_area2<I>(triangles: I) -> BigRational
where
    I: IntoIterator<Item = [Point2; 3]>,
{
    triangles
        .into_iter()
        .fold(BigRational::zero(), |acc, [a, b, c]| {
            acc + det(&a.into(), &b.into(), &c.into())
        })
}

/// Convenience for tests and reports.
pub fn is_zero(v: &BigRational) -> bool {
    v.numer() == &BigInt::zero()
}
