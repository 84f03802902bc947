//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use pocketcut::{PocketPolygon, Point2, TriMesh};

pub fn q(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

/// Sign of the orientation determinant, computed on exact rationals.
pub fn orient_sign(a: Point2, b: Point2, c: Point2) -> i32 {
    let d = (q(b.x) - q(a.x)) * (q(c.y) - q(a.y)) - (q(b.y) - q(a.y)) * (q(c.x) - q(a.x));
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// `p` strictly inside the counterclockwise triangle `abc`.
pub fn strictly_inside(p: Point2, a: Point2, b: Point2, c: Point2) -> bool {
    orient_sign(a, b, p) > 0 && orient_sign(b, c, p) > 0 && orient_sign(c, a, p) > 0
}

/// Twice the signed shoelace area.
pub fn shoelace2(pts: &[Point2]) -> BigRational {
    let n = pts.len();
    (0..n).fold(BigRational::zero(), |acc, i| {
        let (p, r) = (pts[i], pts[(i + 1) % n]);
        acc + q(p.x) * q(r.y) - q(r.x) * q(p.y)
    })
}

pub fn mesh_area2(mesh: &TriMesh) -> BigRational {
    mesh.alive_triangles()
        .map(|(t, _)| shoelace2(&mesh.triangle_points(t)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Number of input points on the convex hull boundary, including points in
/// the interior of hull edges. Brute force: a point is on the boundary when
/// some other point makes every remaining point lie weakly on one side.
pub fn hull_boundary_count(pts: &[Point2]) -> usize {
    let n = pts.len();
    (0..n)
        .filter(|&i| {
            (0..n).filter(|&j| j != i).any(|j| {
                let side = |k: usize| orient_sign(pts[i], pts[j], pts[k]);
                (0..n).all(|k| side(k) >= 0) || (0..n).all(|k| side(k) <= 0)
            })
        })
        .count()
}

/// Strict properness of the crossing of open segments `ab` and `cd`.
pub fn proper_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    orient_sign(a, b, c) * orient_sign(a, b, d) < 0
        && orient_sign(c, d, a) * orient_sign(c, d, b) < 0
}

/// The open segment `ab` meets the interior of the counterclockwise
/// triangle `t`. Two convex sets are disjoint iff one of their edge lines
/// separates them, so only four lines need checking.
pub fn segment_meets_triangle_interior(a: Point2, b: Point2, t: [Point2; 3]) -> bool {
    let s: Vec<i32> = t.iter().map(|&p| orient_sign(a, b, p)).collect();
    if s.iter().all(|&v| v >= 0) || s.iter().all(|&v| v <= 0) {
        return false;
    }
    for k in 0..3 {
        let (u, v) = (t[k], t[(k + 1) % 3]);
        if orient_sign(u, v, a) <= 0 && orient_sign(u, v, b) <= 0 {
            return false;
        }
    }
    true
}

pub fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
    v.iter().map(|&p| p.into()).collect()
}

pub fn polygon(v: &[(f64, f64)]) -> PocketPolygon {
    PocketPolygon::new(pts(v)).unwrap()
}

pub struct Fixture {
    pub name: &'static str,
    pub mesh: TriMesh,
    pub a: usize,
    pub b: usize,
}

/// A dangling edge `q - r` hangs into the region crossed by `a - b`.
pub fn dangling_edge() -> Fixture {
    let points = pts(&[
        (0., 0.),  // a
        (10., 0.), // b
        (5., 3.),  // q
        (5., 1.),  // r
        (3., -2.), // l1
        (7., -2.), // l2
    ]);
    let tris = [[0, 4, 2], [2, 4, 3], [4, 5, 3], [5, 2, 3], [1, 2, 5]];
    Fixture {
        name: "dangling edge",
        mesh: TriMesh::from_triangles_strict(points, &tris).unwrap(),
        a: 0,
        b: 1,
    }
}

/// The triangle `h1 h2 h3` is untouched but enclosed by crossed triangles
/// and meets the upper chain only at `h3`.
pub fn enclosed_triangle() -> Fixture {
    let points = pts(&[
        (-4., 0.),  // a
        (16., 0.),  // b
        (5., 1.),   // h1
        (7., 1.),   // h2
        (6., 2.),   // h3
        (6., -2.),  // d
        (1., -2.),  // r
        (11., -2.), // p
    ]);
    let tris = [
        [0, 6, 4],
        [2, 4, 6],
        [2, 6, 5],
        [3, 2, 5],
        [3, 5, 7],
        [3, 7, 4],
        [7, 1, 4],
        [2, 3, 4],
    ];
    Fixture {
        name: "enclosed triangle",
        mesh: TriMesh::from_triangles_strict(points, &tris).unwrap(),
        a: 0,
        b: 1,
    }
}

/// The enclosed triangle again, now hanging from a dangling edge `h3 - t`
/// that runs up to a top vertex.
pub fn combined() -> Fixture {
    let points = pts(&[
        (-4., 0.),  // a
        (16., 0.),  // b
        (5., 1.),   // h1
        (7., 1.),   // h2
        (6., 2.),   // h3
        (6., -2.),  // d
        (1., -2.),  // r
        (11., -2.), // p
        (6., 8.),   // t
    ]);
    let tris = [
        [0, 6, 8],
        [4, 8, 6],
        [2, 4, 6],
        [2, 6, 5],
        [3, 2, 5],
        [3, 5, 7],
        [3, 7, 4],
        [4, 7, 8],
        [7, 1, 8],
        [2, 3, 4],
    ];
    Fixture {
        name: "combined",
        mesh: TriMesh::from_triangles_strict(points, &tris).unwrap(),
        a: 0,
        b: 1,
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![dangling_edge(), enclosed_triangle(), combined()]
}

/// A spiral with convex laterals that is not weakly visible from its
/// closing edge.
pub fn spiral() -> PocketPolygon {
    polygon(&[
        (0., 541.),
        (391., -162.),
        (-216., -216.),
        (-72., 174.),
        (70., 0.),
        (100., 0.),
        (-83., 201.),
        (-237., -237.),
        (419., -174.),
        (0., 571.),
    ])
}

pub fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
