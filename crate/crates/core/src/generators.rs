//! Parametric test polygons and randomized inputs.
//!
//! Both parametric shapes sit on the constrained segment from `(1, 0)` to
//! `(0, 0)` with their free vertices on top, spread evenly in `x` from 1 down
//! to 0. The collinear shape keeps them all at `y = 1`; the random shape
//! lifts each one by a uniform draw from `[0, 0.5)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::builder::{triangulate_points, ProblemInput};
use crate::earcut::PocketPolygon;
use crate::insertion::{collect_intersected, extract_pockets, SegmentConstraint};
use crate::mesh::VertexId;
use crate::predicates::{segment_crossing, Crossing, Point2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("need at least one top vertex")]
    NoTopVertex,
    #[error("need at least 10 points, got {0}")]
    TooFewPoints(usize),
}

const MAX_LIFT: f64 = 0.5;

fn top_x(i: usize, m: usize) -> f64 {
    if m == 1 {
        0.5
    } else {
        1.0 - i as f64 / (m - 1) as f64
    }
}

fn fan_polygon(tops: impl Iterator<Item = Point2>) -> PocketPolygon {
    let mut pts = vec![Point2::new(1.0, 0.0)];
    pts.extend(tops);
    pts.push(Point2::new(0.0, 0.0));
    PocketPolygon::new(pts).expect("parametric pocket is counterclockwise")
}

/// `m` top vertices on `y = 1`; `n = m + 2` vertices in total.
pub fn gen_collinear_fan(m: usize) -> Result<PocketPolygon, GenError> {
    if m < 1 {
        return Err(GenError::NoTopVertex);
    }
    Ok(fan_polygon((0..m).map(|i| Point2::new(top_x(i, m), 1.0))))
}

/// `m` top vertices at `y = 1 + u`, `u` uniform in `[0, 0.5)`.
pub fn gen_random_top(m: usize, seed: u64) -> Result<PocketPolygon, GenError> {
    if m < 1 {
        return Err(GenError::NoTopVertex);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(fan_polygon((0..m).map(|i| {
        let lift: f64 = rng.random_range(0.0..MAX_LIFT);
        Point2::new(top_x(i, m), 1.0 + lift)
    })))
}

/// Uniform points in the unit square.
pub fn random_points<R: Rng>(rng: &mut R, count: usize) -> Vec<Point2> {
    (0..count)
        .map(|_| Point2::new(rng.random::<f64>(), rng.random::<f64>()))
        .collect()
}

/// Pockets cut out of random triangulations by random segments.
///
/// Each trial triangulates `point_count` fresh random points and inserts
/// one segment between two non-adjacent vertices; both of its pockets go
/// into the corpus. Trials whose segment runs exactly through a vertex are
/// skipped.
pub fn gen_random_pockets(
    point_count: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<PocketPolygon>, GenError> {
    if point_count < 10 {
        return Err(GenError::TooFewPoints(point_count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::with_capacity(2 * trials);
    for _ in 0..trials {
        let points = random_points(&mut rng, point_count);
        let Ok(mesh) = triangulate_points(&points) else {
            continue;
        };
        let mut pick = None;
        for _ in 0..32 {
            let a = rng.random_range(0..point_count);
            let b = rng.random_range(0..point_count);
            if a != b && !mesh.edge_exists(VertexId(a), VertexId(b)) {
                pick = Some(SegmentConstraint::from((a, b)));
                break;
            }
        }
        let Some(s) = pick else { continue };
        let Ok(tris) = collect_intersected(&mesh, s) else {
            continue;
        };
        if let Ok(pair) = extract_pockets(&mesh, &tris, s) {
            corpus.push(pair.upper);
            corpus.push(pair.lower);
        }
    }
    Ok(corpus)
}

/// A random problem: `point_count` points in the unit square and up to
/// `segment_count` segments, none of which cross each other.
pub fn random_problem(point_count: usize, segment_count: usize, seed: u64) -> ProblemInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = random_points(&mut rng, point_count);
    let mut segments: Vec<(usize, usize)> = Vec::with_capacity(segment_count);
    let budget = 100 * segment_count.max(1);
    for _ in 0..budget {
        if segments.len() == segment_count {
            break;
        }
        let a = rng.random_range(0..point_count);
        let b = rng.random_range(0..point_count);
        if a == b
            || segments
                .iter()
                .any(|&(c, d)| (c, d) == (a, b) || (c, d) == (b, a))
        {
            continue;
        }
        let crosses = segments.iter().any(|&(c, d)| {
            segment_crossing(points[a], points[b], points[c], points[d])
                .map(|x| x == Crossing::Proper)
                .unwrap_or(true)
        });
        if !crosses {
            segments.push((a, b));
        }
    }
    ProblemInput { points, segments }
}
