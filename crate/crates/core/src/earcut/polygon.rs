use std::collections::HashMap;

use num_traits::Signed;
use thiserror::Error;

use crate::exact;
use crate::mesh::VertexId;
use crate::predicates::{orient2d, Orientation, Point2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("chain is not counterclockwise")]
    NotCounterclockwise,
    #[error("{points} points but {origins} origin ids")]
    OriginMismatch { points: usize, origins: usize },
    #[error("origin {0} appears twice with different coordinates")]
    InconsistentDuplicate(VertexId),
    #[error("lateral vertex at chain position {0} is not strictly convex")]
    LateralNotConvex(usize),
}

/// A counterclockwise vertex chain whose first and last vertices are the
/// endpoints of a constrained segment.
///
/// Chain positions are the polygon's own vertex ids, so the chain is
/// topologically simple by construction. `origin` maps each position back
/// to the mesh vertex it was copied from; a mesh vertex visited several
/// times along a pocket boundary shows up at several positions with equal
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PocketPolygon {
    points: Vec<Point2>,
    origin: Vec<VertexId>,
}

impl PocketPolygon {
    /// A standalone polygon; position `i` originates from `VertexId(i)`.
    pub fn new(points: Vec<Point2>) -> Result<Self, PolygonError> {
        let origin = (0..points.len()).map(VertexId).collect();
        Self::with_origin(points, origin)
    }

    pub fn with_origin(points: Vec<Point2>, origin: Vec<VertexId>) -> Result<Self, PolygonError> {
        if points.len() != origin.len() {
            return Err(PolygonError::OriginMismatch {
                points: points.len(),
                origins: origin.len(),
            });
        }
        if points.len() < 3 {
            return Err(PolygonError::TooFewVertices(points.len()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(PolygonError::NonFinite(i));
        }
        let mut first_seen: HashMap<VertexId, Point2> = HashMap::new();
        for (&o, &p) in origin.iter().zip(&points) {
            if *first_seen.entry(o).or_insert(p) != p {
                return Err(PolygonError::InconsistentDuplicate(o));
            }
        }
        if !exact::polygon_area2(&points).is_positive() {
            return Err(PolygonError::NotCounterclockwise);
        }
        Ok(PocketPolygon { points, origin })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point2 {
        self.points[i]
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    #[inline]
    pub fn origin(&self, i: usize) -> VertexId {
        self.origin[i]
    }

    pub fn origins(&self) -> &[VertexId] {
        &self.origin
    }

    /// Mesh ids of the constrained segment endpoints.
    pub fn segment(&self) -> (VertexId, VertexId) {
        (self.origin[0], self.origin[self.len() - 1])
    }

    /// Pairs of chain positions that stem from the same mesh vertex.
    pub fn duplicate_positions(&self) -> Vec<(usize, usize)> {
        let mut by_origin: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (i, &o) in self.origin.iter().enumerate() {
            by_origin.entry(o).or_default().push(i);
        }
        let mut out: Vec<(usize, usize)> = by_origin
            .values()
            .flat_map(|ps| {
                ps.iter()
                    .enumerate()
                    .flat_map(move |(k, &i)| ps[k + 1..].iter().map(move |&j| (i, j)))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Orientation of the corner at position `i` in the full chain.
    pub fn corner(&self, i: usize) -> Orientation {
        let n = self.len();
        orient2d(
            self.points[(i + n - 1) % n],
            self.points[i],
            self.points[(i + 1) % n],
        )
    }

    /// Positions whose corner is strictly convex in the full chain.
    pub fn convex_positions(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.corner(i) == Orientation::Ccw)
            .collect()
    }

    /// Both lateral vertices strictly convex, as every pocket cut out by a
    /// segment insertion is.
    pub fn check_lateral_convexity(&self) -> Result<(), PolygonError> {
        for i in [0, self.len() - 1] {
            if self.corner(i) != Orientation::Ccw {
                return Err(PolygonError::LateralNotConvex(i));
            }
        }
        Ok(())
    }
}
