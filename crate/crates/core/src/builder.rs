//! Point-set triangulation and the points-then-segments pipeline.

use std::collections::HashMap;

use thiserror::Error;

use crate::insertion::{insert_segment, InsertError, SegmentConstraint};
use crate::mesh::{MeshError, TriId, TriMesh, VertexId};
use crate::predicates::{
    classify_in_ccw_triangle, orient2d, segment_crossing, Containment, Crossing, Orientation,
    Point2,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("all points are collinear")]
    AllCollinear,
    #[error("segment {index} references point {point}, out of range")]
    SegmentOutOfRange { index: usize, point: usize },
    #[error("segment {0} has identical endpoints")]
    DegenerateSegment(usize),
    #[error("segments {0} and {1} cross")]
    CrossingSegments(usize, usize),
    #[error("inserting segment {index}: {source}")]
    Insert {
        index: usize,
        #[source]
        source: InsertError,
    },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Points plus index pairs that must become edges.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProblemInput {
    pub points: Vec<Point2>,
    pub segments: Vec<(usize, usize)>,
}

impl ProblemInput {
    /// Checks point distinctness, segment indices and that no two segments
    /// cross at an interior point. Touching and collinear overlap are
    /// allowed; insertion splits them at the shared vertices.
    pub fn validate(&self) -> Result<(), BuildError> {
        check_points(&self.points)?;
        let n = self.points.len();
        for (index, &(a, b)) in self.segments.iter().enumerate() {
            for point in [a, b] {
                if point >= n {
                    return Err(BuildError::SegmentOutOfRange { index, point });
                }
            }
            if a == b {
                return Err(BuildError::DegenerateSegment(index));
            }
        }
        for (i, &(a, b)) in self.segments.iter().enumerate() {
            for (j, &(c, d)) in self.segments.iter().enumerate().skip(i + 1) {
                let pts = &self.points;
                let crossing = segment_crossing(pts[a], pts[b], pts[c], pts[d])
                    .expect("distinct points give non-degenerate segments");
                if crossing == Crossing::Proper {
                    return Err(BuildError::CrossingSegments(i, j));
                }
            }
        }
        Ok(())
    }
}

fn check_points(points: &[Point2]) -> Result<(), BuildError> {
    if points.len() < 3 {
        return Err(BuildError::TooFewPoints(points.len()));
    }
    let mut seen: HashMap<(u64, u64), usize> = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(BuildError::NonFinite(i));
        }
        // + 0.0 folds -0.0 into 0.0
        let key = ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
        if let Some(&j) = seen.get(&key) {
            return Err(BuildError::DuplicatePoint(j, i));
        }
        seen.insert(key, i);
    }
    Ok(())
}

/// Triangulates the convex hull of `points`, inserting them in input order.
///
/// Each point is located by a scan of the current triangles: a point inside
/// a triangle splits it in three, a point on an edge splits the edge, and a
/// point outside the hull is joined to every hull edge it sees.
pub fn triangulate_points(points: &[Point2]) -> Result<TriMesh, BuildError> {
    check_points(points)?;
    let (p0, p1) = (points[0], points[1]);
    let k = (2..points.len())
        .find(|&k| orient2d(p0, p1, points[k]) != Orientation::Collinear)
        .ok_or(BuildError::AllCollinear)?;

    let mut mesh = TriMesh::with_vertices(points.to_vec())?;

    // points before k are collinear: fan them to point k
    let mut line: Vec<usize> = (0..k).collect();
    line.sort_by(|&i, &j| {
        (points[i].x, points[i].y)
            .partial_cmp(&(points[j].x, points[j].y))
            .expect("finite")
    });
    let apex = VertexId(k);
    let fan: Vec<[VertexId; 3]> = line
        .windows(2)
        .map(|w| {
            let (u, v) = (VertexId(w[0]), VertexId(w[1]));
            if orient2d(points[w[0]], points[w[1]], points[k]) == Orientation::Ccw {
                [u, v, apex]
            } else {
                [v, u, apex]
            }
        })
        .collect();
    mesh.add_triangles(&fan)?;

    for i in k + 1..points.len() {
        insert_point(&mut mesh, VertexId(i))?;
    }
    Ok(mesh)
}

fn insert_point(mesh: &mut TriMesh, v: VertexId) -> Result<(), MeshError> {
    let p = mesh.vertex(v);
    let mut hit = None;
    for (t, tri) in mesh.alive_triangles() {
        let [a, b, c] = tri.map(|u| mesh.vertex(u));
        match classify_in_ccw_triangle(p, a, b, c) {
            Containment::Outside => {}
            Containment::StrictlyInside => {
                hit = Some((t, None));
                break;
            }
            Containment::OnBoundary => {
                let slot = (0..3)
                    .find(|&s| {
                        orient2d(mesh.vertex(tri[s]), mesh.vertex(tri[(s + 1) % 3]), p)
                            == Orientation::Collinear
                    })
                    .expect("boundary point lies on an edge");
                hit = Some((t, Some(slot)));
                break;
            }
        }
    }

    match hit {
        Some((t, None)) => {
            let [a, b, c] = mesh.triangle(t);
            mesh.remove_triangles(&[t])?;
            mesh.add_triangles(&[[a, b, v], [b, c, v], [c, a, v]])?;
        }
        Some((t, Some(slot))) => {
            let mut gone = vec![t];
            let mut fresh = split_side(mesh, t, slot, v).to_vec();
            if let Some(n) = mesh.neighbor(t, slot) {
                let tri = mesh.triangle(t);
                let nslot = mesh
                    .slot_of(n, tri[(slot + 1) % 3], tri[slot])
                    .expect("adjacent triangles share the edge");
                gone.push(n);
                fresh.extend(split_side(mesh, n, nslot, v));
            }
            mesh.remove_triangles(&gone)?;
            mesh.add_triangles(&fresh)?;
        }
        None => {
            let fresh: Vec<[VertexId; 3]> = mesh
                .boundary_edges()
                .into_iter()
                .filter(|&(a, b)| orient2d(mesh.vertex(a), mesh.vertex(b), p) == Orientation::Cw)
                .map(|(a, b)| [a, v, b])
                .collect();
            mesh.add_triangles(&fresh)?;
        }
    }
    Ok(())
}

fn split_side(mesh: &TriMesh, t: TriId, slot: usize, v: VertexId) -> [[VertexId; 3]; 2] {
    let tri = mesh.triangle(t);
    let (e0, e1, opp) = (tri[slot], tri[(slot + 1) % 3], tri[(slot + 2) % 3]);
    [[e0, v, opp], [v, e1, opp]]
}

/// Triangulates the points, then inserts every segment in input order.
pub fn build_constrained(input: &ProblemInput) -> Result<TriMesh, BuildError> {
    input.validate()?;
    let mut mesh = triangulate_points(&input.points)?;
    for (index, &seg) in input.segments.iter().enumerate() {
        insert_segment(&mut mesh, SegmentConstraint::from(seg))
            .map_err(|source| BuildError::Insert { index, source })?;
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn three_points_one_triangle() {
        let m = triangulate_points(&pts(&[(0., 0.), (1., 0.), (0., 1.)])).unwrap();
        assert_eq!(m.triangle_count(), 1);
        m.audit().unwrap();
    }

    #[test]
    fn square_two_triangles_five_edges() {
        let m = triangulate_points(&pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])).unwrap();
        m.audit().unwrap();
        assert_eq!(m.triangle_count(), 2);
        let (i, b) = m.edge_counts();
        assert_eq!(i + b, 5);
    }

    #[test]
    fn collinear_prefix_and_edge_split() {
        let m = triangulate_points(&pts(&[
            (2., 0.),
            (0., 0.),
            (1., 0.),
            (3., 0.),
            (1., 2.),
            (1.5, 1.),
            (2., 0.5),
        ]))
        .unwrap();
        m.audit().unwrap();
        assert_eq!(m.area2(), m.boundary_area2());
        // four base points and the apex lie on the hull
        assert_eq!(m.triangle_count(), 2 * 7 - 2 - 5);
    }

    #[test]
    fn point_errors() {
        assert_eq!(
            triangulate_points(&pts(&[(0., 0.), (1., 0.)])).unwrap_err(),
            BuildError::TooFewPoints(2)
        );
        assert_eq!(
            triangulate_points(&pts(&[(0., 0.), (1., 1.), (2., 2.)])).unwrap_err(),
            BuildError::AllCollinear
        );
        assert_eq!(
            triangulate_points(&pts(&[(0., 0.), (1., 1.), (2., 0.), (-0.0, 0.)])).unwrap_err(),
            BuildError::DuplicatePoint(0, 3)
        );
    }

    #[test]
    fn square_with_diagonal_constraint() {
        let input = ProblemInput {
            points: pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
            segments: vec![(1, 3)],
        };
        let m = build_constrained(&input).unwrap();
        m.audit().unwrap();
        assert_eq!(m.triangle_count(), 2);
        assert!(m.is_constrained(VertexId(1), VertexId(3)));
    }

    #[test]
    fn crossing_segments_rejected() {
        let input = ProblemInput {
            points: pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
            segments: vec![(0, 2), (1, 3)],
        };
        assert_eq!(
            build_constrained(&input).unwrap_err(),
            BuildError::CrossingSegments(0, 1)
        );
    }
}
