//! Inserting a constrained segment between two existing mesh vertices.
//!
//! The segment is walked through the triangles it crosses, those triangles
//! are removed, and the hole is split along the segment into two pockets
//! that are re-triangulated with [`linear_earcut`]. Exact hits on
//! intermediate vertices split the segment there.

use thiserror::Error;

use crate::earcut::{linear_earcut, EarcutError, PocketPolygon, PolygonError};
use crate::mesh::{MeshError, TriId, TriMesh, VertexId};
use crate::predicates::{orient2d, within_box, Orientation, Point2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SegmentConstraint {
    pub a: VertexId,
    pub b: VertexId,
}

impl SegmentConstraint {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        SegmentConstraint { a, b }
    }
}

impl From<(usize, usize)> for SegmentConstraint {
    fn from((a, b): (usize, usize)) -> Self {
        SegmentConstraint::new(VertexId(a), VertexId(b))
    }
}

/// The two pockets on either side of an inserted segment. `upper` lies to
/// the left of `a -> b` and runs from `b` to `a`; `lower` lies to the right
/// and runs from `a` to `b`. Both are counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct PocketPair {
    pub upper: PocketPolygon,
    pub lower: PocketPolygon,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InsertError {
    #[error("segment endpoints coincide ({0})")]
    SameEndpoints(VertexId),
    #[error("vertex {0} is not in the mesh")]
    UnknownVertex(VertexId),
    #[error("segment passes exactly through vertex {0}")]
    SegmentThroughVertex(VertexId),
    #[error("segment leaves the mesh before reaching its end vertex")]
    SegmentOutsideMesh,
    #[error("segment crosses constrained edge {0} - {1}")]
    CrossesConstraint(VertexId, VertexId),
    #[error("inconsistent intersected region: {0}")]
    InconsistentRegion(String),
    #[error("pocket: {0}")]
    Pocket(#[from] PolygonError),
    #[error("pocket triangulation: {0}")]
    Earcut(#[from] EarcutError),
    #[error("mesh update: {0}")]
    Mesh(#[from] MeshError),
}

/// What an insertion did to the mesh.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertReport {
    /// Constrained edges covering the requested segment, in order from `a`.
    pub pieces: Vec<(VertexId, VertexId)>,
    pub removed: usize,
    pub added: usize,
}

fn check_vertex(mesh: &TriMesh, v: VertexId) -> Result<(), InsertError> {
    if v.0 >= mesh.vertex_count() {
        Err(InsertError::UnknownVertex(v))
    } else {
        Ok(())
    }
}

/// `p` (collinear with the segment) lies on the ray from `a` through `b`.
fn on_ray(a: Point2, b: Point2, p: Point2) -> bool {
    let same = |d: f64, r: f64| (d > 0.0) == (r > 0.0) && (d < 0.0) == (r < 0.0);
    same(p.x - a.x, b.x - a.x) && same(p.y - a.y, b.y - a.y)
}

/// The alive triangles properly crossed by the open segment `a - b`, in the
/// order the segment meets them.
///
/// The walk starts in the fan of `a` and follows adjacency, so its cost is
/// the degree of `a` plus the number of crossed triangles.
pub fn collect_intersected(
    mesh: &TriMesh,
    s: SegmentConstraint,
) -> Result<Vec<TriId>, InsertError> {
    check_vertex(mesh, s.a)?;
    check_vertex(mesh, s.b)?;
    if s.a == s.b {
        return Err(InsertError::SameEndpoints(s.a));
    }
    let (pa, pb) = (mesh.vertex(s.a), mesh.vertex(s.b));
    let side = |v: VertexId| orient2d(pa, pb, mesh.vertex(v));

    // Find the triangle of a's fan whose angle at a contains the ray to b.
    let mut start = None;
    for &t in mesh.incident(s.a) {
        let tri = mesh.triangle(t);
        let k = (0..3).find(|&i| tri[i] == s.a).expect("incidence lists a");
        let (p, q) = (tri[(k + 1) % 3], tri[(k + 2) % 3]);
        let (op, oq) = (side(p), side(q));
        for (v, o) in [(p, op), (q, oq)] {
            if o == Orientation::Collinear && on_ray(pa, pb, mesh.vertex(v)) {
                return Err(InsertError::SegmentThroughVertex(v));
            }
        }
        if op == Orientation::Cw && oq == Orientation::Ccw {
            start = Some((t, (k + 1) % 3));
            break;
        }
    }
    let Some((mut t, mut exit_slot)) = start else {
        return Err(InsertError::SegmentOutsideMesh);
    };

    let mut out = vec![t];
    let guard = mesh.triangle_capacity() + 1;
    loop {
        let tri = mesh.triangle(t);
        let (x, y) = (tri[exit_slot], tri[(exit_slot + 1) % 3]);
        if mesh.is_constrained(x, y) {
            return Err(InsertError::CrossesConstraint(x, y));
        }
        let Some(next) = mesh.neighbor(t, exit_slot) else {
            return Err(InsertError::SegmentOutsideMesh);
        };
        let entry = mesh.slot_of(next, y, x).ok_or_else(|| {
            InsertError::InconsistentRegion(format!("{next} does not hold edge {y} - {x}"))
        })?;
        out.push(next);
        if out.len() > guard {
            return Err(InsertError::InconsistentRegion(
                "walk does not terminate".into(),
            ));
        }

        let ntri = mesh.triangle(next);
        let w = ntri[(entry + 2) % 3];
        if w == s.b {
            return Ok(out);
        }
        let ow = side(w);
        if ow == Orientation::Collinear {
            if !within_box(mesh.vertex(w), pa, pb) {
                return Err(InsertError::InconsistentRegion(format!(
                    "{w} is on the segment line but beyond its ends"
                )));
            }
            return Err(InsertError::SegmentThroughVertex(w));
        }
        // entry edge is ntri[entry] = y, ntri[entry + 1] = x
        t = next;
        exit_slot = if ow != side(ntri[(entry + 1) % 3]) {
            (entry + 1) % 3
        } else {
            (entry + 2) % 3
        };
    }
}

/// Builds the two pockets bounding the region of `intersected` triangles.
///
/// The boundary is read off the sequence of crossed edges: each crossed
/// edge contributes its left endpoint to the upper chain and its right
/// endpoint to the lower chain. A vertex reached again later in the march
/// gets a fresh chain position with the same coordinates, which keeps the
/// chain topologically simple around dangling edges and enclosed
/// triangles.
pub fn extract_pockets(
    mesh: &TriMesh,
    intersected: &[TriId],
    s: SegmentConstraint,
) -> Result<PocketPair, InsertError> {
    let bad = |m: String| InsertError::InconsistentRegion(m);
    if intersected.len() < 2 {
        return Err(bad(format!("{} intersected triangles", intersected.len())));
    }
    for &t in intersected {
        if !mesh.is_alive(t) {
            return Err(MeshError::DeadTriangle(t).into());
        }
    }
    let first = mesh.triangle(intersected[0]);
    let last = mesh.triangle(*intersected.last().unwrap());
    if !first.contains(&s.a) || !last.contains(&s.b) {
        return Err(bad("region does not start at a and end at b".into()));
    }

    let (pa, pb) = (mesh.vertex(s.a), mesh.vertex(s.b));
    let mut upper = vec![s.a];
    let mut lower = vec![s.a];
    for pair in intersected.windows(2) {
        let (t, u) = (pair[0], pair[1]);
        let slot = (0..3)
            .find(|&k| mesh.neighbor(t, k) == Some(u))
            .ok_or_else(|| bad(format!("{t} and {u} are not adjacent")))?;
        let tri = mesh.triangle(t);
        let (x, y) = (tri[slot], tri[(slot + 1) % 3]);
        let (ox, oy) = (
            orient2d(pa, pb, mesh.vertex(x)),
            orient2d(pa, pb, mesh.vertex(y)),
        );
        let (up, low) = match (ox, oy) {
            (Orientation::Ccw, Orientation::Cw) => (x, y),
            (Orientation::Cw, Orientation::Ccw) => (y, x),
            _ => return Err(bad(format!("edge {x} - {y} is not crossed by the segment"))),
        };
        if *upper.last().unwrap() != up {
            upper.push(up);
        }
        if *lower.last().unwrap() != low {
            lower.push(low);
        }
    }
    upper.push(s.b);
    lower.push(s.b);
    upper.reverse();

    let build = |chain: Vec<VertexId>| {
        let pts = chain.iter().map(|&v| mesh.vertex(v)).collect();
        PocketPolygon::with_origin(pts, chain)
    };
    Ok(PocketPair {
        upper: build(upper)?,
        lower: build(lower)?,
    })
}

/// Triangulates a pocket and maps the result back to mesh vertex ids.
fn fill_pocket(pocket: &PocketPolygon) -> Result<Vec<[VertexId; 3]>, InsertError> {
    let tris = linear_earcut(pocket)?;
    Ok(tris
        .into_iter()
        .map(|t| t.map(|i| pocket.origin(i)))
        .collect())
}

/// Makes `a - b` a constrained edge of the mesh.
///
/// An existing edge is only marked. A segment running exactly through
/// another vertex is split there and each piece inserted in turn; pieces
/// that already exist as edges (collinear overlap) are marked as they are.
/// The pieces are processed in order from `a`, and pieces finished before
/// an error stay in the mesh.
pub fn insert_segment(
    mesh: &mut TriMesh,
    s: SegmentConstraint,
) -> Result<InsertReport, InsertError> {
    check_vertex(mesh, s.a)?;
    check_vertex(mesh, s.b)?;
    if s.a == s.b {
        return Err(InsertError::SameEndpoints(s.a));
    }
    let mut report = InsertReport::default();
    let mut pending = vec![(s.a, s.b)];
    while let Some((a, b)) = pending.pop() {
        if mesh.edge_exists(a, b) {
            mesh.mark_constraint(a, b);
            report.pieces.push((a, b));
            continue;
        }
        let piece = SegmentConstraint::new(a, b);
        let intersected = match collect_intersected(mesh, piece) {
            Err(InsertError::SegmentThroughVertex(v)) => {
                pending.push((v, b));
                pending.push((a, v));
                continue;
            }
            other => other?,
        };
        let pockets = extract_pockets(mesh, &intersected, piece)?;
        let mut fresh = fill_pocket(&pockets.upper)?;
        fresh.extend(fill_pocket(&pockets.lower)?);

        let old: Vec<[VertexId; 3]> = intersected.iter().map(|&t| mesh.triangle(t)).collect();
        mesh.remove_triangles(&intersected)?;
        if let Err(e) = mesh.add_triangles(&fresh) {
            mesh.add_triangles(&old)
                .expect("restoring removed triangles");
            return Err(e.into());
        }
        mesh.mark_constraint(a, b);
        report.pieces.push((a, b));
        report.removed += intersected.len();
        report.added += fresh.len();
    }
    Ok(report)
}

/// True when constrained edges chain from `a` to `b` along the segment.
pub fn constraint_covered(mesh: &TriMesh, a: VertexId, b: VertexId) -> bool {
    if a.0 >= mesh.vertex_count() || b.0 >= mesh.vertex_count() || a == b {
        return false;
    }
    let (pa, pb) = (mesh.vertex(a), mesh.vertex(b));
    let mut cur = a;
    for _ in 0..mesh.vertex_count() {
        if cur == b {
            return true;
        }
        let pc = mesh.vertex(cur);
        let step = mesh
            .incident(cur)
            .iter()
            .flat_map(|&t| mesh.triangle(t))
            .filter(|&w| w != cur && mesh.is_constrained(cur, w))
            .find(|&w| {
                let pw = mesh.vertex(w);
                orient2d(pa, pb, pw) == Orientation::Collinear
                    && within_box(pw, pa, pb)
                    && on_ray(pc, pb, pw)
            });
        match step {
            Some(w) => cur = w,
            None => return false,
        }
    }
    cur == b
}
