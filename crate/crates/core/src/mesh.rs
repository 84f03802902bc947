//! Indexed triangle mesh with per-edge adjacency, vertex incidence and
//! constrained-edge marks.
//!
//! Triangles are tomb-stoned on removal so that ids stay stable while a
//! segment insertion is in flight. Edge slot `i` of a triangle `[v0, v1, v2]`
//! is the directed edge `v[i] -> v[(i + 1) % 3]`, and `adjacency[t][i]` is the
//! triangle on the other side of that edge, if any.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{self, RationalPoint};
use crate::predicates::{orient2d, Orientation, Point2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for TriId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// Structural errors from mesh construction and editing, and the violations
/// reported by [`TriMesh::audit`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("vertex index {index} out of range ({count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteVertex(VertexId),
    #[error("triangle {0:?} repeats a vertex")]
    RepeatedVertex([usize; 3]),
    #[error("triangle {0:?} has zero area")]
    ZeroArea([usize; 3]),
    #[error("orientation: triangle {0:?} is clockwise")]
    Clockwise([usize; 3]),
    #[error("non-manifold edge {0} - {1}")]
    NonManifoldEdge(VertexId, VertexId),
    #[error("triangle {0} does not exist or is already removed")]
    DeadTriangle(TriId),
    #[error("adjacency of {tri} across slot {slot} is inconsistent")]
    Adjacency { tri: TriId, slot: usize },
    #[error("incidence list of {0} is inconsistent")]
    Incidence(VertexId),
    #[error("constrained pair {0} - {1} is not a mesh edge")]
    ConstraintNotEdge(VertexId, VertexId),
    #[error("alive triangle count {recorded} disagrees with {actual} alive flags")]
    AliveCount { recorded: usize, actual: usize },
}

#[derive(Clone, Debug, Default)]
pub struct TriMesh {
    vertices: Vec<Point2>,
    triangles: Vec<[VertexId; 3]>,
    alive: Vec<bool>,
    adjacency: Vec<[Option<TriId>; 3]>,
    incidence: Vec<Vec<TriId>>,
    constraints: BTreeSet<(VertexId, VertexId)>,
    alive_count: usize,
}

fn edge_key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl TriMesh {
    /// An empty mesh over a fixed vertex array.
    pub fn with_vertices(vertices: Vec<Point2>) -> Result<Self, MeshError> {
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(MeshError::NonFiniteVertex(VertexId(i)));
        }
        let n = vertices.len();
        Ok(TriMesh {
            vertices,
            incidence: vec![Vec::new(); n],
            ..Default::default()
        })
    }

    /// Builds a mesh from index triples, flipping clockwise triples.
    pub fn from_triangles(points: Vec<Point2>, tris: &[[usize; 3]]) -> Result<Self, MeshError> {
        let mut mesh = TriMesh::with_vertices(points)?;
        let mut oriented = Vec::with_capacity(tris.len());
        for &t in tris {
            mesh.check_indices(t)?;
            let [a, b, c] = t.map(|i| mesh.vertices[i]);
            oriented.push(match orient2d(a, b, c) {
                Orientation::Ccw => t,
                Orientation::Cw => [t[0], t[2], t[1]],
                Orientation::Collinear => return Err(MeshError::ZeroArea(t)),
            });
        }
        mesh.add_index_triangles(&oriented)?;
        Ok(mesh)
    }

    /// Builds a mesh from index triples exactly as given; clockwise triples
    /// are rejected instead of flipped.
    pub fn from_triangles_strict(
        points: Vec<Point2>,
        tris: &[[usize; 3]],
    ) -> Result<Self, MeshError> {
        let mut mesh = TriMesh::with_vertices(points)?;
        mesh.add_index_triangles(tris)?;
        Ok(mesh)
    }

    fn add_index_triangles(&mut self, tris: &[[usize; 3]]) -> Result<(), MeshError> {
        for &t in tris {
            self.check_indices(t)?;
        }
        let tris: Vec<[VertexId; 3]> = tris.iter().map(|t| t.map(VertexId)).collect();
        self.add_triangles(&tris).map(|_| ())
    }

    fn check_indices(&self, t: [usize; 3]) -> Result<(), MeshError> {
        let count = self.vertices.len();
        if let Some(&index) = t.iter().find(|&&i| i >= count) {
            return Err(MeshError::VertexOutOfRange { index, count });
        }
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(MeshError::RepeatedVertex(t));
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, p: Point2) -> Result<VertexId, MeshError> {
        let id = VertexId(self.vertices.len());
        if !p.is_finite() {
            return Err(MeshError::NonFiniteVertex(id));
        }
        self.vertices.push(p);
        self.incidence.push(Vec::new());
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertex(&self, v: VertexId) -> Point2 {
        self.vertices[v.0]
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Number of alive triangles.
    pub fn triangle_count(&self) -> usize {
        self.alive_count
    }

    /// Number of triangle slots, dead ones included.
    pub fn triangle_capacity(&self) -> usize {
        self.triangles.len()
    }

    #[inline]
    pub fn triangle(&self, t: TriId) -> [VertexId; 3] {
        self.triangles[t.0]
    }

    #[inline]
    pub fn is_alive(&self, t: TriId) -> bool {
        self.alive.get(t.0).copied().unwrap_or(false)
    }

    #[inline]
    pub fn neighbor(&self, t: TriId, slot: usize) -> Option<TriId> {
        self.adjacency[t.0][slot]
    }

    pub fn incident(&self, v: VertexId) -> &[TriId] {
        &self.incidence[v.0]
    }

    pub fn alive_triangles(&self) -> impl Iterator<Item = (TriId, [VertexId; 3])> + '_ {
        self.triangles
            .iter()
            .enumerate()
            .filter(|(i, _)| self.alive[*i])
            .map(|(i, t)| (TriId(i), *t))
    }

    pub fn triangle_points(&self, t: TriId) -> [Point2; 3] {
        self.triangles[t.0].map(|v| self.vertices[v.0])
    }

    /// Slot of the directed edge `a -> b` in triangle `t`.
    #[inline]
    pub fn slot_of(&self, t: TriId, a: VertexId, b: VertexId) -> Option<usize> {
        let tri = &self.triangles[t.0];
        (0..3).find(|&i| tri[i] == a && tri[(i + 1) % 3] == b)
    }

    fn find_directed(&self, a: VertexId, b: VertexId) -> Option<(TriId, usize)> {
        self.incidence[a.0]
            .iter()
            .find_map(|&t| self.slot_of(t, a, b).map(|s| (t, s)))
    }

    /// True iff `a - b` is an edge of some alive triangle.
    pub fn edge_exists(&self, a: VertexId, b: VertexId) -> bool {
        if a.0 >= self.vertices.len() || b.0 >= self.vertices.len() {
            return false;
        }
        self.find_directed(a, b).is_some() || self.find_directed(b, a).is_some()
    }

    pub fn is_constrained(&self, a: VertexId, b: VertexId) -> bool {
        self.constraints.contains(&edge_key(a, b))
    }

    /// Marks an existing edge as constrained. Returns false when `a - b` is
    /// not an edge.
    pub fn mark_constraint(&mut self, a: VertexId, b: VertexId) -> bool {
        if a == b || !self.edge_exists(a, b) {
            return false;
        }
        self.constraints.insert(edge_key(a, b));
        true
    }

    pub fn constraints(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.constraints.iter().copied()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// Tomb-stones the given triangles. Edges they shared with surviving
    /// triangles become boundary edges of the survivors.
    pub fn remove_triangles(&mut self, ids: &[TriId]) -> Result<(), MeshError> {
        let mut seen = HashSet::with_capacity(ids.len());
        for &t in ids {
            if !self.is_alive(t) || !seen.insert(t) {
                return Err(MeshError::DeadTriangle(t));
            }
        }
        for &t in ids {
            self.alive[t.0] = false;
        }
        for &t in ids {
            for slot in 0..3 {
                if let Some(n) = self.adjacency[t.0][slot].take() {
                    if self.alive[n.0] {
                        for s in self.adjacency[n.0].iter_mut() {
                            if *s == Some(t) {
                                *s = None;
                            }
                        }
                    }
                }
            }
            for v in self.triangles[t.0] {
                self.incidence[v.0].retain(|&x| x != t);
            }
        }
        self.alive_count -= ids.len();
        Ok(())
    }

    /// Appends counterclockwise triangles and links them to their
    /// neighbors. On error nothing from this batch remains alive.
    pub fn add_triangles(&mut self, tris: &[[VertexId; 3]]) -> Result<Vec<TriId>, MeshError> {
        for t in tris {
            let raw = t.map(|v| v.0);
            self.check_indices(raw)?;
            let [a, b, c] = t.map(|v| self.vertices[v.0]);
            match orient2d(a, b, c) {
                Orientation::Ccw => {}
                Orientation::Collinear => return Err(MeshError::ZeroArea(raw)),
                Orientation::Cw => return Err(MeshError::Clockwise(raw)),
            }
        }
        let mut added = Vec::with_capacity(tris.len());
        for &tri in tris {
            match self.link_triangle(tri) {
                Ok(id) => added.push(id),
                Err(e) => {
                    self.remove_triangles(&added)
                        .expect("rollback of freshly added triangles");
                    return Err(e);
                }
            }
        }
        Ok(added)
    }

    fn link_triangle(&mut self, tri: [VertexId; 3]) -> Result<TriId, MeshError> {
        let mut links = [None; 3];
        for i in 0..3 {
            let (a, b) = (tri[i], tri[(i + 1) % 3]);
            if self.find_directed(a, b).is_some() {
                return Err(MeshError::NonManifoldEdge(a, b));
            }
            if let Some((n, s)) = self.find_directed(b, a) {
                if self.adjacency[n.0][s].is_some() {
                    return Err(MeshError::NonManifoldEdge(a, b));
                }
                links[i] = Some((n, s));
            }
        }
        let id = TriId(self.triangles.len());
        self.triangles.push(tri);
        self.alive.push(true);
        self.adjacency.push([None; 3]);
        for (i, link) in links.iter().enumerate() {
            if let Some((n, s)) = *link {
                self.adjacency[id.0][i] = Some(n);
                self.adjacency[n.0][s] = Some(id);
            }
        }
        for v in tri {
            self.incidence[v.0].push(id);
        }
        self.alive_count += 1;
        Ok(id)
    }

    /// Full consistency check: orientation, edge multiplicity, adjacency,
    /// incidence and constraints.
    pub fn audit(&self) -> Result<(), MeshError> {
        let actual = self.alive.iter().filter(|a| **a).count();
        if actual != self.alive_count {
            return Err(MeshError::AliveCount {
                recorded: self.alive_count,
                actual,
            });
        }
        let mut directed: HashMap<(VertexId, VertexId), TriId> = HashMap::new();
        for (t, tri) in self.alive_triangles() {
            let raw = tri.map(|v| v.0);
            self.check_indices(raw)?;
            let [a, b, c] = self.triangle_points(t);
            match orient2d(a, b, c) {
                Orientation::Ccw => {}
                Orientation::Collinear => return Err(MeshError::ZeroArea(raw)),
                Orientation::Cw => return Err(MeshError::Clockwise(raw)),
            }
            for i in 0..3 {
                let e = (tri[i], tri[(i + 1) % 3]);
                if directed.insert(e, t).is_some() {
                    return Err(MeshError::NonManifoldEdge(e.0, e.1));
                }
            }
        }
        for (t, tri) in self.alive_triangles() {
            for slot in 0..3 {
                let expected = directed.get(&(tri[(slot + 1) % 3], tri[slot])).copied();
                if self.adjacency[t.0][slot] != expected {
                    return Err(MeshError::Adjacency { tri: t, slot });
                }
            }
        }
        let mut expected_incidence: Vec<Vec<TriId>> = vec![Vec::new(); self.vertices.len()];
        for (t, tri) in self.alive_triangles() {
            for v in tri {
                expected_incidence[v.0].push(t);
            }
        }
        for (v, expected) in expected_incidence.iter_mut().enumerate() {
            let mut have = self.incidence[v].clone();
            have.sort_unstable();
            expected.sort_unstable();
            if have != *expected {
                return Err(MeshError::Incidence(VertexId(v)));
            }
        }
        for &(a, b) in &self.constraints {
            if !directed.contains_key(&(a, b)) && !directed.contains_key(&(b, a)) {
                return Err(MeshError::ConstraintNotEdge(a, b));
            }
        }
        Ok(())
    }

    /// `(interior, boundary)` undirected edge counts over alive triangles.
    pub fn edge_counts(&self) -> (usize, usize) {
        let mut interior = 0;
        let mut boundary = 0;
        for (t, _) in self.alive_triangles() {
            for slot in 0..3 {
                match self.adjacency[t.0][slot] {
                    Some(n) if n > t => interior += 1,
                    Some(_) => {}
                    None => boundary += 1,
                }
            }
        }
        (interior, boundary)
    }

    /// Directed boundary edges, each oriented with the mesh interior on its
    /// left.
    pub fn boundary_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (t, tri) in self.alive_triangles() {
            for slot in 0..3 {
                if self.adjacency[t.0][slot].is_none() {
                    out.push((tri[slot], tri[(slot + 1) % 3]));
                }
            }
        }
        out
    }

    /// Twice the summed signed area of alive triangles, exact.
    pub fn area2(&self) -> BigRational {
        exact::triangles_area2(self.alive_triangles().map(|(t, _)| self.triangle_points(t)))
    }

    /// Twice the area enclosed by the boundary loops, exact. Holes
    /// contribute negatively through their clockwise loops.
    pub fn boundary_area2(&self) -> BigRational {
        self.boundary_edges()
            .into_iter()
            .fold(BigRational::zero(), |acc, (a, b)| {
                let pa = RationalPoint::from(self.vertex(a));
                let pb = RationalPoint::from(self.vertex(b));
                acc + (&pa.x * &pb.y - &pa.y * &pb.x)
            })
    }

    /// A copy with dead triangles dropped. Vertex ids and constraints are
    /// unchanged; triangle ids are renumbered in their original order.
    pub fn compacted(&self) -> TriMesh {
        let tris: Vec<[usize; 3]> = self
            .alive_triangles()
            .map(|(_, t)| t.map(|v| v.0))
            .collect();
        let mut mesh = TriMesh::from_triangles_strict(self.vertices.clone(), &tris)
            .expect("alive triangles of a consistent mesh");
        mesh.constraints = self.constraints.clone();
        mesh
    }

    /// Alive triangles as index triples rotated so the smallest id leads,
    /// sorted. Two meshes with equal canonical lists have equal topology.
    pub fn canonical_triangles(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = self
            .alive_triangles()
            .map(|(_, t)| {
                let t = t.map(|v| v.0);
                let m = (0..3).min_by_key(|&i| t[i]).unwrap();
                [t[m], t[(m + 1) % 3], t[(m + 2) % 3]]
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point2> {
        vec![
            Point2::new(0., 0.),
            Point2::new(1., 0.),
            Point2::new(1., 1.),
            Point2::new(0., 1.),
        ]
    }

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn square_edge_counts() {
        let m = TriMesh::from_triangles(square(), &[[0, 1, 2], [0, 2, 3]]).unwrap();
        m.audit().unwrap();
        assert_eq!(m.edge_counts(), (1, 4));
        assert!(m.edge_exists(v(0), v(2)));
        assert!(!m.edge_exists(v(1), v(3)));
    }

    #[test]
    fn single_triangle_and_flip() {
        let m = TriMesh::from_triangles(square(), &[[0, 2, 1]]).unwrap();
        m.audit().unwrap();
        assert_eq!(m.edge_counts(), (0, 3));
        assert_eq!(m.triangle(TriId(0)), [v(0), v(1), v(2)]);
    }

    #[test]
    fn three_triangles_on_one_edge_is_non_manifold() {
        let mut pts = square();
        pts.push(Point2::new(0.5, -1.0));
        let err = TriMesh::from_triangles(pts, &[[0, 1, 2], [0, 2, 3], [0, 4, 2]]).unwrap_err();
        assert!(matches!(err, MeshError::NonManifoldEdge(..)), "{err}");
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            TriMesh::from_triangles(square(), &[[0, 1, 7]]),
            Err(MeshError::VertexOutOfRange { index: 7, .. })
        ));
        let mut pts = square();
        pts.push(Point2::new(2., 0.));
        assert!(matches!(
            TriMesh::from_triangles(pts, &[[0, 1, 4]]),
            Err(MeshError::ZeroArea(_))
        ));
        assert!(matches!(
            TriMesh::from_triangles_strict(square(), &[[0, 2, 1]]),
            Err(MeshError::Clockwise(_))
        ));
        assert!(matches!(
            TriMesh::from_triangles(square(), &[[0, 0, 1]]),
            Err(MeshError::RepeatedVertex(_))
        ));
    }

    #[test]
    fn remove_and_refill() {
        let mut m = TriMesh::from_triangles(square(), &[[0, 1, 2], [0, 2, 3]]).unwrap();
        m.remove_triangles(&[]).unwrap();
        assert_eq!(m.triangle_count(), 2);

        m.remove_triangles(&[TriId(0)]).unwrap();
        assert_eq!(m.triangle_count(), 1);
        assert_eq!(m.neighbor(TriId(1), 0), None);
        m.audit().unwrap();
        assert!(matches!(
            m.remove_triangles(&[TriId(0)]),
            Err(MeshError::DeadTriangle(_))
        ));

        m.remove_triangles(&[TriId(1)]).unwrap();
        assert_eq!(m.triangle_count(), 0);

        m.add_triangles(&[]).unwrap();
        assert_eq!(m.triangle_count(), 0);
        m.add_triangles(&[[v(0), v(1), v(3)], [v(1), v(2), v(3)]])
            .unwrap();
        m.audit().unwrap();
        assert_eq!(m.triangle_count(), 2);
        let (i, b) = m.edge_counts();
        assert_eq!(i + b, 5);
        assert!(m.edge_exists(v(1), v(3)));
    }

    #[test]
    fn add_rejects_third_triangle_on_edge_and_rolls_back() {
        let mut pts = square();
        pts.push(Point2::new(0.3, 0.8));
        let mut m = TriMesh::from_triangles(pts, &[[0, 1, 2], [0, 2, 3]]).unwrap();
        // the second one reuses 0 -> 2, already an edge of triangle 1
        let err = m.add_triangles(&[[v(3), v(1), v(4)], [v(0), v(2), v(4)]]);
        assert!(matches!(err, Err(MeshError::NonManifoldEdge(..))));
        assert_eq!(m.triangle_count(), 2);
        m.audit().unwrap();
        assert!(matches!(
            m.add_triangles(&[[v(0), v(2), v(1)]]),
            Err(MeshError::Clockwise(_))
        ));
    }

    #[test]
    fn constraints_must_be_edges() {
        let mut m = TriMesh::from_triangles(square(), &[[0, 1, 2], [0, 2, 3]]).unwrap();
        assert!(m.mark_constraint(v(2), v(0)));
        assert!(m.is_constrained(v(0), v(2)));
        assert!(!m.mark_constraint(v(1), v(3)));
        m.remove_triangles(&[TriId(0), TriId(1)]).unwrap();
        assert!(matches!(m.audit(), Err(MeshError::ConstraintNotEdge(..))));
    }

    #[test]
    fn areas_agree() {
        let m = TriMesh::from_triangles(square(), &[[0, 1, 2], [0, 2, 3]]).unwrap();
        assert_eq!(m.area2(), m.boundary_area2());
        assert_eq!(m.area2(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn compaction_keeps_topology() {
        let mut m = TriMesh::from_triangles(square(), &[[0, 1, 2], [0, 2, 3]]).unwrap();
        m.remove_triangles(&[TriId(0)]).unwrap();
        m.add_triangles(&[[v(0), v(1), v(2)]]).unwrap();
        let c = m.compacted();
        c.audit().unwrap();
        assert_eq!(c.triangle_capacity(), 2);
        assert_eq!(c.canonical_triangles(), m.canonical_triangles());
    }
}
