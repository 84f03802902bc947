//! Constrained triangulation by segment insertion.
//!
//! Inserting a segment removes the triangles it crosses, leaving two
//! pockets, one on each side. Each pocket is weakly visible from the
//! segment, so it can be re-triangulated by cutting convex vertices in
//! queue order without ever testing whether another vertex lies inside the
//! ear. That makes every pocket linear in its size.
//!
//! ```
//! use pocketcut::{build_constrained, Point2, ProblemInput, VertexId};
//!
//! let input = ProblemInput {
//!     points: vec![
//!         Point2::new(0.0, 0.0),
//!         Point2::new(1.0, 0.0),
//!         Point2::new(1.0, 1.0),
//!         Point2::new(0.0, 1.0),
//!     ],
//!     segments: vec![(1, 3)],
//! };
//! let mesh = build_constrained(&input).unwrap();
//! assert_eq!(mesh.triangle_count(), 2);
//! assert!(mesh.is_constrained(VertexId(1), VertexId(3)));
//! ```

pub mod bench;
pub mod builder;
pub mod earcut;
pub mod exact;
pub mod generators;
pub mod insertion;
pub mod io;
pub mod mesh;
pub mod predicates;

pub use builder::{build_constrained, triangulate_points, BuildError, ProblemInput};
pub use earcut::{
    classic_earcut, linear_earcut, validate_triangulation, EarcutError, PocketPolygon, Triple,
    ValidationReport,
};
pub use insertion::{insert_segment, InsertError, SegmentConstraint};
pub use mesh::{MeshError, TriId, TriMesh, VertexId};
pub use predicates::{orient2d, Orientation, Point2};
