//! Ear-cutting triangulation of pocket polygons.
//!
//! [`linear_earcut`] is the linear-time kernel used by segment insertion.
//! It only ever cuts internal vertices (neither endpoint of the constrained
//! segment) and trusts strict convexity alone. [`classic_earcut`] performs
//! the full diagonal test and works on any simple polygon; it serves as the
//! reference and as the quadratic baseline in benchmarks.

mod classic;
mod linear;
mod polygon;
mod validate;

use thiserror::Error;

pub use classic::{classic_earcut, classic_earcut_with_stats};
pub use linear::{linear_earcut, linear_earcut_into, EarcutState};
pub use polygon::{PocketPolygon, PolygonError};
pub use validate::{validate_triangulation, Check, ValidationReport, Violation};

/// A triangle as three chain positions, counterclockwise.
pub type Triple = [usize; 3];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EarcutStats {
    /// Orientation predicate evaluations during the run.
    pub orient_calls: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EarcutError {
    #[error(
        "ear queue exhausted after {cut} of {expected} triangles; \
         the polygon is not a segment-insertion pocket (not weakly visible from its base)"
    )]
    EarQueueExhausted { cut: usize, expected: usize },
    #[error("no valid ear among {remaining} remaining vertices; the polygon is not simple")]
    NoEarFound { remaining: usize },
}
