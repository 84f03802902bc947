use std::collections::HashMap;
use std::fmt;

use crate::exact;
use crate::predicates::{orient2d, Orientation};

use super::{PocketPolygon, Triple};

/// The individual checks, numbered as they are listed in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Exactly `n - 2` triangles.
    Count = 1,
    /// Every triple is well formed and strictly counterclockwise.
    Orientation = 2,
    /// Summed triangle area equals polygon area, exactly.
    Area = 3,
    /// Every chain edge, including the constrained segment, bounds exactly
    /// one triangle on its interior side and none on the other.
    Boundary = 4,
    /// No directed edge is used twice, and every non-chain edge is shared by
    /// two triangles in opposite directions.
    InteriorEdges = 5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violation.is_none()
    }

    pub fn failed_check(&self) -> Option<Check> {
        self.violation.as_ref().map(|v| v.check)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass"),
            Some(v) => write!(
                f,
                "fail at check {} ({:?}): {}",
                v.check as u8, v.check, v.detail
            ),
        }
    }
}

fn fail(check: Check, detail: String) -> ValidationReport {
    ValidationReport {
        violation: Some(Violation { check, detail }),
    }
}

/// Checks that `tris` (chain positions) is a triangulation of `poly`.
///
/// Edge multiplicity (check 5) is evaluated before boundary coverage
/// (check 4): a duplicated directed edge is the more specific diagnosis
/// of overlapping triangles.
pub fn validate_triangulation(poly: &PocketPolygon, tris: &[Triple]) -> ValidationReport {
    let n = poly.len();
    if tris.len() != n - 2 {
        return fail(
            Check::Count,
            format!("{} triangles, expected {}", tris.len(), n - 2),
        );
    }

    for t in tris {
        if t.iter().any(|&i| i >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return fail(Check::Orientation, format!("malformed triple {t:?}"));
        }
        let o = orient2d(poly.point(t[0]), poly.point(t[1]), poly.point(t[2]));
        if o != Orientation::Ccw {
            return fail(Check::Orientation, format!("triple {t:?} is {o:?}"));
        }
    }

    let tri_area = exact::triangles_area2(tris.iter().map(|t| t.map(|i| poly.point(i))));
    let poly_area = exact::polygon_area2(poly.points());
    if tri_area != poly_area {
        return fail(
            Check::Area,
            format!("triangles cover {tri_area}/2, polygon encloses {poly_area}/2"),
        );
    }

    let mut directed: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * tris.len());
    for t in tris {
        for k in 0..3 {
            *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
        }
    }
    let is_chain = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;

    let mut edges: Vec<_> = directed.iter().map(|(&e, &c)| (e, c)).collect();
    edges.sort_unstable();
    for &((a, b), count) in &edges {
        if count > 1 {
            return fail(
                Check::InteriorEdges,
                format!("directed edge {a}->{b} used {count} times"),
            );
        }
        if !is_chain(a, b) && !directed.contains_key(&(b, a)) {
            return fail(
                Check::InteriorEdges,
                format!("interior edge {a}->{b} has no opposite twin"),
            );
        }
    }

    for a in 0..n {
        let b = (a + 1) % n;
        if directed.get(&(a, b)) != Some(&1) {
            return fail(
                Check::Boundary,
                format!("chain edge {a}->{b} not covered once"),
            );
        }
        if directed.contains_key(&(b, a)) {
            return fail(
                Check::Boundary,
                format!("chain edge {a}->{b} covered from outside"),
            );
        }
    }

    ValidationReport::default()
}
