use std::collections::BTreeSet;

use crate::predicates::{orient2d, Containment, Orientation, Point2};

use super::{EarcutError, EarcutStats, PocketPolygon, Triple};

/// Quadratic earcut for general simple polygons, with the full diagonal
/// test on every candidate ear. The lowest alive chain position that is an
/// ear is always cut first.
pub fn classic_earcut(poly: &PocketPolygon) -> Result<Vec<Triple>, EarcutError> {
    classic_earcut_with_stats(poly).map(|(t, _)| t)
}

pub fn classic_earcut_with_stats(
    poly: &PocketPolygon,
) -> Result<(Vec<Triple>, EarcutStats), EarcutError> {
    let mut run = Classic::new(poly);
    let tris = run.run()?;
    Ok((
        tris,
        EarcutStats {
            orient_calls: run.orient_calls,
        },
    ))
}

struct Classic<'a> {
    poly: &'a PocketPolygon,
    prev: Vec<usize>,
    next: Vec<usize>,
    convex: Vec<bool>,
    ears: BTreeSet<usize>,
    remaining: usize,
    orient_calls: usize,
}

impl<'a> Classic<'a> {
    fn new(poly: &'a PocketPolygon) -> Self {
        let n = poly.len();
        Classic {
            poly,
            prev: (0..n).map(|i| (i + n - 1) % n).collect(),
            next: (0..n).map(|i| (i + 1) % n).collect(),
            convex: vec![false; n],
            ears: BTreeSet::new(),
            remaining: n,
            orient_calls: 0,
        }
    }

    #[inline]
    fn orient(&mut self, a: Point2, b: Point2, c: Point2) -> Orientation {
        self.orient_calls += 1;
        orient2d(a, b, c)
    }

    fn update_convexity(&mut self, i: usize) {
        let (a, b, c) = (
            self.poly.point(self.prev[i]),
            self.poly.point(i),
            self.poly.point(self.next[i]),
        );
        self.convex[i] = self.orient(a, b, c) == Orientation::Ccw;
    }

    fn contains(&mut self, p: Point2, a: Point2, b: Point2, c: Point2) -> Containment {
        let o1 = self.orient(a, b, p);
        if o1 == Orientation::Cw {
            return Containment::Outside;
        }
        let o2 = self.orient(b, c, p);
        if o2 == Orientation::Cw {
            return Containment::Outside;
        }
        let o3 = self.orient(c, a, p);
        if o3 == Orientation::Cw {
            return Containment::Outside;
        }
        if o1 == Orientation::Ccw && o2 == Orientation::Ccw && o3 == Orientation::Ccw {
            Containment::StrictlyInside
        } else {
            Containment::OnBoundary
        }
    }

    fn is_ear(&mut self, i: usize) -> bool {
        if !self.convex[i] {
            return false;
        }
        let (p, nx) = (self.prev[i], self.next[i]);
        let (a, b, c) = (self.poly.point(p), self.poly.point(i), self.poly.point(nx));
        let mut j = self.next[nx];
        while j != p {
            if !self.convex[j] {
                let q = self.poly.point(j);
                match self.contains(q, a, b, c) {
                    Containment::Outside => {}
                    Containment::StrictlyInside => return false,
                    // a coincident copy of a corner does not block the ear
                    Containment::OnBoundary => {
                        if q != a && q != b && q != c {
                            return false;
                        }
                    }
                }
            }
            j = self.next[j];
        }
        true
    }

    fn refresh(&mut self, i: usize) {
        self.update_convexity(i);
        if self.is_ear(i) {
            self.ears.insert(i);
        } else {
            self.ears.remove(&i);
        }
    }

    fn run(&mut self) -> Result<Vec<Triple>, EarcutError> {
        let n = self.poly.len();
        for i in 0..n {
            self.update_convexity(i);
        }
        for i in 0..n {
            if self.is_ear(i) {
                self.ears.insert(i);
            }
        }
        let mut out = Vec::with_capacity(n - 2);
        while self.remaining > 3 {
            let Some(v) = self.ears.pop_first() else {
                return Err(EarcutError::NoEarFound {
                    remaining: self.remaining,
                });
            };
            let (p, nx) = (self.prev[v], self.next[v]);
            out.push([p, v, nx]);
            self.next[p] = nx;
            self.prev[nx] = p;
            self.remaining -= 1;
            self.refresh(p);
            self.refresh(nx);
        }
        // the last three alive positions
        let v = match self.ears.first() {
            Some(&v) => v,
            None => {
                return Err(EarcutError::NoEarFound {
                    remaining: self.remaining,
                })
            }
        };
        out.push([self.prev[v], v, self.next[v]]);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(f64, f64)]) -> PocketPolygon {
        PocketPolygon::new(v.iter().map(|&p| Point2::from(p)).collect()).unwrap()
    }

    #[test]
    fn convex_polygon_gives_fan_count() {
        let n = 12;
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let t = i as f64 / n as f64 * std::f64::consts::TAU;
                (t.cos(), t.sin())
            })
            .collect();
        let tris = classic_earcut(&poly(&pts)).unwrap();
        assert_eq!(tris.len(), n - 2);
    }

    #[test]
    fn square_lowest_position_first() {
        let p = poly(&[(1., 0.), (1., 1.), (0., 1.), (0., 0.)]);
        assert_eq!(classic_earcut(&p).unwrap(), vec![[3, 0, 1], [3, 1, 2]]);
    }

    #[test]
    fn reflex_vertex_blocks_ear() {
        // an arrow: the ear at the tip 1 would swallow the reflex vertex 3
        let p = poly(&[(0., 0.), (2., 1.), (0., 2.), (0.5, 1.)]);
        let tris = classic_earcut(&p).unwrap();
        assert_eq!(tris, vec![[3, 0, 1], [3, 1, 2]]);
    }

    #[test]
    fn self_intersecting_chain_fails() {
        // a self-crossing chain with positive net area: the ears run out
        // on a clockwise last triangle
        let p = poly(&[(6., 3.), (2., 4.), (1., 1.), (5., 3.), (4., 6.)]);
        assert_eq!(
            classic_earcut(&p),
            Err(EarcutError::NoEarFound { remaining: 3 })
        );
    }

    #[test]
    fn spiral_needs_the_diagonal_test() {
        let p = poly(&[
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
        ]);
        let tris = classic_earcut(&p).unwrap();
        assert!(super::super::validate_triangulation(&p, &tris).is_pass());
    }
}
