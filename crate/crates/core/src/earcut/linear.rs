use std::collections::VecDeque;

use crate::predicates::{orient2d, Orientation};

use super::{EarcutError, EarcutStats, PocketPolygon, Triple};

/// Doubly linked chain plus FIFO ear queue, reusable across runs.
#[derive(Clone, Debug, Default)]
pub struct EarcutState {
    prev: Vec<usize>,
    next: Vec<usize>,
    ears: VecDeque<usize>,
    in_queue: Vec<bool>,
    alive: Vec<bool>,
    orient_calls: usize,
}

impl EarcutState {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, n: usize) {
        self.prev.clear();
        self.prev.push(n - 1);
        self.prev.extend(0..n - 1);
        self.next.clear();
        self.next.extend(1..n);
        self.next.push(0);
        self.ears.clear();
        self.in_queue.clear();
        self.in_queue.resize(n, false);
        self.alive.clear();
        self.alive.resize(n, true);
        self.orient_calls = 0;
    }

    #[inline]
    pub fn prev(&self, i: usize) -> usize {
        self.prev[i]
    }

    #[inline]
    pub fn next(&self, i: usize) -> usize {
        self.next[i]
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    /// Strict convexity of position `i` in the current chain.
    #[inline]
    pub fn is_convex(&mut self, poly: &PocketPolygon, i: usize) -> bool {
        self.orient_calls += 1;
        corner_is_convex(self, poly, i)
    }

    fn enqueue(&mut self, i: usize) {
        self.in_queue[i] = true;
        self.ears.push_back(i);
    }
}

#[inline]
fn corner_is_convex(state: &EarcutState, poly: &PocketPolygon, i: usize) -> bool {
    orient2d(
        poly.point(state.prev[i]),
        poly.point(i),
        poly.point(state.next[i]),
    ) == Orientation::Ccw
}

/// Triangulates a segment-insertion pocket by cutting internal convex
/// vertices without any point-in-triangle test.
///
/// The input must be a pocket cut out by a segment insertion (or any other
/// polygon weakly visible from its closing edge); this is not checked.
/// Outside that class the ear queue can run dry, reported as
/// [`EarcutError::EarQueueExhausted`], or the output can overlap.
pub fn linear_earcut(poly: &PocketPolygon) -> Result<Vec<Triple>, EarcutError> {
    let mut state = EarcutState::new();
    let mut out = Vec::with_capacity(poly.len() - 2);
    linear_earcut_into(&mut state, poly, &mut out)?;
    Ok(out)
}

/// Like [`linear_earcut`], reusing `state` and appending into `out`
/// (cleared first).
pub fn linear_earcut_into(
    state: &mut EarcutState,
    poly: &PocketPolygon,
    out: &mut Vec<Triple>,
) -> Result<EarcutStats, EarcutError> {
    let n = poly.len();
    let last = n - 1;
    state.reset(n);
    out.clear();

    for i in 1..last {
        if state.is_convex(poly, i) {
            state.enqueue(i);
        }
    }

    while let Some(v) = state.ears.pop_front() {
        debug_assert!(
            corner_is_convex(state, poly, v),
            "queued position {v} lost convexity before extraction"
        );
        let p = state.prev[v];
        let nx = state.next[v];
        out.push([p, v, nx]);

        state.alive[v] = false;
        state.next[p] = nx;
        state.prev[nx] = p;

        if !state.in_queue[p] && p != 0 && p != last && state.is_convex(poly, p) {
            state.enqueue(p);
        }
        if !state.in_queue[nx] && nx != 0 && nx != last && state.is_convex(poly, nx) {
            state.enqueue(nx);
        }
    }

    if out.len() != n - 2 {
        return Err(EarcutError::EarQueueExhausted {
            cut: out.len(),
            expected: n - 2,
        });
    }
    Ok(EarcutStats {
        orient_calls: state.orient_calls,
    })
}
