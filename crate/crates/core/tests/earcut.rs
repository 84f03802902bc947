mod common;

use common::*;
use pocketcut::earcut::{
    classic_earcut_with_stats, linear_earcut_into, EarcutState, PocketPolygon,
};
use pocketcut::generators::{gen_collinear_fan, gen_random_pockets, gen_random_top};
use pocketcut::{classic_earcut, linear_earcut, validate_triangulation, EarcutError};
use proptest::prelude::*;

/// Positions `1..n-1` whose corner is strictly convex, by the oracle.
fn internal_convex(p: &PocketPolygon) -> Vec<usize> {
    let n = p.len();
    (1..n - 1)
        .filter(|&i| orient_sign(p.point(i - 1), p.point(i), p.point(i + 1)) > 0)
        .collect()
}

fn internal_ears_empty(p: &PocketPolygon) -> bool {
    let n = p.len();
    internal_convex(p).into_iter().all(|i| {
        let (a, b, c) = (p.point(i - 1), p.point(i), p.point(i + 1));
        (0..n)
            .filter(|&j| j + 1 != i && j != i && j != i + 1)
            .all(|j| !strictly_inside(p.point(j), a, b, c))
    })
}

fn check_both(p: &PocketPolygon) {
    let n = p.len();
    let lin = linear_earcut(p).unwrap();
    let report = validate_triangulation(p, &lin);
    assert!(report.is_pass(), "linear: {report}");
    let classic = classic_earcut(p).unwrap();
    let report = validate_triangulation(p, &classic);
    assert!(report.is_pass(), "classic: {report}");
    assert_eq!(lin.len(), n - 2);
    assert_eq!(classic.len(), n - 2);
}

#[test]
fn collinear_fans() {
    for m in 1..=300 {
        check_both(&gen_collinear_fan(m).unwrap());
    }
    let p = gen_collinear_fan(998).unwrap();
    let t = linear_earcut(&p).unwrap();
    assert_eq!(t.len(), 998);
    assert!(validate_triangulation(&p, &t).is_pass());
}

#[test]
fn spiral_is_out_of_class() {
    let p = spiral();
    assert!(matches!(
        linear_earcut(&p),
        Err(EarcutError::EarQueueExhausted { .. })
    ));
    let t = classic_earcut(&p).unwrap();
    assert!(validate_triangulation(&p, &t).is_pass());
    // the spiral does have a convex internal vertex whose ear is not empty
    assert!(!internal_ears_empty(&p));
}

#[test]
fn corpus_pockets_have_empty_ears_and_convex_laterals() {
    let corpus = gen_random_pockets(30, 150, 4).unwrap();
    assert!(corpus.len() >= 250);
    for p in &corpus {
        let n = p.len();
        assert_eq!(orient_sign(p.point(n - 1), p.point(0), p.point(1)), 1);
        assert_eq!(orient_sign(p.point(n - 2), p.point(n - 1), p.point(0)), 1);
        assert!(internal_ears_empty(p));
        check_both(p);
    }
}

#[test]
fn state_reuse_gives_identical_output() {
    let mut state = EarcutState::new();
    let mut out = Vec::new();
    for (m, seed) in [(50, 1), (8, 2), (120, 3), (50, 1)] {
        let p = gen_random_top(m, seed).unwrap();
        linear_earcut_into(&mut state, &p, &mut out).unwrap();
        assert_eq!(out, linear_earcut(&p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_top_both_engines(m in 1usize..400, seed in any::<u64>()) {
        let p = gen_random_top(m, seed).unwrap();
        let n = p.len();
        let mut state = EarcutState::new();
        let mut out = Vec::new();
        let stats = linear_earcut_into(&mut state, &p, &mut out).unwrap();
        prop_assert!(stats.orient_calls <= 3 * n);
        prop_assert!(validate_triangulation(&p, &out).is_pass());
        let (classic, cstats) = classic_earcut_with_stats(&p).unwrap();
        prop_assert!(validate_triangulation(&p, &classic).is_pass());
        prop_assert_eq!(classic.len(), out.len());
        prop_assert!(cstats.orient_calls >= n);
    }

    #[test]
    fn linear_is_deterministic(m in 1usize..100, seed in any::<u64>()) {
        let p = gen_random_top(m, seed).unwrap();
        prop_assert_eq!(linear_earcut(&p).unwrap(), linear_earcut(&p).unwrap());
    }
}
