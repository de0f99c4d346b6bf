use eiko_core::characteristics::{
    grid_pairs, ordering_check, random_pairs, trace_bidirectional, winding_number, Loop,
    TraceStatus,
};
use eiko_core::fields::{generate, negate_half_plane, Generator};
use eiko_core::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn grid(n: usize) -> GridSpec {
    GridSpec::centered(n, n, 2.0 / (n - 1) as f64, Vec2::ZERO)
        .unwrap()
        .half_shifted()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vortex_characteristics_are_straight(
        cx in -0.2..0.2f64,
        cy in -0.2..0.2f64,
        r in 0.3..0.7f64,
        t in 0.0..2.0 * PI,
    ) {
        let u = generate(&Generator::vortex(Vec2::new(cx, cy), 1.0), grid(97));
        prop_assume!(u.is_ok());
        let u = u.unwrap();
        let seed = Vec2::new(cx, cy) + Vec2::from_angle(t) * r;
        let c = trace_bidirectional(&u, seed, u.spec.h / 2.0, 20_000).unwrap();
        prop_assert!(c.length() > r);
        // the last step into the core carries O(h) interpolation error; measure away from it
        let core = Vec2::new(cx, cy);
        let far: Vec<Vec2> = c.points.iter().copied().filter(|p| (*p - core).norm() > 2.0 * u.spec.h).collect();
        let (a, b) = (far[0], far[far.len() - 1]);
        let n = (b - a).perp() * (1.0 / (b - a).norm());
        let defect = far.iter().map(|p| (*p - a).dot(n).abs()).fold(0.0, f64::max);
        prop_assert!(defect <= 2e-3 * (b - a).norm(), "defect {defect:e}");
    }

    #[test]
    fn distance_field_characteristics_are_straight(
        px in -0.3..0.3f64,
        t in 0.0..2.0 * PI,
    ) {
        let at = Vec2::new(-2.0, px);
        let u = generate(&Generator::distance_to_point(at), grid(65)).unwrap();
        let seed = Vec2::from_angle(t) * 0.3;
        let c = trace_bidirectional(&u, seed, u.spec.h / 2.0, 20_000).unwrap();
        prop_assert_eq!(c.status, TraceStatus::Exited);
        prop_assert!(c.straightness_defect() <= 1e-3 * c.length());
    }

    #[test]
    fn winding_number_is_an_integer(
        cx in -0.5..0.5f64,
        cy in -0.5..0.5f64,
        r in 0.1..0.4f64,
        s in prop::bool::ANY,
    ) {
        let alpha = if s { 1.0 } else { -1.0 };
        let u = generate(&Generator::vortex(Vec2::new(0.03, -0.02), alpha), grid(129)).unwrap();
        let center = Vec2::new(cx, cy);
        let gap = (center - Vec2::new(0.03, -0.02)).norm() - r;
        prop_assume!(gap.abs() > 0.05);
        let tol = Tolerances::default();
        let w = winding_number(&u, &Loop::Circle { center, radius: r, samples: 256 }, &tol).unwrap();
        let expect = if gap < 0.0 { 1 } else { 0 };
        prop_assert_eq!(w.degree, expect);
        prop_assert!((w.raw - expect as f64).abs() <= tol.winding_tol);
    }

    #[test]
    fn regular_fields_satisfy_the_ordering_principle(seed in 0u64..1000, t in 0.0..2.0 * PI) {
        let spec = grid(41);
        let u = generate(&Generator::distance_to_point(Vec2::from_angle(t) * 3.0), spec).unwrap();
        let idx = Window::rect(-0.4, -0.4, 0.4, 0.4).node_indices(&spec);
        let r = ordering_check(&u, &random_pairs(&idx, 4000, seed), 2.0 * spec.h);
        prop_assert!(r.pairs_tested > 500);
        prop_assert_eq!(r.violations, 0);
    }

    #[test]
    fn corrupted_fields_violate_the_ordering_principle(t in 0.0..2.0 * PI) {
        let spec = grid(33);
        let u = generate(&Generator::constant(Vec2::from_angle(t)), spec).unwrap();
        let bad = negate_half_plane(&u, Vec2::ZERO, Vec2::from_angle(t));
        let idx = Window::rect(-0.5, -0.5, 0.5, 0.5).node_indices(&spec);
        let r = ordering_check(&bad, &grid_pairs(&idx), 2.0 * spec.h);
        prop_assert!(r.violations > 0);
        prop_assert_eq!(ordering_check(&u, &grid_pairs(&idx), 2.0 * spec.h).violations, 0);
    }
}
