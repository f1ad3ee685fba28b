//! Property tests for the metric invariants.
//!
//! Points come from the harness sampler, so the proptest inputs are just
//! `(seed, index)` pairs and the shrinker reports reproducible draws.

use hypmetric_core::conformal::{apply_map, inverse_map};
use hypmetric_core::harness::{sample_pair, SampleSpec};
use hypmetric_core::metrics::{j_metric, j_star, p_function, rho};
use hypmetric_core::{
    angle_at, boundary_distance, s_metric, s_numeric, v_metric, Domain, MapSpec, Point, SupSolverConfig,
};
use proptest::prelude::*;

fn domains() -> Vec<Domain> {
    vec![
        Domain::unit_ball(2),
        Domain::upper_half_plane(),
        Domain::Strip,
        Domain::unit_square(),
        Domain::punctured(Point::origin(2)),
        Domain::koch(3).unwrap(),
        Domain::unit_ball(3),
    ]
}

fn pair(g: &Domain, seed: u64, index: u64) -> (Point, Point) {
    sample_pair(g, &SampleSpec::FREE, seed, index).unwrap()
}

fn disk_point() -> impl Strategy<Value = Point> {
    (0.0..0.95f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Point::xy(r * t.cos(), r * t.sin()))
}

fn mobius_centre() -> impl Strategy<Value = (Point, f64)> {
    (disk_point(), -3.2..3.2f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boundary_distance_is_one_lipschitz(gi in 0usize..7, seed in any::<u64>(), i in 0u64..10_000) {
        let g = &domains()[gi];
        let (x, y) = pair(g, seed, i);
        let (dx, dy) = (boundary_distance(g, &x).unwrap(), boundary_distance(g, &y).unwrap());
        prop_assert!((dx - dy).abs() <= x.dist(&y) + 1e-12, "{g}: |{dx} - {dy}| > {}", x.dist(&y));
    }

    #[test]
    fn angle_is_symmetric(x in disk_point(), z in disk_point(), y in disk_point()) {
        prop_assume!(x != z && y != z);
        prop_assert_eq!(angle_at(&x, &z, &y).unwrap(), angle_at(&y, &z, &x).unwrap());
    }

    #[test]
    fn closed_forms_are_symmetric(gi in 0usize..7, seed in any::<u64>(), i in 0u64..10_000) {
        let g = &domains()[gi];
        let (x, y) = pair(g, seed, i);
        for f in [j_metric, j_star, p_function] {
            let (a, b) = (f(g, &x, &y).unwrap().value, f(g, &y, &x).unwrap().value);
            prop_assert!((a - b).abs() <= 1e-14 * a.max(1.0));
        }
        if let Ok(r) = rho(g, &x, &y) {
            prop_assert!((r.value - rho(g, &y, &x).unwrap().value).abs() <= 1e-14 * r.value.max(1.0));
        }
    }

    #[test]
    fn jstar_is_th_half_j(gi in 0usize..7, seed in any::<u64>(), i in 0u64..10_000) {
        let g = &domains()[gi];
        let (x, y) = pair(g, seed, i);
        let j = j_metric(g, &x, &y).unwrap().value;
        let js = j_star(g, &x, &y).unwrap().value;
        prop_assert!((js - (j / 2.0).tanh()).abs() <= 1e-14);
    }

    #[test]
    fn j_le_rho_le_2j(gi in 0usize..2, seed in any::<u64>(), i in 0u64..10_000) {
        let g = &domains()[gi];
        let (x, y) = pair(g, seed, i);
        let j = j_metric(g, &x, &y).unwrap().value;
        let r = rho(g, &x, &y).unwrap().value;
        prop_assert!(j <= r + 1e-12 && r <= 2.0 * j + 1e-12, "{g}: j={j} rho={r}");
    }

    #[test]
    fn j_and_jstar_triangle(gi in 0usize..7, seed in any::<u64>(), i in 0u64..10_000) {
        let g = &domains()[gi];
        let (x, y) = pair(g, seed, i);
        let (z, _) = pair(g, seed ^ 0x5eed, i);
        for f in [j_metric, j_star] {
            let xy = f(g, &x, &y).unwrap().value;
            let xz = f(g, &x, &z).unwrap().value;
            let zy = f(g, &z, &y).unwrap().value;
            prop_assert!(xy <= xz + zy + 1e-12);
        }
    }

    #[test]
    fn rho_is_mobius_invariant(x in disk_point(), y in disk_point(), (a, theta) in mobius_centre()) {
        let g = Domain::unit_ball(2);
        let h = MapSpec::ball_automorphism(a, MapSpec::rotation2(theta)).unwrap();
        let before = rho(&g, &x, &y).unwrap().value;
        let after = rho(&g, &apply_map(&h, &x).unwrap(), &apply_map(&h, &y).unwrap()).unwrap().value;
        prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0), "{before} vs {after}");
    }

    #[test]
    fn sigma_inverse_undoes_sigma(x in disk_point(), (a, _) in mobius_centre()) {
        let h = MapSpec::sigma(a).unwrap();
        let back = inverse_map(&h, &apply_map(&h, &x).unwrap()).unwrap();
        prop_assert!(back.dist(&x) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn s_and_v_ranges_and_symmetry(gi in 0usize..7, seed in any::<u64>(), i in 0u64..10_000) {
        let g = &domains()[gi];
        let (x, y) = pair(g, seed, i);
        let cfg = SupSolverConfig::default();
        let (s, s2) = (s_metric(g, &x, &y, &cfg).unwrap(), s_metric(g, &y, &x, &cfg).unwrap());
        let (v, v2) = (v_metric(g, &x, &y, &cfg).unwrap(), v_metric(g, &y, &x, &cfg).unwrap());
        prop_assert!((0.0..=1.0).contains(&s.value));
        prop_assert!((0.0..=std::f64::consts::PI).contains(&v.value));
        prop_assert!((s.value - s2.value).abs() <= 2.0 * s.error_bound.max(s2.error_bound) + 1e-12);
        prop_assert!((v.value - v2.value).abs() <= 2.0 * v.error_bound.max(v2.error_bound) + 1e-12);
    }

    #[test]
    fn s_on_half_plane_is_th_half_rho(seed in any::<u64>(), i in 0u64..10_000) {
        let g = Domain::upper_half_plane();
        let (x, y) = pair(&g, seed, i);
        let s = s_numeric(&g, &x, &y, &SupSolverConfig::default()).unwrap();
        let want = (rho(&g, &x, &y).unwrap().value / 2.0).tanh();
        prop_assert!((s.value - want).abs() <= 1e-8, "s={} th(rho/2)={want}", s.value);
    }

    /// Shrinking the domain can only grow `s` and `v`.
    #[test]
    fn domain_monotonicity(x in disk_point(), y in disk_point(), outer in 1.0..3.0f64) {
        let cfg = SupSolverConfig::default();
        let inner = Domain::unit_ball(2);
        let big = Domain::ball(Point::origin(2), outer).unwrap();
        // the unit disk shifted up sits inside the upper half-plane
        let lifted = Domain::ball(Point::xy(0.0, 1.0), 1.0).unwrap();
        let lift = |p: &Point| Point::xy(p.coords()[0], p.coords()[1] + 1.0);
        let cases = [
            (&inner, &big, x.clone(), y.clone()),
            (&lifted, &Domain::upper_half_plane(), lift(&x), lift(&y)),
        ];
        for (small, large, a, b) in cases {
            for f in [s_metric, v_metric] {
                let lo = f(large, &a, &b, &cfg).unwrap();
                let hi = f(small, &a, &b, &cfg).unwrap();
                prop_assert!(lo.value <= hi.value + lo.error_bound + hi.error_bound + 1e-12,
                    "{large} vs {small}: {} > {}", lo.value, hi.value);
            }
        }
    }
}
