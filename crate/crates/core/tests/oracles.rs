//! Solvers against brute-force oracles and exact values.

use std::f64::consts::PI;

use hypmetric_core::harness::{sample_pair, SampleSpec};
use hypmetric_core::metrics::rho;
use hypmetric_core::quasihyperbolic::k_numeric_levels;
use hypmetric_core::{
    angle_at, k_exact_halfspace, k_numeric, s_metric, s_oracle, v_metric, v_oracle, Domain, GeodesicGraphConfig,
    Point, SupSolverConfig,
};

fn planar_domains() -> Vec<Domain> {
    vec![
        Domain::unit_ball(2),
        Domain::upper_half_plane(),
        Domain::Strip,
        Domain::unit_square(),
        Domain::punctured(Point::origin(2)),
        Domain::koch(4).unwrap(),
    ]
}

#[test]
fn sup_solver_dominates_coarse_oracle() {
    let cfg = SupSolverConfig::default();
    for g in planar_domains() {
        for i in 0..1000 {
            let (x, y) = sample_pair(&g, &SampleSpec::FREE, 11, i).unwrap();
            let s = s_metric(&g, &x, &y, &cfg).unwrap().value;
            let v = v_metric(&g, &x, &y, &cfg).unwrap().value;
            let so = s_oracle(&g, &x, &y, 100_000).unwrap();
            let vo = v_oracle(&g, &x, &y, 100_000).unwrap();
            assert!(s >= so - 1e-9, "{g} #{i}: s {s} below oracle {so}");
            assert!(v >= vo - 1e-9, "{g} #{i}: v {v} below oracle {vo}");
        }
    }
}

/// The fine oracle is expensive, so only a slice of the pairs is compared.
#[test]
fn sup_solver_close_to_fine_oracle() {
    let cfg = SupSolverConfig::default();
    for g in planar_domains() {
        for i in 0..25 {
            let (x, y) = sample_pair(&g, &SampleSpec::FREE, 12, i).unwrap();
            let s = s_metric(&g, &x, &y, &cfg).unwrap().value;
            let v = v_metric(&g, &x, &y, &cfg).unwrap().value;
            let so = s_oracle(&g, &x, &y, 1_000_000).unwrap();
            let vo = v_oracle(&g, &x, &y, 1_000_000).unwrap();
            assert!(s - so <= 1e-5, "{g} #{i}: s {s} vs {so}");
            assert!(v - vo <= 1e-5, "{g} #{i}: v {v} vs {vo}");
        }
    }
}

#[test]
fn truncation_doubling_changes_nothing() {
    let plain = SupSolverConfig::default();
    let doubled = SupSolverConfig {
        truncation_doubling_check: true,
        ..plain
    };
    for g in [Domain::upper_half_plane(), Domain::Strip, Domain::punctured(Point::origin(2))] {
        for i in 0..200 {
            let (x, y) = sample_pair(&g, &SampleSpec::FREE, 13, i).unwrap();
            for f in [s_metric, v_metric] {
                let a = f(&g, &x, &y, &plain).unwrap().value;
                let b = f(&g, &x, &y, &doubled).unwrap().value;
                assert!((a - b).abs() < 1e-9, "{g} #{i}: {a} vs {b}");
            }
        }
    }
}

/// Fibonacci lattice on the unit sphere.
fn sphere_lattice(n: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            [r * t.cos(), r * t.sin(), z]
        })
        .collect()
}

fn from_angles(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Lattice maximum of `score` over the sphere, then a shrinking compass
/// search in spherical angles around it.
fn sphere_sup(score: impl Fn([f64; 3]) -> f64, lattice: &[[f64; 3]]) -> f64 {
    let best = lattice
        .iter()
        .copied()
        .max_by(|a, b| score(*a).total_cmp(&score(*b)))
        .unwrap();
    let (mut theta, mut phi) = (best[2].clamp(-1.0, 1.0).acos(), best[1].atan2(best[0]));
    let mut top = score(best);
    let mut step = 0.02;
    while step > 1e-9 {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let f = score(from_angles(theta + dt, phi + dp));
            if f > top {
                (top, theta, phi, moved) = (f, theta + dt, phi + dp, true);
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    top
}

#[test]
fn ball_plane_reduction_matches_sphere_search() {
    let g = Domain::unit_ball(3);
    let cfg = SupSolverConfig::default();
    let lattice = sphere_lattice(100_000);
    for i in 0..100 {
        let (x, y) = sample_pair(&g, &SampleSpec::FREE, 14, i).unwrap();
        let pt = |z: [f64; 3]| Point::new(z.to_vec()).unwrap();
        let s_ref = sphere_sup(|z| x.dist(&y) / (x.dist(&pt(z)) + pt(z).dist(&y)), &lattice);
        let v_ref = sphere_sup(|z| angle_at(&x, &pt(z), &y).unwrap(), &lattice);
        let s = s_metric(&g, &x, &y, &cfg).unwrap().value;
        let v = v_metric(&g, &x, &y, &cfg).unwrap().value;
        assert!((s - s_ref).abs() < 1e-4, "#{i}: s {s} vs sphere {s_ref}");
        assert!((v - v_ref).abs() < 1e-4, "#{i}: v {v} vs sphere {v_ref}");
    }
}

#[test]
fn k_matches_exact_half_plane() {
    let g = Domain::upper_half_plane();
    let cfg = GeodesicGraphConfig::default();
    let pairs = [
        ((0.0, 1.0), (0.0, 3.0)),
        ((0.0, 1.0), (1.0, 1.0)),
        ((-0.5, 0.5), (0.7, 1.5)),
        ((0.2, 2.0), (1.1, 0.8)),
    ];
    for ((a, b), (c, d)) in pairs {
        let (x, y) = (Point::xy(a, b), Point::xy(c, d));
        let exact = k_exact_halfspace(&x, &y).unwrap().value;
        let num = k_numeric(&g, &x, &y, &cfg).unwrap();
        assert!((num.value - exact).abs() <= 0.01 * exact, "{x:?} {y:?}: {} vs {exact}", num.value);
        assert!(num.value + num.error_bound >= exact - 1e-9, "error bound misses the exact value");
        assert!((exact - rho(&g, &x, &y).unwrap().value).abs() < 1e-12);
    }
}

#[test]
fn k_radial_pair_in_disk_is_log_two() {
    let g = Domain::unit_ball(2);
    let k = k_numeric(&g, &Point::origin(2), &Point::xy(0.5, 0.0), &GeodesicGraphConfig::default()).unwrap();
    assert!((k.value - 2f64.ln()).abs() <= 0.01 * 2f64.ln(), "{}", k.value);
}

#[test]
fn k_levels_settle() {
    let g = Domain::unit_ball(2);
    let cfg = GeodesicGraphConfig {
        refinement_levels: 3,
        ..GeodesicGraphConfig::default()
    };
    for (x, y) in [
        (Point::xy(-0.4, 0.1), Point::xy(0.5, -0.2)),
        (Point::xy(0.0, 0.6), Point::xy(0.3, -0.5)),
    ] {
        let levels = k_numeric_levels(&g, &x, &y, &cfg).unwrap();
        let steps: Vec<f64> = levels.windows(2).map(|w| (w[1].smoothed - w[0].smoothed).abs()).collect();
        for w in steps.windows(2) {
            assert!(w[1] <= w[0] + 1e-3, "level changes grow: {steps:?}");
        }
    }
}
