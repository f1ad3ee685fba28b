//! Boundary regularity: the exterior-ball condition `H(δ)`, an empirical
//! nonlinearity constant, and the strip constant `inf v/p`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{convex_hull_of, Domain};
use crate::harness::report::Verdict;
use crate::harness::sampler::{uniform_point, unit_vector};
use crate::optimize::golden_min;
use crate::point::{Point, Vec2};
use crate::rng::{stream_id, stream_rng};
use crate::{Error, Result};

/// Outcome of one `(z, r)` draw of a condition check.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionWitness {
    pub z: Point,
    pub r: f64,
    pub outcome: Verdict,
    pub w: Option<Point>,
    /// For `H(δ)`: best `min(clearance, r − |w−z|)/r − δ`; non-negative on a pass.
    pub margin: f64,
}

/// Radius cap for unbounded domains.
pub const R_CAP: f64 = 10.0;

const H_DELTA_DIRECTIONS: usize = 64;

/// Distance from `w` to `G` when `w` lies outside the closure; zero otherwise.
fn complement_clearance(domain: &Domain, w: &Point) -> f64 {
    if domain.closure_contains(w) {
        0.0
    } else {
        domain.raw_boundary_distance(w)
    }
}

/// Random boundary point together with a unit vector pointing out of `G`.
fn boundary_draw(domain: &Domain, rng: &mut ChaCha8Rng) -> Result<(Point, Point)> {
    for _ in 0..10_000 {
        let x = uniform_point(domain, rng)?;
        let z = domain.nearest_boundary_point(&x);
        let out = z.sub(&x);
        let len = out.norm();
        if len > 0.0 {
            return Ok((z, out.scale(1.0 / len)));
        }
    }
    Err(Error::Degenerate("could not draw a boundary point".into()))
}

/// Checks `H(δ)` at `trials` random `(z ∈ ∂G, r)`; `r` is uniform on
/// `(0, d(G)/2)`, or on `(0, r_cap)` for unbounded domains.
///
/// Witnesses are searched on rays from `z` at radii `0.1r, …, 0.9r` and then
/// improved by a compass search. Values of `δ` up to `1` are accepted so the
/// check can be run past the definition's range.
pub fn h_delta_check(domain: &Domain, delta: f64, trials: usize, seed: u64, r_cap: f64) -> Result<Vec<ConditionWitness>> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidConfig("delta must lie in (0, 1)".into()));
    }
    if !(r_cap > 0.0 && r_cap.is_finite()) {
        return Err(Error::InvalidConfig("r_cap must be positive".into()));
    }
    let r_max = if domain.is_bounded() { domain.diameter() / 2.0 } else { r_cap };
    let stream = stream_id("h-delta") ^ stream_id(&alloc::format!("{domain}"));
    let n = domain.dim();
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials as u64 {
        let mut rng = stream_rng(seed, stream, t);
        let (z, outward) = boundary_draw(domain, &mut rng)?;
        let r = r_max * (1.0 - rng.gen::<f64>());
        let score = |w: &Point| {
            let inner = r - w.dist(&z);
            complement_clearance(domain, w).min(inner) / r
        };
        let mut dirs = Vec::with_capacity(H_DELTA_DIRECTIONS);
        if n == 2 {
            let base = outward.to_vec2();
            for k in 0..H_DELTA_DIRECTIONS {
                let (s, c) = (core::f64::consts::TAU * k as f64 / H_DELTA_DIRECTIONS as f64).sin_cos();
                dirs.push(Point::xy(base.x * c - base.y * s, base.x * s + base.y * c));
            }
        } else {
            dirs.push(outward.clone());
            while dirs.len() < H_DELTA_DIRECTIONS {
                dirs.push(unit_vector(n, &mut rng));
            }
        }
        let mut best = (z.clone(), f64::NEG_INFINITY);
        for e in &dirs {
            for i in 1..=9 {
                let w = z.add_scaled(e, 0.1 * i as f64 * r);
                let sc = score(&w);
                if sc > best.1 {
                    best = (w, sc);
                }
            }
        }
        // compass search around the best grid candidate
        let mut step = 0.05 * r;
        while step > 1e-6 * r && best.1 < delta {
            let mut moved = false;
            for axis in 0..n {
                for sign in [-1.0, 1.0] {
                    let mut c = best.0.coords().to_vec();
                    c[axis] += sign * step;
                    let w = Point::new(c)?;
                    let sc = score(&w);
                    if sc > best.1 {
                        best = (w, sc);
                        moved = true;
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        let margin = best.1 - delta;
        let pass = margin >= -1e-10;
        out.push(ConditionWitness {
            z,
            r,
            outcome: if pass { Verdict::Pass } else { Verdict::Fail },
            w: pass.then_some(best.0),
            margin,
        });
    }
    Ok(out)
}

/// Empirical nonlinearity constant. Labelled an estimate: the definition
/// quantifies over every `(z, r, L)`, the estimator over finitely many.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaEstimate {
    pub delta: f64,
    pub trials: usize,
    /// Fewest boundary samples seen in any `B(z, r)`.
    pub min_samples: usize,
}

/// Smallest radius the estimator looks at, and boundary samples spaced
/// finely enough that every ball of that radius holds a dozen or more.
///
/// For polygons the radius sits well above the longest edge, where the
/// boundary is a union of straight pieces; coarse polygons fall back to a
/// hundredth of the diameter.
fn boundary_samples(domain: &Domain) -> Result<(Vec<Vec2>, f64)> {
    let diam = domain.diameter();
    match domain {
        Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => {
            let longest = (0..p.edge_count())
                .map(|i| {
                    let (a, b) = p.edge(i);
                    a.dist(b)
                })
                .fold(0.0, f64::max);
            let r_lo = if 16.0 * longest < diam / 4.0 { 16.0 * longest } else { 0.01 * diam };
            let spacing = r_lo / 16.0;
            let mut pts = Vec::new();
            for i in 0..p.edge_count() {
                let (a, b) = p.edge(i);
                let m = (a.dist(b) / spacing).ceil().max(1.0) as usize;
                pts.extend((0..m).map(|k| a.lerp(b, k as f64 / m as f64)));
            }
            Ok((pts, r_lo))
        }
        Domain::Ball { center, radius } if center.dim() == 2 => {
            let c = center.to_vec2();
            let m = 4096;
            let pts = (0..m)
                .map(|k| c + Vec2::from_angle(core::f64::consts::TAU * k as f64 / m as f64) * *radius)
                .collect();
            Ok((pts, 0.01 * diam))
        }
        _ => Err(Error::Unsupported(alloc::format!(
            "nonlinearity estimate needs a polygonal domain or a disk, got {domain}"
        ))),
    }
}

/// Half the minimal width of the convex hull of `pts`: the smallest possible
/// `max_i dist(p_i, L)` over lines `L`.
pub fn half_min_width(pts: &[Vec2]) -> f64 {
    let hull = convex_hull_of(pts);
    if hull.len() < 3 {
        return 0.0;
    }
    let m = hull.len();
    let mut best = f64::INFINITY;
    for i in 0..m {
        let a = hull[i];
        let b = hull[(i + 1) % m];
        let len = a.dist(b);
        if len == 0.0 {
            continue;
        }
        let far = hull.iter().map(|p| ((b - a).cross(*p - a) / len).abs()).fold(0.0, f64::max);
        best = best.min(far);
    }
    best / 2.0
}

/// Minimum over `trials` random `(z, r)` of `min_L max_{w∈∂G∩B(z,r)} dist(w, L)/r`.
///
/// The optimal line is the centre line of the thinnest strip holding the
/// boundary samples, so no line search is needed. Radii are log-uniform on
/// `[16·edge, d(G))`, or on `[10⁻²·d(G), d(G))` for polygons too coarse for
/// that.
pub fn nonlinearity_delta_estimate(domain: &Domain, trials: usize, seed: u64) -> Result<DeltaEstimate> {
    if trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    let (pts, r_lo) = boundary_samples(domain)?;
    let diam = domain.diameter();
    let stream = stream_id("nonlinearity") ^ stream_id(&alloc::format!("{domain}"));
    let mut delta = f64::INFINITY;
    let mut min_samples = usize::MAX;
    let mut inside = Vec::new();
    for t in 0..trials as u64 {
        let mut rng = stream_rng(seed, stream, t);
        let z = pts[rng.gen_range(0..pts.len())];
        let r = r_lo * (diam / r_lo).powf(rng.gen::<f64>());
        inside.clear();
        inside.extend(pts.iter().copied().filter(|p| p.dist(z) < r));
        if inside.len() < 8 {
            return Err(Error::InsufficientResolution(alloc::format!(
                "only {} boundary samples in B(z, {r:.3e})",
                inside.len()
            )));
        }
        min_samples = min_samples.min(inside.len());
        delta = delta.min(half_min_width(&inside) / r);
    }
    Ok(DeltaEstimate {
        delta,
        trials,
        min_samples,
    })
}

/// `arcsin(t)·√(t² + (1−t)²)/t`, the ratio `v/p` for the strip pair `(0, ±t)`.
pub fn strip_objective(t: f64) -> f64 {
    t.asin() * (t * t + (1.0 - t) * (1.0 - t)).sqrt() / t
}

/// `inf_{t∈(0,1)} v_S/p_S` for the strip pair family, by golden section.
pub fn strip_constant() -> f64 {
    golden_min(strip_objective, 1e-9, 1.0 - 1e-9, 200, 1e-10).value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_constant_value() {
        let c = strip_constant();
        assert!((c - 0.73707).abs() < 1e-4, "{c}");
        assert!(c > core::f64::consts::FRAC_1_SQRT_2);
        let at_half = strip_objective(0.5);
        assert!((at_half - core::f64::consts::FRAC_PI_6 * 0.5f64.sqrt() / 0.5).abs() < 1e-15);
        assert!((strip_objective(1e-8) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn h_delta_on_ball() {
        let g = Domain::unit_ball(2);
        let w = h_delta_check(&g, 0.45, 200, 3, R_CAP).unwrap();
        assert!(w.iter().all(|c| c.outcome == Verdict::Pass));
        let w = h_delta_check(&g, 0.55, 200, 3, R_CAP).unwrap();
        assert!(w.iter().any(|c| c.outcome == Verdict::Fail));
    }

    #[test]
    fn h_delta_fails_on_slit() {
        let g = Domain::SlitDisk;
        let w = h_delta_check(&g, 0.05, 300, 1, R_CAP).unwrap();
        assert!(w.iter().any(|c| c.outcome == Verdict::Fail && c.z.coords()[0] > 0.0 && c.z.norm() < 1.0 - 1e-9));
    }

    #[test]
    fn halfspace_small_delta_passes() {
        let w = h_delta_check(&Domain::upper_half_plane(), 0.01, 100, 5, R_CAP).unwrap();
        assert!(w.iter().all(|c| c.outcome == Verdict::Pass));
    }

    #[test]
    fn width_of_collinear_points_is_zero() {
        let pts: Vec<Vec2> = (0..10).map(|i| Vec2::new(i as f64, 2.0 * i as f64)).collect();
        assert_eq!(half_min_width(&pts), 0.0);
        let sq = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!((half_min_width(&sq) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn square_estimate_vanishes() {
        let d = nonlinearity_delta_estimate(&Domain::unit_square(), 500, 7).unwrap();
        assert!(d.delta < 1e-12, "{d:?}");
    }
}
