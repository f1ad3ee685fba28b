//! Boundary suprema for the triangular ratio metric `s` and the visual angle
//! metric `v`, and dense-grid oracles for both.
//!
//! On a line segment `z ↦ |x−z| + |z−y|` is convex, and the angle `∠xzy` is
//! quasi-concave on each side of the line through `x` and `y`, so segments are
//! refined by golden-section search directly. Circles get a coarse scan seeded
//! with a few geometrically meaningful points, then multistart refinement.
//! Polygon edges are visited chunk by chunk in order of an a-priori bound and
//! skipped once the bound cannot beat the incumbent.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::boundary::{boundary_param_scaled, BoundaryParam, Piece};
use crate::domain::{point_segment_distance, segment_segment_distance, segments_intersect, Aabb, Domain};
use crate::metrics::{s_halfspace, MetricKind, MetricValue};
use crate::optimize::golden_max;
use crate::point::{angle_at2, Point, Vec2};
use crate::{Error, Result};

/// Angle reduced to `[0, 2π)`.
fn wrap_angle(a: f64) -> f64 {
    let r = a % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupSolverConfig {
    /// Uniform scan points per curved piece.
    pub coarse_samples_per_segment: usize,
    /// Golden-section iterations per bracket.
    pub refinement: usize,
    /// Number of scan maxima refined per curved piece.
    pub multistart_count: usize,
    /// Recompute with `2·R_trunc` and fold the difference into the error bound.
    pub truncation_doubling_check: bool,
}

impl Default for SupSolverConfig {
    fn default() -> Self {
        SupSolverConfig {
            coarse_samples_per_segment: 256,
            refinement: 80,
            multistart_count: 8,
            truncation_doubling_check: false,
        }
    }
}

impl SupSolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_samples_per_segment < 16 {
            return Err(Error::InvalidConfig("coarse_samples_per_segment must be >= 16".into()));
        }
        if self.refinement < 32 {
            return Err(Error::InvalidConfig("refinement must be >= 32".into()));
        }
        if self.multistart_count == 0 {
            return Err(Error::InvalidConfig("multistart_count must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    S,
    V,
}

/// Maximization problem in plane coordinates. For `s` the score is
/// `−(|x−z| + |z−y|)`, for `v` it is the angle.
struct Problem {
    x: Vec2,
    y: Vec2,
    len: f64,
    target: Target,
    /// Bracket width, in length units, below which refinement stops.
    tol_len: f64,
}

/// Incumbent maximum and the largest `value + error` over refined candidates.
struct Best {
    value: f64,
    upper: f64,
}

impl Best {
    fn new() -> Self {
        Best {
            value: f64::NEG_INFINITY,
            upper: f64::NEG_INFINITY,
        }
    }

    fn offer(&mut self, value: f64, err: f64) {
        self.value = self.value.max(value);
        self.upper = self.upper.max(value + err);
    }
}

impl Problem {
    #[inline]
    fn score(&self, z: Vec2) -> f64 {
        match self.target {
            Target::S => -(self.x.dist(z) + z.dist(self.y)),
            Target::V => angle_at2(self.x, z, self.y),
        }
    }

    /// Local Lipschitz constant of the score in `z`.
    fn lipschitz(&self, z: Vec2) -> f64 {
        match self.target {
            Target::S => 2.0,
            Target::V => 1.0 / self.x.dist(z) + 1.0 / self.y.dist(z),
        }
    }

    fn angle_bound(&self, h: f64) -> f64 {
        if h <= 0.0 {
            PI
        } else {
            2.0 * (self.len / (2.0 * h)).atan()
        }
    }

    fn segment_bound(&self, a: Vec2, b: Vec2) -> f64 {
        match self.target {
            Target::S => -(point_segment_distance(self.x, a, b) + point_segment_distance(self.y, a, b)),
            Target::V => self.angle_bound(segment_segment_distance(a, b, self.x, self.y)),
        }
    }

    fn box_bound(&self, bb: &Aabb) -> f64 {
        match self.target {
            Target::S => -(bb.dist_to_point(self.x) + bb.dist_to_point(self.y)),
            Target::V => self.angle_bound(bb.dist_to_segment(self.x, self.y)),
        }
    }

    fn refine_segment(&self, a: Vec2, b: Vec2, iters: usize, best: &mut Best) {
        best.offer(self.score(a), 0.0);
        best.offer(self.score(b), 0.0);
        let seg_len = a.dist(b);
        if seg_len == 0.0 {
            return;
        }
        let mut cuts = [0.0, 1.0, 1.0];
        let mut n_cuts = 2;
        if self.target == Target::V {
            // split where the segment crosses the line through x and y
            let dir = self.y - self.x;
            let (ca, cb) = (dir.cross(a - self.x), dir.cross(b - self.x));
            if (ca < 0.0 && cb > 0.0) || (ca > 0.0 && cb < 0.0) {
                cuts = [0.0, ca / (ca - cb), 1.0];
                n_cuts = 3;
            }
        }
        let tol = self.tol_len / seg_len;
        for w in cuts[..n_cuts].windows(2) {
            let r = golden_max(|t| self.score(a.lerp(b, t)), w[0], w[1], iters, tol);
            best.offer(r.value, self.lipschitz(a.lerp(b, r.arg)) * r.width * seg_len);
        }
    }

    fn refine_arc(&self, piece: Piece, cfg: &SupSolverConfig, best: &mut Best) {
        let Piece::Arc {
            center,
            radius,
            start,
            sweep,
        } = piece
        else {
            unreachable!("refine_arc on a non-arc piece")
        };
        let closed = piece.is_closed();
        let n = cfg.coarse_samples_per_segment;
        let mut ts: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        if !closed {
            ts.push(1.0);
        }
        for q in self.arc_seeds(center, radius) {
            let d = q - center;
            if d.norm() == 0.0 {
                continue;
            }
            let theta = d.y.atan2(d.x);
            let mut t = wrap_angle(theta - start) / sweep.abs();
            if sweep < 0.0 {
                t = wrap_angle(start - theta) / sweep.abs();
            }
            if closed {
                t -= t.floor();
            }
            if (0.0..=1.0).contains(&t) {
                ts.push(t);
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        let m = ts.len();
        let vals: Vec<f64> = ts.iter().map(|&t| self.score(piece.eval(t))).collect();
        for &v in &vals {
            best.offer(v, 0.0);
        }

        let mut peaks: Vec<usize> = (0..m)
            .filter(|&i| {
                let prev = if i > 0 {
                    Some(vals[i - 1])
                } else if closed {
                    Some(vals[m - 1])
                } else {
                    None
                };
                let next = if i + 1 < m {
                    Some(vals[i + 1])
                } else if closed {
                    Some(vals[0])
                } else {
                    None
                };
                prev.map_or(true, |p| vals[i] >= p) && next.map_or(true, |q| vals[i] >= q)
            })
            .collect();
        peaks.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
        peaks.truncate(cfg.multistart_count);

        let arc_len = radius * sweep.abs();
        let tol = self.tol_len / arc_len;
        for i in peaks {
            let lo = match (i, closed) {
                (0, true) => ts[m - 1] - 1.0,
                (0, false) => ts[0],
                _ => ts[i - 1],
            };
            let hi = match (i + 1 == m, closed) {
                (true, true) => ts[0] + 1.0,
                (true, false) => ts[m - 1],
                _ => ts[i + 1],
            };
            let r = golden_max(|t| self.score(piece.eval(t)), lo, hi, cfg.refinement, tol);
            best.offer(r.value, self.lipschitz(piece.eval(r.arg)) * r.width * arc_len);
        }
    }

    /// Radial projections of `x`, `y` and the midpoint, and the points where
    /// the perpendicular bisector of `[x, y]` meets the circle.
    fn arc_seeds(&self, center: Vec2, radius: f64) -> Vec<Vec2> {
        let mid = (self.x + self.y) * 0.5;
        let mut seeds = alloc::vec![self.x, self.y, mid];
        if self.len > 0.0 {
            let nrm = (self.y - self.x).perp().normalized();
            let w = mid - center;
            let b = w.dot(nrm);
            let disc = b * b - (w.norm_sq() - radius * radius);
            if disc >= 0.0 {
                let r = disc.sqrt();
                seeds.push(mid + nrm * (-b + r));
                seeds.push(mid + nrm * (-b - r));
            }
        }
        seeds
    }

    fn solve(&self, bp: &BoundaryParam, cfg: &SupSolverConfig) -> Best {
        let mut best = Best::new();
        for &piece in &bp.pieces {
            match piece {
                Piece::Point(p) => best.offer(self.score(p), 0.0),
                Piece::Segment { a, b } => {
                    if self.segment_bound(a, b) > best.value {
                        self.refine_segment(a, b, cfg.refinement, &mut best);
                    }
                }
                Piece::Arc { .. } => self.refine_arc(piece, cfg, &mut best),
            }
        }
        if let Some(poly) = bp.polygon {
            let mut order: Vec<(f64, usize, usize)> = poly
                .chunks()
                .map(|(s, e, bb)| (self.box_bound(&bb), s, e))
                .collect();
            order.sort_by(|a, b| b.0.total_cmp(&a.0));
            for (bound, s, e) in order {
                if bound <= best.value {
                    break;
                }
                for i in s..e {
                    let (a, b) = poly.edge(i);
                    if self.segment_bound(a, b) > best.value {
                        self.refine_segment(a, b, cfg.refinement, &mut best);
                    }
                }
            }
        }
        best
    }
}

/// `∂G` meets the open segment `(x, y)`.
fn boundary_crosses(bp: &BoundaryParam) -> bool {
    let (x, y) = (bp.x, bp.y);
    let hits_piece = |piece: &Piece| match *piece {
        Piece::Point(p) => point_segment_distance(p, x, y) == 0.0,
        Piece::Segment { a, b } => segments_intersect(a, b, x, y),
        Piece::Arc {
            center,
            radius,
            start,
            sweep,
        } => {
            // |x + t(y−x) − c|² = r², t ∈ (0, 1)
            let d = y - x;
            let w = x - center;
            let qa = d.norm_sq();
            let qb = 2.0 * w.dot(d);
            let qc = w.norm_sq() - radius * radius;
            let disc = qb * qb - 4.0 * qa * qc;
            if qa == 0.0 || disc < 0.0 {
                return false;
            }
            let r = disc.sqrt();
            [(-qb - r) / (2.0 * qa), (-qb + r) / (2.0 * qa)].into_iter().any(|t| {
                if !(t > 0.0 && t < 1.0) {
                    return false;
                }
                if piece.is_closed() {
                    return true;
                }
                let p = x + d * t - center;
                let off = wrap_angle(p.y.atan2(p.x) - start);
                if sweep >= 0.0 {
                    off <= sweep
                } else {
                    TAU - off <= -sweep
                }
            })
        }
    };
    if bp.pieces.iter().any(hits_piece) {
        return true;
    }
    bp.polygon.is_some_and(|poly| {
        poly.chunks().any(|(s, e, bb)| {
            bb.dist_to_segment(x, y) == 0.0
                && (s..e).any(|i| {
                    let (a, b) = poly.edge(i);
                    segments_intersect(a, b, x, y)
                })
        })
    })
}

fn validated<'a>(domain: &'a Domain, x: &Point, y: &Point, mult: f64) -> Result<BoundaryParam<'a>> {
    x.ensure_dim(domain.dim())?;
    y.ensure_dim(domain.dim())?;
    let bp = boundary_param_scaled(domain, x, y, mult)?;
    if bp.is_empty() {
        return Err(Error::Degenerate("empty boundary parametrization".into()));
    }
    Ok(bp)
}

/// Value and error bound of the supremum for one truncation radius.
fn sup_value(target: Target, bp: &BoundaryParam, cfg: &SupSolverConfig) -> (f64, f64) {
    let len = bp.x.dist(bp.y);
    if boundary_crosses(bp) {
        return match target {
            Target::S => (1.0, 0.0),
            Target::V => (PI, 0.0),
        };
    }
    let problem = Problem {
        x: bp.x,
        y: bp.y,
        len,
        target,
        tol_len: 1e-13 * (len + bp.r_trunc / crate::boundary::TRUNCATION_FACTOR),
    };
    let best = problem.solve(bp, cfg);
    let rounding = 8.0 * f64::EPSILON;
    match target {
        Target::S => {
            let f = -best.value;
            let f_low = -best.upper;
            let s = (len / f).min(1.0);
            let s_hi = if f_low > 0.0 { (len / f_low).min(1.0) } else { 1.0 };
            (s, (s_hi - s).max(0.0) + rounding * s)
        }
        Target::V => {
            let v = best.value.min(PI);
            (v, (best.upper.min(PI) - v).max(0.0) + rounding * v)
        }
    }
}

fn sup_metric(target: Target, domain: &Domain, x: &Point, y: &Point, cfg: &SupSolverConfig) -> Result<MetricValue> {
    cfg.validate()?;
    let kind = match target {
        Target::S => MetricKind::S,
        Target::V => MetricKind::V,
    };
    let bp = validated(domain, x, y, 1.0)?;
    if x == y {
        return Ok(MetricValue::approx(kind, 0.0, 0.0));
    }
    let (mut value, mut err) = sup_value(target, &bp, cfg);
    if cfg.truncation_doubling_check && !domain.is_bounded() {
        let wide = validated(domain, x, y, 2.0)?;
        let (v2, e2) = sup_value(target, &wide, cfg);
        err = err.max(e2) + (v2 - value).abs();
        value = value.max(v2);
    }
    Ok(MetricValue::approx(kind, value, err))
}

/// `s_G(x, y) = sup_{z ∈ ∂G} |x−y| / (|x−z| + |z−y|)`; closed form on half-spaces.
pub fn s_metric(domain: &Domain, x: &Point, y: &Point, cfg: &SupSolverConfig) -> Result<MetricValue> {
    if let Domain::HalfSpace { dim } = domain {
        x.ensure_dim(*dim)?;
        y.ensure_dim(*dim)?;
        return s_halfspace(x, y);
    }
    sup_metric(Target::S, domain, x, y, cfg)
}

/// The boundary search for `s` even where a closed form exists, for
/// cross-checking the two.
pub fn s_numeric(domain: &Domain, x: &Point, y: &Point, cfg: &SupSolverConfig) -> Result<MetricValue> {
    sup_metric(Target::S, domain, x, y, cfg)
}

/// `v_G(x, y) = sup_{z ∈ ∂G} ∠(x, z, y)`; `π` when `∂G` meets the open segment `(x, y)`.
pub fn v_metric(domain: &Domain, x: &Point, y: &Point, cfg: &SupSolverConfig) -> Result<MetricValue> {
    sup_metric(Target::V, domain, x, y, cfg)
}

fn oracle(target: Target, domain: &Domain, x: &Point, y: &Point, grid: usize) -> Result<f64> {
    let bp = validated(domain, x, y, 1.0)?;
    if x == y {
        return Ok(0.0);
    }
    // a boundary point on the segment is a measure-zero target for the grid
    if boundary_crosses(&bp) {
        return Ok(match target {
            Target::S => 1.0,
            Target::V => PI,
        });
    }
    let total = bp.total_length();
    let mut best = f64::NEG_INFINITY;
    let score = |z: Vec2| match target {
        Target::S => bp.x.dist(bp.y) / (bp.x.dist(z) + z.dist(bp.y)),
        Target::V => angle_at2(bp.x, z, bp.y),
    };
    for piece in bp.all_pieces() {
        let len = piece.length();
        if len == 0.0 {
            best = best.max(score(piece.eval(0.0)));
            continue;
        }
        let count = ((grid as f64) * len / total).ceil().max(1.0) as usize;
        let end = if piece.is_closed() { count } else { count + 1 };
        for i in 0..end {
            best = best.max(score(piece.eval(i as f64 / count as f64)));
        }
    }
    Ok(best)
}

/// Dense-grid lower bound for `s_G(x, y)`: about `grid` boundary points spaced
/// uniformly by arclength, no refinement. When `∂G` cuts the segment the
/// exact value is returned instead.
pub fn s_oracle(domain: &Domain, x: &Point, y: &Point, grid: usize) -> Result<f64> {
    oracle(Target::S, domain, x, y, grid)
}

/// Dense-grid lower bound for `v_G(x, y)`.
pub fn v_oracle(domain: &Domain, x: &Point, y: &Point, grid: usize) -> Result<f64> {
    oracle(Target::V, domain, x, y, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::p_function;

    fn cfg() -> SupSolverConfig {
        SupSolverConfig::default()
    }

    #[test]
    fn halfspace_examples() {
        let g = Domain::upper_half_plane();
        let (x, y) = (Point::xy(0.0, 1.0), Point::xy(0.0, 3.0));
        assert!((s_metric(&g, &x, &y, &cfg()).unwrap().value - 0.5).abs() < 1e-9);
        assert!((v_metric(&g, &x, &y, &cfg()).unwrap().value - PI / 6.0).abs() < 1e-9);
        assert!((s_oracle(&g, &x, &y, 1_000_000).unwrap() - 0.5).abs() < 1e-6);
        assert!((v_oracle(&g, &x, &y, 1_000_000).unwrap() - PI / 6.0).abs() < 1e-6);
        assert_eq!(v_metric(&g, &x, &x, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn ball_diameter_pair() {
        let g = Domain::unit_ball(2);
        let (x, y) = (Point::xy(0.5, 0.0), Point::xy(-0.5, 0.0));
        let s = s_metric(&g, &x, &y, &cfg()).unwrap();
        assert!((s.value - 0.5).abs() < 1e-9, "{s:?}");
        let o = s_oracle(&g, &x, &y, 1_000_000).unwrap();
        assert!(o <= 0.5 + 1e-15 && 0.5 - o < 1e-6);
    }

    #[test]
    fn strip_visual_angle() {
        for k in 1..10 {
            let t = k as f64 / 10.0;
            let (a, b) = (Point::xy(0.0, t), Point::xy(0.0, -t));
            let v = v_metric(&Domain::Strip, &a, &b, &cfg()).unwrap();
            assert!((v.value - t.asin()).abs() < 1e-8, "t={t}: {v:?}");
            let p = p_function(&Domain::Strip, &a, &b).unwrap().value;
            assert!((p - t / (t * t + (1.0 - t) * (1.0 - t)).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn crossing_gives_pi() {
        let g = Domain::punctured(Point::origin(2));
        let (x, y) = (Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0));
        assert_eq!(v_metric(&g, &x, &y, &cfg()).unwrap().value, PI);
        assert_eq!(s_metric(&g, &x, &y, &cfg()).unwrap().value, 1.0);
        let sq = Domain::SlitDisk;
        let (a, b) = (Point::xy(0.5, 0.2), Point::xy(0.5, -0.2));
        assert_eq!(v_metric(&sq, &a, &b, &cfg()).unwrap().value, PI);
    }

    #[test]
    fn punctured_sharpness() {
        let g = Domain::punctured(Point::origin(2));
        let s = s_metric(&g, &Point::xy(1.0, 0.0), &Point::xy(3.0, 0.0), &cfg()).unwrap();
        assert!((s.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn koch_matches_oracle() {
        let g = Domain::koch(4).unwrap();
        let (x, y) = (Point::xy(0.1, 0.05), Point::xy(-0.2, 0.3));
        let s = s_metric(&g, &x, &y, &cfg()).unwrap();
        let so = s_oracle(&g, &x, &y, 200_000).unwrap();
        assert!(s.value >= so - 1e-12 && s.value - so < 1e-6, "{s:?} {so}");
        let v = v_metric(&g, &x, &y, &cfg()).unwrap();
        let vo = v_oracle(&g, &x, &y, 200_000).unwrap();
        assert!(v.value >= vo - 1e-12 && v.value - vo < 1e-5, "{v:?} {vo}");
    }

    #[test]
    fn rejects_bad_config_and_points() {
        let g = Domain::unit_ball(2);
        let bad = SupSolverConfig {
            coarse_samples_per_segment: 4,
            ..cfg()
        };
        assert!(s_metric(&g, &Point::xy(0.0, 0.0), &Point::xy(0.1, 0.0), &bad).is_err());
        assert!(s_metric(&g, &Point::xy(1.0, 0.0), &Point::xy(0.1, 0.0), &cfg()).is_err());
    }
}
