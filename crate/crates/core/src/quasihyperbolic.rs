//! The quasihyperbolic metric `k_G`: exact on half-spaces, numeric elsewhere.
//!
//! The numeric solver runs Dijkstra on a grid of cell centres with the
//! trapezoidal edge weight `|u−v|·(1/d(u) + 1/d(v))/2`, then relaxes the
//! resulting polyline by parabolic steps along the local normal, scoring
//! segments with Simpson's rule. Each refinement level halves the cell size
//! on a tube around the previous path. The reported error bound is the change
//! between the last two levels; it is an estimate, not a certificate.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::{interior_distance, Domain};
use crate::harness::expr::Approx;
use crate::harness::report::{Tally, VerificationReport};
use crate::metrics::{rho_halfspace, MetricKind, MetricValue};
use crate::point::{Point, Vec2};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Eight,
    Sixteen,
}

impl Stencil {
    fn offsets(self) -> &'static [(i32, i32)] {
        const SIXTEEN: [(i32, i32); 16] = [
            (1, 0),
            (-1, 0),
            (0, 1),
            (0, -1),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
            (1, 2),
            (2, 1),
            (-1, 2),
            (-2, 1),
            (1, -2),
            (2, -1),
            (-1, -2),
            (-2, -1),
        ];
        match self {
            Stencil::Eight => &SIXTEEN[..8],
            Stencil::Sixteen => &SIXTEEN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeodesicGraphConfig {
    /// Cells across the working box.
    pub base_resolution: usize,
    pub neighbor_stencil: Stencil,
    /// Each level halves the cell size on a tube around the previous path.
    pub refinement_levels: usize,
}

impl Default for GeodesicGraphConfig {
    fn default() -> Self {
        GeodesicGraphConfig {
            base_resolution: 128,
            neighbor_stencil: Stencil::Sixteen,
            refinement_levels: 2,
        }
    }
}

impl GeodesicGraphConfig {
    pub fn validate(&self) -> Result<()> {
        if self.base_resolution < 32 {
            return Err(Error::InvalidConfig("base_resolution must be >= 32".into()));
        }
        Ok(())
    }
}

/// `k_{H^n} = ρ_{H^n}`.
pub fn k_exact_halfspace(x: &Point, y: &Point) -> Result<MetricValue> {
    let r = rho_halfspace(x, y)?;
    Ok(MetricValue::exact(MetricKind::K, r.value))
}

/// `k` on a half-space (exact) or numerically elsewhere.
pub fn k_metric(domain: &Domain, x: &Point, y: &Point, cfg: &GeodesicGraphConfig) -> Result<MetricValue> {
    match domain {
        Domain::HalfSpace { dim } => {
            x.ensure_dim(*dim)?;
            y.ensure_dim(*dim)?;
            k_exact_halfspace(x, y)
        }
        _ => k_numeric(domain, x, y, cfg),
    }
}

/// Numeric quasihyperbolic distance of a planar domain; see the module docs.
pub fn k_numeric(domain: &Domain, x: &Point, y: &Point, cfg: &GeodesicGraphConfig) -> Result<MetricValue> {
    let levels = k_numeric_levels(domain, x, y, cfg)?;
    let last = levels[levels.len() - 1];
    let err = match levels.len() {
        1 => last.graph - last.smoothed,
        n => (last.smoothed - levels[n - 2].smoothed).abs(),
    };
    Ok(MetricValue::approx(MetricKind::K, last.smoothed, err.abs()))
}

/// Estimates at one refinement level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    pub cell: f64,
    /// Shortest-path length in the graph.
    pub graph: f64,
    /// Cost of the relaxed path.
    pub smoothed: f64,
}

/// Per-level estimates, coarsest first.
pub fn k_numeric_levels(
    domain: &Domain,
    x: &Point,
    y: &Point,
    cfg: &GeodesicGraphConfig,
) -> Result<Vec<LevelEstimate>> {
    cfg.validate()?;
    if domain.dim() != 2 {
        return Err(Error::Unsupported("numeric k is planar only".into()));
    }
    x.ensure_dim(2)?;
    y.ensure_dim(2)?;
    let dx = interior_distance(domain, x)?;
    let dy = interior_distance(domain, y)?;
    if x == y {
        return Ok(alloc::vec![LevelEstimate {
            cell: 0.0,
            graph: 0.0,
            smoothed: 0.0
        }]);
    }
    let (xv, yv) = (x.to_vec2(), y.to_vec2());
    let (lo, hi) = working_box(domain, xv, yv, dx, dy);
    let h0 = (hi.x - lo.x).max(hi.y - lo.y) / cfg.base_resolution as f64;
    let needed = 2.0 * h0 * core::f64::consts::SQRT_2;
    if dx.min(dy) <= needed {
        return Err(Error::ResolutionTooCoarse {
            needed,
            got: dx.min(dy),
        });
    }
    let field = Field { domain };
    let mut out = Vec::new();
    let mut prev_path: Option<Vec<Vec2>> = None;
    for level in 0..=cfg.refinement_levels {
        let h = h0 / f64::from(1u32 << level.min(20));
        let grid = match &prev_path {
            None => Grid::full(&field, lo, hi, h),
            Some(path) => Grid::tube(&field, path, 4.0 * h, h),
        };
        let (graph_cost, graph_path) = grid.shortest_path(&field, xv, yv, cfg.neighbor_stencil)?;
        // the previous level's relaxed path usually beats the new graph path
        let start = match &prev_path {
            Some(path) if field.path_cost(path) <= field.path_cost(&resample(&graph_path, h)) => path,
            _ => &graph_path,
        };
        let (candidate, smoothed) = field.relax(start, h);
        out.push(LevelEstimate {
            cell: h,
            graph: graph_cost,
            smoothed,
        });
        prev_path = Some(candidate);
    }
    Ok(out)
}

/// Square box about the midpoint of `[x, y]`, four times the configuration
/// size, clipped to the domain's extent.
fn working_box(domain: &Domain, x: Vec2, y: Vec2, dx: f64, dy: f64) -> (Vec2, Vec2) {
    let mid = (x + y) * 0.5;
    let side = (x.x - y.x).abs().max((x.y - y.y).abs()).max(dx.min(dy));
    let half = 2.0 * side;
    let mut lo = Vec2::new(mid.x - half, mid.y - half);
    let mut hi = Vec2::new(mid.x + half, mid.y + half);
    let clip = |lo: &mut Vec2, hi: &mut Vec2, a: Vec2, b: Vec2| {
        lo.x = lo.x.max(a.x);
        lo.y = lo.y.max(a.y);
        hi.x = hi.x.min(b.x);
        hi.y = hi.y.min(b.y);
    };
    match domain {
        Domain::HalfSpace { .. } => lo.y = lo.y.max(0.0),
        Domain::Strip => {
            lo.y = lo.y.max(-1.0);
            hi.y = hi.y.min(1.0);
        }
        Domain::Ball { center, radius } | Domain::PuncturedBall { center, radius } => {
            let c = center.to_vec2();
            let r = Vec2::new(*radius, *radius);
            clip(&mut lo, &mut hi, c - r, c + r);
        }
        Domain::SlitDisk => clip(&mut lo, &mut hi, Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0)),
        Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => {
            let b = p.bbox();
            clip(&mut lo, &mut hi, b.min, b.max);
        }
        _ => {}
    }
    (lo, hi)
}

const SWEEPS: usize = 20;

struct Field<'a> {
    domain: &'a Domain,
}

impl Field<'_> {
    /// `1/d(p)`, or `None` outside the domain.
    #[inline]
    fn weight(&self, p: Vec2) -> Option<f64> {
        if !self.domain.contains2(p) {
            return None;
        }
        let d = self.domain.raw_boundary_distance2(p);
        (d > 0.0).then(|| 1.0 / d)
    }

    /// Simpson cost of the segment `[a, b]`; infinite if it may leave the domain.
    fn segment_cost(&self, a: Vec2, b: Vec2) -> f64 {
        let (Some(wa), Some(wb)) = (self.weight(a), self.weight(b)) else {
            return f64::INFINITY;
        };
        let len = a.dist(b);
        // B(a, d(a)) ∪ B(b, d(b)) covers [a, b] when the radii add up to |a−b|
        if 1.0 / wa + 1.0 / wb < len {
            return f64::INFINITY;
        }
        let Some(wm) = self.weight((a + b) * 0.5) else {
            return f64::INFINITY;
        };
        len * (wa + 4.0 * wm + wb) / 6.0
    }

    fn path_cost(&self, pts: &[Vec2]) -> f64 {
        pts.windows(2).map(|w| self.segment_cost(w[0], w[1])).sum()
    }

    /// Relaxes `path` coarse to fine: the polyline is resampled with a few
    /// vertices, relaxed, then repeatedly subdivided and relaxed again until
    /// the spacing reaches `h`. Returns the relaxed path and its cost.
    fn relax(&self, path: &[Vec2], h: f64) -> (Vec<Vec2>, f64) {
        let len: f64 = path.windows(2).map(|w| w[0].dist(w[1])).sum();
        let mut spacing = len / 8.0;
        let mut pts = resample(path, spacing.max(h));
        let mut cost = self.path_cost(&pts);
        loop {
            let fine = spacing <= h;
            let relaxed = self.relax_sweeps(&mut pts, 0.25 * spacing.max(h), if fine { 1e-4 } else { 1e-2 });
            // a coarse pass can only help; discard it if it failed to
            if relaxed.is_finite() {
                cost = relaxed;
            }
            if fine {
                break;
            }
            spacing *= 0.5;
            let mut next = Vec::with_capacity(2 * pts.len());
            for w in pts.windows(2) {
                next.push(w[0]);
                next.push((w[0] + w[1]) * 0.5);
            }
            next.push(pts[pts.len() - 1]);
            pts = next;
        }
        if !cost.is_finite() {
            pts = resample(path, h);
            cost = self.path_cost(&pts);
        }
        (pts, cost)
    }

    /// Gauss–Seidel sweeps moving each interior vertex along its local
    /// normal; the trial step shrinks to `stop·step` before giving up.
    fn relax_sweeps(&self, pts: &mut [Vec2], step0: f64, stop: f64) -> f64 {
        let n = pts.len();
        if n < 3 {
            return self.path_cost(pts);
        }
        let mut step = step0;
        for _ in 0..SWEEPS {
            let mut gain = 0.0;
            for i in 1..n - 1 {
                let (a, p, b) = (pts[i - 1], pts[i], pts[i + 1]);
                let t = b - a;
                if t.norm() == 0.0 {
                    continue;
                }
                let nrm = t.normalized().perp();
                let local = |s: f64| {
                    let q = p + nrm * s;
                    self.segment_cost(a, q) + self.segment_cost(q, b)
                };
                let f0 = local(0.0);
                let fm = local(-step);
                let fp = local(step);
                let mut best = (0.0, f0);
                for (s, f) in [(-step, fm), (step, fp)] {
                    if f < best.1 {
                        best = (s, f);
                    }
                }
                let curv = fm - 2.0 * f0 + fp;
                if curv > 0.0 && curv.is_finite() {
                    let s = (step * (fm - fp) / (2.0 * curv)).clamp(-2.0 * step, 2.0 * step);
                    let f = local(s);
                    if f < best.1 {
                        best = (s, f);
                    }
                }
                if best.1 < f0 {
                    pts[i] = p + nrm * best.0;
                    if f0.is_finite() {
                        gain += f0 - best.1;
                    }
                }
            }
            let cost = self.path_cost(pts);
            if gain <= 1e-9 * cost {
                step *= 0.5;
                if step < stop * step0 {
                    break;
                }
            }
        }
        self.path_cost(pts)
    }
}

/// Resamples a polyline at spacing at most `h`, keeping its endpoints.
fn resample(pts: &[Vec2], h: f64) -> Vec<Vec2> {
    let len: f64 = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
    let segs = ((len / h).ceil() as usize).max(1);
    let step = len / segs as f64;
    let mut out = Vec::with_capacity(segs + 1);
    out.push(pts[0]);
    let mut i = 0;
    let mut walked = 0.0;
    for k in 1..segs {
        let target = k as f64 * step;
        while i + 1 < pts.len() - 1 && walked + pts[i].dist(pts[i + 1]) < target {
            walked += pts[i].dist(pts[i + 1]);
            i += 1;
        }
        let seg = pts[i].dist(pts[i + 1]);
        let t = if seg > 0.0 { ((target - walked) / seg).clamp(0.0, 1.0) } else { 0.0 };
        out.push(pts[i].lerp(pts[i + 1], t));
    }
    out.push(pts[pts.len() - 1]);
    out
}

#[derive(Clone, Copy, PartialEq)]
struct QueueItem {
    dist: f64,
    node: usize,
}

impl Eq for QueueItem {}

impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cell-centre grid; `w[i]` is `1/d` at valid nodes and `0` elsewhere.
struct Grid {
    origin: Vec2,
    h: f64,
    nx: usize,
    ny: usize,
    w: Vec<f64>,
}

impl Grid {
    fn center(&self, ix: usize, iy: usize) -> Vec2 {
        self.origin + Vec2::new((ix as f64 + 0.5) * self.h, (iy as f64 + 0.5) * self.h)
    }

    fn empty(lo: Vec2, hi: Vec2, h: f64) -> Self {
        let nx = (((hi.x - lo.x) / h).ceil() as usize).max(1);
        let ny = (((hi.y - lo.y) / h).ceil() as usize).max(1);
        Grid {
            origin: lo,
            h,
            nx,
            ny,
            w: alloc::vec![0.0; nx * ny],
        }
    }

    fn activate(&mut self, field: &Field, ix: usize, iy: usize) {
        let c = self.center(ix, iy);
        if let Some(w) = field.weight(c) {
            // margin: cell centres must be farther than a cell diagonal from ∂G
            if 1.0 / w > self.h * core::f64::consts::SQRT_2 {
                self.w[iy * self.nx + ix] = w;
            }
        }
    }

    fn full(field: &Field, lo: Vec2, hi: Vec2, h: f64) -> Self {
        let mut g = Grid::empty(lo, hi, h);
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                g.activate(field, ix, iy);
            }
        }
        g
    }

    /// Cells within `radius` of the polyline `path`.
    fn tube(field: &Field, path: &[Vec2], radius: f64, h: f64) -> Self {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in path {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let pad = Vec2::new(radius + h, radius + h);
        let mut g = Grid::empty(lo - pad, hi + pad, h);
        let mut mark = alloc::vec![false; g.nx * g.ny];
        for seg in path.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let bx0 = ((a.x.min(b.x) - radius - g.origin.x) / h).floor().max(0.0) as usize;
            let by0 = ((a.y.min(b.y) - radius - g.origin.y) / h).floor().max(0.0) as usize;
            let bx1 = (((a.x.max(b.x) + radius - g.origin.x) / h).ceil() as usize).min(g.nx);
            let by1 = (((a.y.max(b.y) + radius - g.origin.y) / h).ceil() as usize).min(g.ny);
            for iy in by0..by1 {
                for ix in bx0..bx1 {
                    let i = iy * g.nx + ix;
                    if !mark[i] && crate::domain::point_segment_distance(g.center(ix, iy), a, b) <= radius {
                        mark[i] = true;
                    }
                }
            }
        }
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                if mark[iy * g.nx + ix] {
                    g.activate(field, ix, iy);
                }
            }
        }
        g
    }

    /// Valid nodes within `2h` of `p`, with their edge weights from `p`.
    fn attach(&self, p: Vec2, wp: f64) -> Vec<(usize, f64)> {
        let r = 2.0 * self.h;
        let ix0 = ((p.x - r - self.origin.x) / self.h).floor().max(0.0) as usize;
        let iy0 = ((p.y - r - self.origin.y) / self.h).floor().max(0.0) as usize;
        let ix1 = (((p.x + r - self.origin.x) / self.h).ceil().max(0.0) as usize).min(self.nx);
        let iy1 = (((p.y + r - self.origin.y) / self.h).ceil().max(0.0) as usize).min(self.ny);
        let mut out = Vec::new();
        for iy in iy0..iy1 {
            for ix in ix0..ix1 {
                let i = iy * self.nx + ix;
                let w = self.w[i];
                let c = self.center(ix, iy);
                let len = c.dist(p);
                if w > 0.0 && len <= r {
                    out.push((i, len * (w + wp) / 2.0));
                }
            }
        }
        out
    }

    fn shortest_path(&self, field: &Field, x: Vec2, y: Vec2, stencil: Stencil) -> Result<(f64, Vec<Vec2>)> {
        let n = self.nx * self.ny;
        let (src, dst) = (n, n + 1);
        let wx = field.weight(x).ok_or(Error::OutsideDomain)?;
        let wy = field.weight(y).ok_or(Error::OutsideDomain)?;
        let from_x = self.attach(x, wx);
        let into_y: Vec<(usize, f64)> = self.attach(y, wy);
        let mut to_y = alloc::vec![f64::NAN; n];
        for &(i, c) in &into_y {
            to_y[i] = c;
        }

        let mut dist = alloc::vec![f64::INFINITY; n + 2];
        let mut prev = alloc::vec![usize::MAX; n + 2];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(QueueItem { dist: 0.0, node: src });
        let offsets = stencil.offsets();
        while let Some(QueueItem { dist: d, node }) = heap.pop() {
            if d > dist[node] {
                continue;
            }
            if node == dst {
                break;
            }
            let mut relax = |to: usize, cost: f64, heap: &mut BinaryHeap<QueueItem>| {
                let nd = d + cost;
                if nd < dist[to] {
                    dist[to] = nd;
                    prev[to] = node;
                    heap.push(QueueItem { dist: nd, node: to });
                }
            };
            if node == src {
                for &(i, c) in &from_x {
                    relax(i, c, &mut heap);
                }
                if x.dist(y) <= 2.0 * self.h {
                    relax(dst, x.dist(y) * (wx + wy) / 2.0, &mut heap);
                }
                continue;
            }
            let (ix, iy) = ((node % self.nx) as i32, (node / self.nx) as i32);
            let wu = self.w[node];
            let cu = self.center(ix as usize, iy as usize);
            for &(ox, oy) in offsets {
                let (jx, jy) = (ix + ox, iy + oy);
                if jx < 0 || jy < 0 || jx >= self.nx as i32 || jy >= self.ny as i32 {
                    continue;
                }
                let j = jy as usize * self.nx + jx as usize;
                let wv = self.w[j];
                if wv > 0.0 {
                    let len = self.h * f64::from(ox * ox + oy * oy).sqrt();
                    relax(j, len * (wu + wv) / 2.0, &mut heap);
                }
            }
            if !to_y[node].is_nan() {
                relax(dst, to_y[node], &mut heap);
            }
            let _ = cu;
        }
        if !dist[dst].is_finite() {
            return Err(Error::Degenerate("no grid path joins the points".into()));
        }
        let mut path = alloc::vec![y];
        let mut cur = prev[dst];
        while cur != src {
            path.push(self.center(cur % self.nx, cur / self.nx));
            cur = prev[cur];
        }
        path.push(x);
        path.reverse();
        Ok((dist[dst], path))
    }
}

/// Checks `k_{B(z, d(z))}(x, y) ≤ (1+λ)/(1−λ)·k_G(x, y)` on pairs inside
/// `B(z, λ·d(z))`.
pub fn check_kz_lemma(
    domain: &Domain,
    z: &Point,
    lambda: f64,
    pairs: &[(Point, Point)],
    cfg: &GeodesicGraphConfig,
) -> Result<VerificationReport> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidConfig("lambda must lie in (0, 1)".into()));
    }
    let dz = interior_distance(domain, z)?;
    let ball = Domain::ball(z.clone(), dz)?;
    let factor = (1.0 + lambda) / (1.0 - lambda);
    let mut tally = Tally::new();
    for (i, (x, y)) in pairs.iter().enumerate() {
        if x.dist(z) >= lambda * dz || y.dist(z) >= lambda * dz {
            return Err(Error::InvalidPoint("pair outside B(z, λ d(z))".into()));
        }
        let lhs = Approx::from_metric(k_numeric(&ball, x, y, cfg)?);
        let rhs = Approx::from_metric(k_metric(domain, x, y, cfg)?) * Approx::exact(factor);
        tally.record(i as u64, x, y, lhs, rhs);
    }
    Ok(tally.into_report(
        &alloc::format!("kz-lemma(lambda={lambda})"),
        &alloc::format!("{domain}"),
        0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_halfspace() {
        let e = core::f64::consts::E;
        let k = k_exact_halfspace(&Point::xy(0.0, 1.0), &Point::xy(0.0, e)).unwrap();
        assert!((k.value - 1.0).abs() < 1e-15 && k.error_bound == 0.0);
    }

    #[test]
    fn radial_ball_pair() {
        let g = Domain::unit_ball(2);
        let k = k_numeric(&g, &Point::xy(0.0, 0.0), &Point::xy(0.5, 0.0), &GeodesicGraphConfig::default()).unwrap();
        assert!((k.value / 2f64.ln() - 1.0).abs() < 1e-3, "{k:?}");
    }

    #[test]
    fn halfplane_numeric() {
        let g = Domain::upper_half_plane();
        let cfg = GeodesicGraphConfig::default();
        let k = k_numeric(&g, &Point::xy(0.0, 1.0), &Point::xy(0.0, 3.0), &cfg).unwrap();
        assert!((k.value / 3f64.ln() - 1.0).abs() < 1e-2, "{k:?}");
        let k = k_numeric(&g, &Point::xy(0.0, 1.0), &Point::xy(1.0, 1.0), &cfg).unwrap();
        assert!((k.value / 0.962_423_650_119_206_9 - 1.0).abs() < 1e-2, "{k:?}");
        assert_eq!(k_numeric(&g, &Point::xy(0.3, 1.0), &Point::xy(0.3, 1.0), &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn too_close_to_boundary() {
        let g = Domain::unit_ball(2);
        let r = k_numeric(&g, &Point::xy(0.999, 0.0), &Point::xy(0.0, 0.0), &GeodesicGraphConfig::default());
        assert!(matches!(r, Err(Error::ResolutionTooCoarse { .. })));
    }

    #[test]
    fn resample_keeps_endpoints() {
        let pts = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)];
        let r = resample(&pts, 0.3);
        assert_eq!(r[0], pts[0]);
        assert_eq!(*r.last().unwrap(), pts[2]);
        for w in r.windows(2) {
            assert!(w[0].dist(w[1]) <= 0.3 + 1e-12);
        }
    }
}
