//! Canonical Euclidean domains: membership, distance to the boundary, diameter.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::point::{Point, Vec2};
use crate::{Error, Result};

/// Number of consecutive polygon edges grouped under one bounding box.
const CHUNK_EDGES: usize = 32;

/// Axis-aligned box used to prune polygon edge scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec2,
    pub max: Vec2,
}

impl Aabb {
    fn empty() -> Self {
        Aabb {
            min: Vec2::new(f64::INFINITY, f64::INFINITY),
            max: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: Vec2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn dist_to_point(&self, p: Vec2) -> f64 {
        let dx = (self.min.x - p.x).max(0.0).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(0.0).max(p.y - self.max.y);
        (dx * dx + dy * dy).sqrt()
    }

    fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Exact distance between the box and the segment `[a, b]`.
    pub fn dist_to_segment(&self, a: Vec2, b: Vec2) -> f64 {
        if self.contains(a) || self.contains(b) {
            return 0.0;
        }
        let corners = [
            self.min,
            Vec2::new(self.max.x, self.min.y),
            self.max,
            Vec2::new(self.min.x, self.max.y),
        ];
        let mut best = self.dist_to_point(a).min(self.dist_to_point(b));
        for i in 0..4 {
            let (c, d) = (corners[i], corners[(i + 1) % 4]);
            best = best.min(segment_segment_distance(a, b, c, d));
        }
        best
    }
}

/// Closest point to `p` on the segment `[a, b]` and its parameter.
pub fn project_to_segment(p: Vec2, a: Vec2, b: Vec2) -> (Vec2, f64) {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (a + ab * t, t)
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    project_to_segment(p, a, b).0.dist(p)
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Closed segments `[a, b]` and `[c, d]` share at least one point.
pub fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    let on = |p: Vec2, q: Vec2, r: Vec2, o: f64| {
        o == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(a, b, c, o1) || on(a, b, d, o2) || on(c, d, a, o3) || on(c, d, b, o4)
}

pub fn segment_segment_distance(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

#[derive(Debug, Clone, PartialEq)]
struct Chunk {
    start: usize,
    end: usize,
    bbox: Aabb,
}

/// Simple planar polygon, counter-clockwise, with chunked edge bounding boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
    chunks: Vec<Chunk>,
    convex: bool,
    diameter: f64,
    bbox: Aabb,
}

impl Polygon {
    /// Validates simplicity and non-degeneracy; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidDomain("polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(Error::InvalidDomain("non-finite polygon vertex".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidDomain(format!("repeated vertex at index {i}")));
            }
        }
        let area = signed_area(&vertices);
        if area.abs() < 1e-14 {
            return Err(Error::InvalidDomain("polygon has zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            for j in (i + 1)..n {
                if j == i || (j + 1) % n == i || j == (i + 1) % n {
                    continue;
                }
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidDomain(format!(
                        "polygon is not simple: edges {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(Self::from_ccw_unchecked(vertices))
    }

    /// Caller guarantees a simple counter-clockwise polygon.
    fn from_ccw_unchecked(vertices: Vec<Vec2>) -> Self {
        let n = vertices.len();
        let mut chunks = Vec::with_capacity(n / CHUNK_EDGES + 1);
        let mut bbox = Aabb::empty();
        let mut start = 0;
        while start < n {
            let end = (start + CHUNK_EDGES).min(n);
            let mut b = Aabb::empty();
            for i in start..=end {
                b.grow(vertices[i % n]);
            }
            bbox.grow(b.min);
            bbox.grow(b.max);
            chunks.push(Chunk { start, end, bbox: b });
            start = end;
        }
        let convex = is_convex_ccw(&vertices);
        let hull = convex_hull(&vertices);
        let mut diameter: f64 = 0.0;
        for (i, a) in hull.iter().enumerate() {
            for b in &hull[i + 1..] {
                diameter = diameter.max(a.dist(*b));
            }
        }
        Polygon {
            vertices,
            chunks,
            convex,
            diameter,
            bbox,
        }
    }

    /// Axis-parallel unit square `[0,1]²`.
    pub fn unit_square() -> Self {
        Self::from_ccw_unchecked(alloc::vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
    }

    /// Koch snowflake polygon of the given depth built on the equilateral
    /// triangle inscribed in the unit circle; it has `3·4^depth` edges.
    pub fn koch(depth: u32) -> Self {
        let mut verts: Vec<Vec2> = [90.0f64, 210.0, 330.0]
            .iter()
            .map(|deg| Vec2::from_angle(deg.to_radians()))
            .collect();
        let (s60, c60) = (-core::f64::consts::FRAC_PI_3).sin_cos();
        for _ in 0..depth {
            let n = verts.len();
            let mut next = Vec::with_capacity(4 * n);
            for i in 0..n {
                let a = verts[i];
                let b = verts[(i + 1) % n];
                let step = (b - a) * (1.0 / 3.0);
                let p1 = a + step;
                let p3 = a + step * 2.0;
                // outward is to the right of a counter-clockwise edge
                let bump = Vec2::new(step.x * c60 - step.y * s60, step.x * s60 + step.y * c60);
                next.extend_from_slice(&[a, p1, p1 + bump, p3]);
            }
            verts = next;
        }
        Self::from_ccw_unchecked(verts)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn bbox(&self) -> Aabb {
        self.bbox
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.edge_count())
            .map(|i| {
                let (a, b) = self.edge(i);
                a.dist(b)
            })
            .sum()
    }

    /// Edge chunks as `(first_edge, end_edge, bbox)` triples.
    pub fn chunks(&self) -> impl Iterator<Item = (usize, usize, Aabb)> + '_ {
        self.chunks.iter().map(|c| (c.start, c.end, c.bbox))
    }

    /// Closest boundary point and its distance.
    pub fn nearest_boundary_point(&self, p: Vec2) -> (Vec2, f64) {
        let mut order: Vec<(f64, usize)> = self
            .chunks
            .iter()
            .enumerate()
            .map(|(k, c)| (c.bbox.dist_to_point(p), k))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = (self.vertices[0], f64::INFINITY);
        for (lb, k) in order {
            if lb >= best.1 {
                break;
            }
            let c = &self.chunks[k];
            for i in c.start..c.end {
                let (a, b) = self.edge(i);
                let (q, _) = project_to_segment(p, a, b);
                let d = q.dist(p);
                if d < best.1 {
                    best = (q, d);
                }
            }
        }
        best
    }

    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        self.nearest_boundary_point(p).1
    }

    /// Crossing-number test; boundary points report `false`.
    pub fn contains(&self, p: Vec2) -> bool {
        if !self.bbox.contains(p) {
            return false;
        }
        let mut inside = false;
        for c in &self.chunks {
            if c.bbox.max.x < p.x || c.bbox.min.y > p.y || c.bbox.max.y < p.y {
                continue;
            }
            for i in c.start..c.end {
                let (a, b) = self.edge(i);
                if (a.y > p.y) != (b.y > p.y) {
                    let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                    if x > p.x {
                        inside = !inside;
                    }
                }
            }
        }
        inside && self.boundary_distance(p) > 0.0
    }
}

fn signed_area(v: &[Vec2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() / 2.0
}

fn is_convex_ccw(v: &[Vec2]) -> bool {
    let n = v.len();
    (0..n).all(|i| orient(v[i], v[(i + 1) % n], v[(i + 2) % n]) >= 0.0)
}

/// Andrew's monotone chain.
fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
    let half = |hull: &mut Vec<Vec2>, p: Vec2, start: usize| {
        while hull.len() >= start + 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    };
    for &p in &pts {
        half(&mut hull, p, 0);
    }
    hull.pop();
    let start = hull.len();
    for &p in pts.iter().rev() {
        half(&mut hull, p, start);
    }
    hull.pop();
    hull
}

pub(crate) fn convex_hull_of(points: &[Vec2]) -> Vec<Vec2> {
    convex_hull(points)
}

/// The canonical domains. Planar-only variants reject points of other dimensions.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// `{x ∈ R^n : x_n > 0}`
    HalfSpace { dim: usize },
    Ball { center: Point, radius: f64 },
    /// `R^n ∖ {puncture}`
    PuncturedSpace { puncture: Point },
    /// `{(x, y) : |y| < 1}`
    Strip,
    Polygon(Polygon),
    Koch { depth: u32, polygon: Polygon },
    /// `R^n ∖ closed ball`
    BallComplement { center: Point, radius: f64 },
    /// Unit disk with the radial slit `[0, 1] × {0}` removed.
    SlitDisk,
    /// Ball with its center removed.
    PuncturedBall { center: Point, radius: f64 },
}

impl Domain {
    pub fn half_space(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDomain("half-space dimension must be >= 2".into()));
        }
        Ok(Domain::HalfSpace { dim })
    }

    pub fn upper_half_plane() -> Self {
        Domain::HalfSpace { dim: 2 }
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Domain::Ball { center, radius })
    }

    pub fn unit_ball(dim: usize) -> Self {
        Domain::Ball {
            center: Point::origin(dim),
            radius: 1.0,
        }
    }

    pub fn punctured(puncture: Point) -> Self {
        Domain::PuncturedSpace { puncture }
    }

    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        Ok(Domain::Polygon(Polygon::new(vertices)?))
    }

    pub fn unit_square() -> Self {
        Domain::Polygon(Polygon::unit_square())
    }

    pub fn koch(depth: u32) -> Result<Self> {
        if depth > 8 {
            return Err(Error::InvalidDomain(format!("koch depth {depth} exceeds 8")));
        }
        Ok(Domain::Koch {
            depth,
            polygon: Polygon::koch(depth),
        })
    }

    pub fn ball_complement(center: Point, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Domain::BallComplement { center, radius })
    }

    pub fn punctured_ball(center: Point, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Domain::PuncturedBall { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::HalfSpace { dim } => *dim,
            Domain::Ball { center, .. }
            | Domain::BallComplement { center, .. }
            | Domain::PuncturedBall { center, .. } => center.dim(),
            Domain::PuncturedSpace { puncture } => puncture.dim(),
            Domain::Strip | Domain::Polygon(_) | Domain::Koch { .. } | Domain::SlitDisk => 2,
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            Domain::HalfSpace { .. } | Domain::Ball { .. } | Domain::Strip => true,
            Domain::Polygon(p) => p.is_convex(),
            _ => false,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.diameter().is_finite()
    }

    pub fn polygon_ref(&self) -> Option<&Polygon> {
        match self {
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => Some(p),
            _ => None,
        }
    }

    /// Characteristic length used by samplers and working boxes.
    pub fn scale(&self) -> f64 {
        match self {
            Domain::Ball { radius, .. }
            | Domain::BallComplement { radius, .. }
            | Domain::PuncturedBall { radius, .. } => *radius,
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => p.diameter() / 2.0,
            _ => 1.0,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Ball { radius, .. } | Domain::PuncturedBall { radius, .. } => 2.0 * radius,
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => p.diameter(),
            Domain::SlitDisk => 2.0,
            _ => f64::INFINITY,
        }
    }

    /// Strict interior membership; `false` on dimension mismatch.
    pub fn contains(&self, x: &Point) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        match self {
            Domain::HalfSpace { .. } => x.last() > 0.0,
            Domain::Ball { center, radius } => x.dist(center) < *radius,
            Domain::PuncturedSpace { puncture } => x != puncture,
            Domain::Strip => x.coords()[1].abs() < 1.0,
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => p.contains(x.to_vec2()),
            Domain::BallComplement { center, radius } => x.dist(center) > *radius,
            Domain::SlitDisk => {
                let v = x.to_vec2();
                v.norm() < 1.0 && slit_distance(v) > 0.0
            }
            Domain::PuncturedBall { center, radius } => {
                let r = x.dist(center);
                r > 0.0 && r < *radius
            }
        }
    }

    /// Membership in the closure of the domain.
    pub fn closure_contains(&self, x: &Point) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        match self {
            Domain::HalfSpace { .. } => x.last() >= 0.0,
            Domain::Ball { center, radius } | Domain::PuncturedBall { center, radius } => {
                x.dist(center) <= *radius
            }
            Domain::PuncturedSpace { .. } => true,
            Domain::Strip => x.coords()[1].abs() <= 1.0,
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => {
                let v = x.to_vec2();
                p.contains(v) || p.boundary_distance(v) == 0.0
            }
            Domain::BallComplement { center, radius } => x.dist(center) >= *radius,
            Domain::SlitDisk => x.norm() <= 1.0,
        }
    }

    /// Distance from any point of the ambient space to `∂G`, without a
    /// membership check. Dimensions must agree.
    pub fn raw_boundary_distance(&self, x: &Point) -> f64 {
        match self {
            Domain::HalfSpace { .. } => x.last().abs(),
            Domain::Ball { center, radius } | Domain::BallComplement { center, radius } => {
                (x.dist(center) - radius).abs()
            }
            Domain::PuncturedSpace { puncture } => x.dist(puncture),
            Domain::Strip => (1.0 - x.coords()[1].abs()).abs(),
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => {
                p.boundary_distance(x.to_vec2())
            }
            Domain::SlitDisk => {
                let v = x.to_vec2();
                (1.0 - v.norm()).abs().min(slit_distance(v))
            }
            Domain::PuncturedBall { center, radius } => {
                let r = x.dist(center);
                (radius - r).abs().min(r)
            }
        }
    }

    /// Planar fast path of [`Domain::raw_boundary_distance`].
    pub fn raw_boundary_distance2(&self, v: Vec2) -> f64 {
        match self {
            Domain::HalfSpace { .. } => v.y.abs(),
            Domain::Ball { center, radius } | Domain::BallComplement { center, radius } => {
                (v.dist(center.to_vec2()) - radius).abs()
            }
            Domain::PuncturedSpace { puncture } => v.dist(puncture.to_vec2()),
            Domain::Strip => (1.0 - v.y.abs()).abs(),
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => p.boundary_distance(v),
            Domain::SlitDisk => (1.0 - v.norm()).abs().min(slit_distance(v)),
            Domain::PuncturedBall { center, radius } => {
                let r = v.dist(center.to_vec2());
                (radius - r).abs().min(r)
            }
        }
    }

    /// Planar fast path of [`Domain::contains`]; caller guarantees `dim() == 2`.
    pub fn contains2(&self, v: Vec2) -> bool {
        match self {
            Domain::HalfSpace { .. } => v.y > 0.0,
            Domain::Ball { center, radius } => v.dist(center.to_vec2()) < *radius,
            Domain::PuncturedSpace { puncture } => v != puncture.to_vec2(),
            Domain::Strip => v.y.abs() < 1.0,
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => p.contains(v),
            Domain::BallComplement { center, radius } => v.dist(center.to_vec2()) > *radius,
            Domain::SlitDisk => v.norm() < 1.0 && slit_distance(v) > 0.0,
            Domain::PuncturedBall { center, radius } => {
                let r = v.dist(center.to_vec2());
                r > 0.0 && r < *radius
            }
        }
    }

    /// A boundary point realizing `d(x)`.
    pub fn nearest_boundary_point(&self, x: &Point) -> Point {
        match self {
            Domain::HalfSpace { .. } => {
                let mut c = x.coords().to_vec();
                let n = c.len();
                c[n - 1] = 0.0;
                Point::new(c).expect("finite")
            }
            Domain::Ball { center, radius } | Domain::BallComplement { center, radius } => {
                radial_projection(center, *radius, x)
            }
            Domain::PuncturedSpace { puncture } => puncture.clone(),
            Domain::Strip => {
                let c = x.coords();
                Point::xy(c[0], if c[1] < 0.0 { -1.0 } else { 1.0 })
            }
            Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => {
                p.nearest_boundary_point(x.to_vec2()).0.into()
            }
            Domain::SlitDisk => {
                let v = x.to_vec2();
                let (q, _) = project_to_segment(v, Vec2::ZERO, Vec2::new(1.0, 0.0));
                let circ = radial_projection(&Point::origin(2), 1.0, x);
                if q.dist(v) < (1.0 - v.norm()).abs() {
                    q.into()
                } else {
                    circ
                }
            }
            Domain::PuncturedBall { center, radius } => {
                let r = x.dist(center);
                if r <= radius - r {
                    center.clone()
                } else {
                    radial_projection(center, *radius, x)
                }
            }
        }
    }
}

fn check_radius(radius: f64) -> Result<()> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidDomain(format!("radius must be positive, got {radius}")));
    }
    Ok(())
}

fn slit_distance(v: Vec2) -> f64 {
    point_segment_distance(v, Vec2::ZERO, Vec2::new(1.0, 0.0))
}

fn radial_projection(center: &Point, radius: f64, x: &Point) -> Point {
    let d = x.sub(center);
    let n = d.norm();
    if n == 0.0 {
        let mut e = alloc::vec![0.0; center.dim()];
        e[0] = radius;
        return center.add(&Point::new(e).expect("finite"));
    }
    center.add_scaled(&d, radius / n)
}

/// `d(x) = dist(x, ∂G)` for `x` in the closure of `G`.
pub fn boundary_distance(domain: &Domain, x: &Point) -> Result<f64> {
    x.ensure_dim(domain.dim())?;
    if !domain.closure_contains(x) {
        return Err(Error::OutsideDomain);
    }
    Ok(domain.raw_boundary_distance(x))
}

/// Interior boundary distance; boundary points are an error.
pub(crate) fn interior_distance(domain: &Domain, x: &Point) -> Result<f64> {
    let d = boundary_distance(domain, x)?;
    if d == 0.0 || !domain.contains(x) {
        return Err(Error::OnBoundary);
    }
    Ok(d)
}

/// `sup |a − b|` over the domain; `+∞` for unbounded variants.
pub fn domain_diameter(domain: &Domain) -> f64 {
    domain.diameter()
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::HalfSpace { dim } => write!(f, "halfspace:n={dim}"),
            Domain::Ball { center, radius } => {
                write!(f, "ball:c={};r={}", csv(center), radius)
            }
            Domain::PuncturedSpace { puncture } => write!(f, "punctured:p={}", csv(puncture)),
            Domain::Strip => write!(f, "strip"),
            Domain::Polygon(p) => write!(f, "polygon:n={}", p.edge_count()),
            Domain::Koch { depth, .. } => write!(f, "koch:depth={depth}"),
            Domain::BallComplement { center, radius } => {
                write!(f, "ballcomp:c={};r={}", csv(center), radius)
            }
            Domain::SlitDisk => write!(f, "slitdisk"),
            Domain::PuncturedBall { center, radius } => {
                write!(f, "puncturedball:c={};r={}", csv(center), radius)
            }
        }
    }
}

fn csv(p: &Point) -> String {
    let parts: Vec<String> = p.coords().iter().map(|c| format!("{c}")).collect();
    parts.join(",")
}
