//! One-dimensional parametrizations of `∂G` over which boundary suprema are taken.
//!
//! Every domain is reduced to a plane: planar domains are used as they are,
//! while balls, ball complements, punctured space and half-spaces in `R^n`,
//! `n > 2`, are cut by the 2-plane through `x`, `y` and the center (or the
//! normal direction). Unbounded boundary pieces are truncated at
//! `R_trunc = 64·(|x−y| + d(x) + d(y))` around the midpoint of `[x, y]`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::{interior_distance, Domain, Polygon};
use crate::point::{Point, Vec2};
use crate::{Error, Result};

/// Multiplier in `R_trunc = TRUNCATION_FACTOR·(|x−y| + d(x) + d(y))`.
pub const TRUNCATION_FACTOR: f64 = 64.0;

/// A smooth piece of the boundary, parametrized by `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Point(Vec2),
    Segment { a: Vec2, b: Vec2 },
    /// `center + radius·(cos θ, sin θ)`, `θ = start + t·sweep`.
    Arc {
        center: Vec2,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Piece {
    pub fn eval(&self, t: f64) -> Vec2 {
        match *self {
            Piece::Point(p) => p,
            Piece::Segment { a, b } => a.lerp(b, t),
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => center + Vec2::from_angle(start + t * sweep) * radius,
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Point(_) => 0.0,
            Piece::Segment { a, b } => a.dist(b),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Closed curve: parameters 0 and 1 denote the same point.
    pub fn is_closed(&self) -> bool {
        matches!(self, Piece::Arc { sweep, .. } if (sweep.abs() - TAU).abs() < 1e-12)
    }
}

/// Orthonormal frame of the 2-plane used by the reduction; plane
/// coordinates `(u, v)` map to `origin + u·e1 + v·e2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub origin: Point,
    pub e1: Point,
    pub e2: Point,
}

impl Frame {
    fn planar() -> Self {
        Frame {
            origin: Point::origin(2),
            e1: Point::xy(1.0, 0.0),
            e2: Point::xy(0.0, 1.0),
        }
    }

    pub fn to_plane(&self, p: &Point) -> Vec2 {
        let d = p.sub(&self.origin);
        Vec2::new(d.dot(&self.e1), d.dot(&self.e2))
    }

    pub fn to_space(&self, v: Vec2) -> Point {
        self.origin.add_scaled(&self.e1, v.x).add_scaled(&self.e2, v.y)
    }
}

/// Boundary pieces for a pair `(x, y)`, in plane coordinates.
///
/// Polygon edges are not materialized as pieces; they are reached through
/// [`BoundaryParam::polygon`] so that the solvers can prune by edge chunks.
#[derive(Debug, Clone)]
pub struct BoundaryParam<'a> {
    pub pieces: Vec<Piece>,
    pub polygon: Option<&'a Polygon>,
    pub frame: Frame,
    pub x: Vec2,
    pub y: Vec2,
    /// Truncation radius used for unbounded pieces.
    pub r_trunc: f64,
}

impl<'a> BoundaryParam<'a> {
    /// All pieces including polygon edges.
    pub fn all_pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        let edges = self.polygon.into_iter().flat_map(|p| {
            (0..p.edge_count()).map(move |i| {
                let (a, b) = p.edge(i);
                Piece::Segment { a, b }
            })
        });
        self.pieces.iter().copied().chain(edges)
    }

    pub fn total_length(&self) -> f64 {
        self.pieces.iter().map(Piece::length).sum::<f64>()
            + self.polygon.map_or(0.0, Polygon::perimeter)
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty() && self.polygon.is_none()
    }
}

/// Boundary parametrization for the pair `(x, y)` with the default truncation.
pub fn boundary_param<'a>(domain: &'a Domain, x: &Point, y: &Point) -> Result<BoundaryParam<'a>> {
    boundary_param_scaled(domain, x, y, 1.0)
}

/// As [`boundary_param`] with `R_trunc` multiplied by `trunc_multiplier`.
pub fn boundary_param_scaled<'a>(
    domain: &'a Domain,
    x: &Point,
    y: &Point,
    trunc_multiplier: f64,
) -> Result<BoundaryParam<'a>> {
    let dx = interior_distance(domain, x)?;
    let dy = interior_distance(domain, y)?;
    let r_trunc = trunc_multiplier * TRUNCATION_FACTOR * (x.dist(y) + dx + dy);
    let frame = frame_for(domain, x, y)?;
    let (xp, yp) = (frame.to_plane(x), frame.to_plane(y));
    let mid = (xp + yp) * 0.5;
    let (pieces, polygon) = planar_pieces(domain, &frame, mid, r_trunc, xp)?;
    Ok(BoundaryParam {
        pieces,
        polygon,
        frame,
        x: xp,
        y: yp,
        r_trunc,
    })
}

/// Boundary pieces of a planar domain inside the window `B(center, radius)`
/// (only unbounded pieces are clipped).
pub fn planar_window(domain: &Domain, center: Vec2, radius: f64) -> Result<(Vec<Piece>, Option<&Polygon>)> {
    if domain.dim() != 2 {
        return Err(Error::Unsupported("boundary window requires a planar domain".into()));
    }
    planar_pieces(domain, &Frame::planar(), center, radius, center)
}

fn planar_pieces<'a>(
    domain: &'a Domain,
    frame: &Frame,
    mid: Vec2,
    r_trunc: f64,
    xp: Vec2,
) -> Result<(Vec<Piece>, Option<&'a Polygon>)> {
    let circle = |center: Vec2, radius: f64| {
        // seam opposite to x keeps the scan bracket around x's foot point intact
        let start = (xp - center).y.atan2((xp - center).x) + core::f64::consts::PI;
        Piece::Arc {
            center,
            radius,
            start,
            sweep: TAU,
        }
    };
    let horizontal = |level: f64| -> Option<Piece> {
        let h = r_trunc * r_trunc - (level - mid.y) * (level - mid.y);
        (h > 0.0).then(|| {
            let w = h.sqrt();
            Piece::Segment {
                a: Vec2::new(mid.x - w, level),
                b: Vec2::new(mid.x + w, level),
            }
        })
    };
    let pieces = match domain {
        Domain::HalfSpace { .. } => horizontal(0.0).into_iter().collect(),
        Domain::Strip => [horizontal(-1.0), horizontal(1.0)].into_iter().flatten().collect(),
        Domain::Ball { center, radius } | Domain::BallComplement { center, radius } => {
            alloc::vec![circle(frame.to_plane(center), *radius)]
        }
        Domain::PuncturedBall { center, radius } => {
            let c = frame.to_plane(center);
            alloc::vec![circle(c, *radius), Piece::Point(c)]
        }
        Domain::PuncturedSpace { puncture } => alloc::vec![Piece::Point(frame.to_plane(puncture))],
        Domain::SlitDisk => alloc::vec![
            circle(Vec2::ZERO, 1.0),
            Piece::Segment {
                a: Vec2::ZERO,
                b: Vec2::new(1.0, 0.0),
            },
        ],
        Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => return Ok((Vec::new(), Some(p))),
    };
    Ok((pieces, None))
}

fn frame_for(domain: &Domain, x: &Point, y: &Point) -> Result<Frame> {
    let n = domain.dim();
    if n == 2 {
        return Ok(Frame::planar());
    }
    match domain {
        Domain::Ball { center, .. }
        | Domain::BallComplement { center, .. }
        | Domain::PuncturedBall { center, .. } => Ok(radial_frame(center, x, y)),
        Domain::PuncturedSpace { puncture } => Ok(radial_frame(puncture, x, y)),
        Domain::HalfSpace { .. } => {
            let mut foot = x.coords().to_vec();
            foot[n - 1] = 0.0;
            let mut normal = alloc::vec![0.0; n];
            normal[n - 1] = 1.0;
            let e2 = Point::new(normal).expect("finite");
            let d = y.sub(x);
            let tangential = d.add_scaled(&e2, -d.dot(&e2));
            let e1 = unit_or_orthogonal(&tangential, &e2);
            Ok(Frame {
                origin: Point::new(foot).expect("finite"),
                e1,
                e2,
            })
        }
        _ => Err(Error::Unsupported(alloc::format!(
            "{domain} has no boundary parametrization in dimension {n}"
        ))),
    }
}

/// Frame of the plane through `center`, `x`, `y`; any containing plane when
/// the three points are collinear.
fn radial_frame(center: &Point, x: &Point, y: &Point) -> Frame {
    let n = center.dim();
    let a = x.sub(center);
    let b = y.sub(center);
    let e1 = if a.norm() > 0.0 {
        a.scale(1.0 / a.norm())
    } else if b.norm() > 0.0 {
        b.scale(1.0 / b.norm())
    } else {
        basis(n, 0)
    };
    let resid = b.add_scaled(&e1, -b.dot(&e1));
    let e2 = unit_or_orthogonal(&resid, &e1);
    Frame {
        origin: center.clone(),
        e1,
        e2,
    }
}

fn basis(n: usize, i: usize) -> Point {
    let mut c = alloc::vec![0.0; n];
    c[i] = 1.0;
    Point::new(c).expect("finite")
}

/// `v/|v|` when `v` is numerically nonzero relative to the scale of the
/// configuration, otherwise a unit vector orthogonal to `against`.
fn unit_or_orthogonal(v: &Point, against: &Point) -> Point {
    let norm = v.norm();
    if norm > 1e-12 {
        return v.scale(1.0 / norm);
    }
    let n = against.dim();
    (0..n)
        .map(|i| {
            let e = basis(n, i);
            e.add_scaled(against, -e.dot(against))
        })
        .max_by(|p, q| p.norm().total_cmp(&q.norm()))
        .map(|p| p.scale(1.0 / p.norm()))
        .expect("n >= 2")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_all(bp: &BoundaryParam, per_piece: usize) -> Vec<Vec2> {
        let mut out = Vec::new();
        for piece in bp.all_pieces() {
            for i in 0..=per_piece {
                out.push(piece.eval(i as f64 / per_piece as f64));
            }
        }
        out
    }

    #[test]
    fn sampled_points_lie_on_boundary() {
        let domains = [
            Domain::unit_ball(2),
            Domain::upper_half_plane(),
            Domain::Strip,
            Domain::unit_square(),
            Domain::koch(3).unwrap(),
            Domain::punctured(Point::xy(0.1, -0.2)),
            Domain::ball_complement(Point::origin(2), 0.5).unwrap(),
            Domain::SlitDisk,
            Domain::punctured_ball(Point::origin(2), 1.0).unwrap(),
        ];
        for g in &domains {
            let (x, y) = match g {
                Domain::Polygon(_) => (Point::xy(0.3, 0.4), Point::xy(0.7, 0.5)),
                Domain::BallComplement { .. } => (Point::xy(0.8, 0.1), Point::xy(-0.2, 1.5)),
                _ => (Point::xy(0.3, 0.4), Point::xy(-0.2, 0.5)),
            };
            let bp = boundary_param(g, &x, &y).unwrap();
            for z in sample_all(&bp, 17) {
                let p = bp.frame.to_space(z);
                assert!(g.raw_boundary_distance(&p) <= 1e-10, "{g}: {z:?}");
            }
        }
    }

    #[test]
    fn three_dimensional_ball_reduction() {
        let g = Domain::unit_ball(3);
        let x = Point::new(alloc::vec![0.2, 0.1, -0.3]).unwrap();
        let y = Point::new(alloc::vec![-0.4, 0.5, 0.1]).unwrap();
        let bp = boundary_param(&g, &x, &y).unwrap();
        assert!((bp.frame.to_space(bp.x).dist(&x)) < 1e-14);
        assert!((bp.frame.to_space(bp.y).dist(&y)) < 1e-14);
        for z in sample_all(&bp, 32) {
            assert!(g.raw_boundary_distance(&bp.frame.to_space(z)) < 1e-12);
        }
    }

    #[test]
    fn three_dimensional_halfspace_reduction() {
        let g = Domain::half_space(3).unwrap();
        let x = Point::new(alloc::vec![0.2, 0.1, 0.3]).unwrap();
        let y = Point::new(alloc::vec![0.2, 0.1, 1.3]).unwrap();
        let bp = boundary_param(&g, &x, &y).unwrap();
        assert!((bp.frame.to_space(bp.y).dist(&y)) < 1e-14);
        assert_eq!(bp.pieces.len(), 1);
        let r = bp.r_trunc;
        assert!((r - 64.0 * (1.0 + 0.3 + 1.3)).abs() < 1e-12);
    }

    #[test]
    fn unsupported_combinations() {
        let g = Domain::unit_ball(2);
        assert!(boundary_param(&g, &Point::xy(1.0, 0.0), &Point::xy(0.0, 0.0)).is_err());
    }
}
