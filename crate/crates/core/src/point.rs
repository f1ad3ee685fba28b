//! Points in `R^n` and the planar vector type used by the boundary solvers.

use alloc::format;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// A point of `R^n`, `n >= 2`, with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidPoint(format!(
                "dimension must be at least 2, got {}",
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate {c}")));
        }
        Ok(Self { coords })
    }

    /// Planar point. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        Self::new(alloc::vec![x, y]).expect("finite planar coordinates")
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: alloc::vec![0.0; dim.max(2)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn last(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, other: &Point) -> Point {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Point) -> Point {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, k: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// `self + k * dir`
    pub fn add_scaled(&self, dir: &Point, k: f64) -> Point {
        self.zip_with(dir, |a, b| a + k * b)
    }

    fn zip_with(&self, other: &Point, f: impl Fn(f64, f64) -> f64) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn ensure_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }

    /// First two coordinates as a planar vector.
    pub fn to_vec2(&self) -> Vec2 {
        Vec2::new(self.coords[0], self.coords[1])
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl From<Vec2> for Point {
    fn from(v: Vec2) -> Self {
        Point::xy(v.x, v.y)
    }
}

/// Planar vector used on every hot path of the boundary solvers.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s)
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Angle `∠(x, z, y)` in `[0, π]` between the segments `[z, x]` and `[z, y]`.
///
/// Uses `2·atan2(| |v|u − |u|v |, | |v|u + |u|v |)`, which stays accurate for
/// nearly collinear and nearly opposite configurations where `acos` of the
/// normalized dot product loses half of the significant digits.
pub fn angle_at(x: &Point, z: &Point, y: &Point) -> Result<f64> {
    x.ensure_dim(z.dim())?;
    y.ensure_dim(z.dim())?;
    let u = x.sub(z);
    let v = y.sub(z);
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Degenerate(
            "angle vertex coincides with an endpoint".into(),
        ));
    }
    let mut diff = 0.0;
    let mut sum = 0.0;
    for (a, b) in u.coords().iter().zip(v.coords()) {
        let d = nv * a - nu * b;
        let s = nv * a + nu * b;
        diff += d * d;
        sum += s * s;
    }
    Ok(2.0 * diff.sqrt().atan2(sum.sqrt()))
}

/// Planar angle `∠(x, z, y)`; returns 0 when `z` coincides with an endpoint.
#[inline]
pub fn angle_at2(x: Vec2, z: Vec2, y: Vec2) -> f64 {
    let u = x - z;
    let v = y - z;
    u.cross(v).abs().atan2(u.dot(v))
}
