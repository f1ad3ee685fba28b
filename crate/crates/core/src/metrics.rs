//! Closed-form metrics: hyperbolic `ρ` on `H^n` and `B^n`, `j`, `j*`, `p`,
//! and the half-space identity `s = p = th(ρ/2)`.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::conformal::{inverse_map, MapSpec};
use crate::domain::{interior_distance, Domain};
use crate::point::Point;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricKind {
    /// Hyperbolic metric.
    Rho,
    /// Distance ratio metric.
    J,
    /// `th(j/2)`.
    JStar,
    /// Quasihyperbolic metric.
    K,
    /// Triangular ratio metric.
    S,
    /// Visual angle metric.
    V,
    /// Point pair function.
    P,
}

impl MetricKind {
    pub const ALL: [MetricKind; 7] = [
        MetricKind::Rho,
        MetricKind::J,
        MetricKind::JStar,
        MetricKind::K,
        MetricKind::S,
        MetricKind::V,
        MetricKind::P,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Rho => "rho",
            MetricKind::J => "j",
            MetricKind::JStar => "jstar",
            MetricKind::K => "k",
            MetricKind::S => "s",
            MetricKind::V => "v",
            MetricKind::P => "p",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed metric value. `error_bound` is zero for closed forms and the
/// solver's estimate otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub error_bound: f64,
    pub kind: MetricKind,
}

impl MetricValue {
    pub fn exact(kind: MetricKind, value: f64) -> Self {
        MetricValue {
            value,
            error_bound: 0.0,
            kind,
        }
    }

    pub fn approx(kind: MetricKind, value: f64, error_bound: f64) -> Self {
        MetricValue {
            value,
            error_bound,
            kind,
        }
    }

    pub fn is_closed_form(&self) -> bool {
        self.error_bound == 0.0
    }
}

/// `arcch(1 + u)` without cancellation for small `u`.
pub fn arcch_one_plus(u: f64) -> f64 {
    (u + (u * (u + 2.0)).sqrt()).ln_1p()
}

fn check_pair(x: &Point, y: &Point) -> Result<()> {
    y.ensure_dim(x.dim())
}

/// `ρ_{H^n}` from `ch ρ = 1 + |x−y|²/(2 x_n y_n)`.
pub fn rho_halfspace(x: &Point, y: &Point) -> Result<MetricValue> {
    check_pair(x, y)?;
    if !(x.last() > 0.0 && y.last() > 0.0) {
        return Err(Error::OutsideDomain);
    }
    let u = x.sub(y).norm_sq() / (2.0 * x.last() * y.last());
    Ok(MetricValue::exact(MetricKind::Rho, arcch_one_plus(u)))
}

fn unit_ball_factors(x: &Point, y: &Point) -> Result<(f64, f64)> {
    check_pair(x, y)?;
    let (nx, ny) = (x.norm(), y.norm());
    if !(nx < 1.0 && ny < 1.0) {
        return Err(Error::OutsideDomain);
    }
    Ok(((1.0 - nx) * (1.0 + nx), (1.0 - ny) * (1.0 + ny)))
}

/// `ρ_{B^n}` from `sh(ρ/2) = |x−y| / (√(1−|x|²)·√(1−|y|²))`.
pub fn rho_ball(x: &Point, y: &Point) -> Result<MetricValue> {
    let (fx, fy) = unit_ball_factors(x, y)?;
    let arg = x.dist(y) / (fx * fy).sqrt();
    Ok(MetricValue::exact(MetricKind::Rho, 2.0 * arg.asinh()))
}

/// `th(ρ_{B^n}(x,y)/2) = |x−y| / √(|x−y|² + (1−|x|²)(1−|y|²))`.
pub fn tanh_half_rho_ball(x: &Point, y: &Point) -> Result<f64> {
    let (fx, fy) = unit_ball_factors(x, y)?;
    let d = x.dist(y);
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(d / (d * d + fx * fy).sqrt())
}

/// Hyperbolic metric of a ball `B(c, r)` or a half-space, by similarity.
pub fn rho(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    interior_distance(domain, x)?;
    interior_distance(domain, y)?;
    match domain {
        Domain::HalfSpace { .. } => rho_halfspace(x, y),
        Domain::Ball { center, radius } => {
            let k = 1.0 / radius;
            rho_ball(&x.sub(center).scale(k), &y.sub(center).scale(k))
        }
        _ => Err(Error::Unsupported(alloc::format!(
            "hyperbolic metric is only available on balls and half-spaces, not {domain}"
        ))),
    }
}

fn min_distance(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    check_pair(x, y)?;
    let dx = interior_distance(domain, x)?;
    let dy = interior_distance(domain, y)?;
    Ok(dx.min(dy))
}

/// `j_G(x,y) = log(1 + |x−y| / min{d(x), d(y)})`.
pub fn j_metric(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    let m = min_distance(domain, x, y)?;
    Ok(MetricValue::exact(MetricKind::J, (x.dist(y) / m).ln_1p()))
}

/// `j*_G(x,y) = |x−y| / (|x−y| + 2 min{d(x), d(y)})`, evaluated as the quotient.
pub fn j_star(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    let m = min_distance(domain, x, y)?;
    let d = x.dist(y);
    Ok(MetricValue::exact(MetricKind::JStar, d / (d + 2.0 * m)))
}

/// `p_G(x,y) = |x−y| / √(|x−y|² + 4 d(x) d(y))`.
pub fn p_function(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    check_pair(x, y)?;
    let dx = interior_distance(domain, x)?;
    let dy = interior_distance(domain, y)?;
    let d = x.dist(y);
    let value = if d == 0.0 {
        0.0
    } else {
        d / (d * d + 4.0 * dx * dy).sqrt()
    };
    Ok(MetricValue::exact(MetricKind::P, value))
}

/// `s_{H^n} = th(ρ_{H^n}/2)`, via `th(arcch(1+u)/2) = √(u/(u+2))`.
pub fn s_halfspace(x: &Point, y: &Point) -> Result<MetricValue> {
    check_pair(x, y)?;
    if !(x.last() > 0.0 && y.last() > 0.0) {
        return Err(Error::OutsideDomain);
    }
    let u = x.sub(y).norm_sq() / (2.0 * x.last() * y.last());
    Ok(MetricValue::exact(MetricKind::S, (u / (u + 2.0)).sqrt()))
}

/// `ρ_{h(B^n)}(x, y) = ρ_{B^n}(h⁻¹x, h⁻¹y)` for a Möbius map `h` defined on `B^n`.
pub fn rho_mobius_ball(h: &MapSpec, x: &Point, y: &Point) -> Result<MetricValue> {
    if !h.is_mobius() || !h.source_is_ball() {
        return Err(Error::Unsupported("rho_mobius_ball needs a Möbius map of the unit ball".into()));
    }
    let px = inverse_map(h, x)?;
    let py = inverse_map(h, y)?;
    rho_ball(&px, &py)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, SQRT_2};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn halfspace_rho_values() {
        close(rho_halfspace(&Point::xy(0.0, 1.0), &Point::xy(0.0, E)).unwrap().value, 1.0, 1e-15);
        let p = Point::xy(0.3, 0.7);
        assert_eq!(rho_halfspace(&p, &p).unwrap().value, 0.0);
        close(
            rho_halfspace(&Point::xy(0.0, 1.0), &Point::xy(1.0, 1.0)).unwrap().value,
            0.962_423_650_119_206_9,
            1e-15,
        );
        assert!(rho_halfspace(&Point::xy(0.0, 0.0), &p).is_err());
    }

    #[test]
    fn ball_rho_values() {
        let o = Point::xy(0.0, 0.0);
        let h = Point::xy(0.5, 0.0);
        close(rho_ball(&o, &h).unwrap().value, 3f64.ln(), 1e-15);
        assert_eq!(rho_ball(&h, &h).unwrap().value, 0.0);
        close(rho_ball(&h, &Point::xy(-0.5, 0.0)).unwrap().value, 2.0 * 3f64.ln(), 1e-14);
        close(tanh_half_rho_ball(&o, &h).unwrap(), 0.5, 1e-16);
        assert!(rho_ball(&o, &Point::xy(1.0, 0.0)).is_err());
    }

    #[test]
    fn cancellation_safe_near_zero() {
        let x = Point::xy(0.0, 1.0);
        let y = Point::xy(1e-9, 1.0);
        // ρ ≈ |x−y| / x_n for nearby points
        close(rho_halfspace(&x, &y).unwrap().value, 1e-9, 1e-22);
    }

    #[test]
    fn j_family() {
        let g = Domain::punctured(Point::origin(2));
        let (x, y) = (Point::xy(1.0, 0.0), Point::xy(3.0, 0.0));
        close(j_metric(&g, &x, &y).unwrap().value, 3f64.ln(), 1e-15);
        assert_eq!(j_star(&g, &x, &y).unwrap().value, 0.5);
        assert_eq!(j_star(&g, &x, &Point::xy(-1.0, 0.0)).unwrap().value, 0.5);
        close(p_function(&g, &x, &Point::xy(-1.0, 0.0)).unwrap().value, 1.0 / SQRT_2, 1e-16);
        assert_eq!(j_metric(&g, &x, &x).unwrap().value, 0.0);
        assert_eq!(p_function(&g, &x, &x).unwrap().value, 0.0);

        let b = Domain::unit_ball(2);
        close(j_metric(&b, &Point::xy(0.0, 0.0), &Point::xy(0.5, 0.0)).unwrap().value, 2f64.ln(), 1e-15);
        assert_eq!(j_metric(&b, &Point::xy(1.0, 0.0), &x), Err(Error::OnBoundary));
    }

    #[test]
    fn strip_point_pair() {
        let v = p_function(&Domain::Strip, &Point::xy(0.0, 0.5), &Point::xy(0.0, -0.5)).unwrap();
        close(v.value, 0.5 / 0.5f64.sqrt(), 1e-15);
    }

    #[test]
    fn half_space_s_identity() {
        close(s_halfspace(&Point::xy(0.0, 1.0), &Point::xy(0.0, 3.0)).unwrap().value, 0.5, 1e-16);
        let (x, y) = (Point::xy(0.0, 1.0), Point::xy(1.0, 1.0));
        let s = s_halfspace(&x, &y).unwrap().value;
        close(s, (rho_halfspace(&x, &y).unwrap().value / 2.0).tanh(), 1e-15);
        close(s, 0.447_213_595_499_958, 1e-15);
        close(s, p_function(&Domain::upper_half_plane(), &x, &y).unwrap().value, 1e-15);
    }

    #[test]
    fn general_ball_by_similarity() {
        let g = Domain::ball(Point::xy(2.0, -1.0), 3.0).unwrap();
        let v = rho(&g, &Point::xy(2.0, -1.0), &Point::xy(3.5, -1.0)).unwrap();
        close(v.value, 3f64.ln(), 1e-15);
    }

    #[test]
    fn mobius_ball_rho() {
        let o = Point::xy(0.0, 0.0);
        let h = Point::xy(0.5, 0.0);
        let id = MapSpec::identity(2);
        close(rho_mobius_ball(&id, &o, &h).unwrap().value, 3f64.ln(), 1e-15);
        let cayley = MapSpec::CayleyBallToHalfspace { dim: 2 };
        let fo = crate::conformal::apply_map(&cayley, &o).unwrap();
        let fh = crate::conformal::apply_map(&cayley, &h).unwrap();
        close(rho_mobius_ball(&cayley, &fo, &fh).unwrap().value, 3f64.ln(), 1e-14);
        close(rho_halfspace(&fo, &fh).unwrap().value, 3f64.ln(), 1e-14);
        assert_eq!(rho_mobius_ball(&cayley, &fo, &fo).unwrap().value, 0.0);
    }
}
