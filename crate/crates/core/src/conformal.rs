//! Möbius maps of the ball and half-space, the radial stretch, a planar
//! analytic map, the linear dilatation estimator, and distortion checks for
//! the triangular ratio metric, `p`, `j` and `k` under these maps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::Domain;
use crate::harness::expr::Approx;
use crate::harness::report::{Tally, VerificationReport};
use crate::harness::sampler::{sample_pair, SampleSpec};
use crate::harness::{evaluate_metric, SolverConfigs};
use crate::metrics::MetricKind;
use crate::point::Point;
use crate::{Error, Result};

/// Named holomorphic maps of planar subdomains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticTag {
    /// `z ↦ z²` from the open first quadrant onto the upper half-plane.
    Square,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    /// `x ↦ R·σ_a(x)` with `σ_a(a) = 0`; `rotation` is row-major `n×n`.
    BallAutomorphism { a: Point, rotation: Vec<f64> },
    CayleyBallToHalfspace { dim: usize },
    CayleyHalfspaceToBall { dim: usize },
    /// `x ↦ |x|^{1/K−1}·x` on the punctured unit ball.
    RadialStretch { k: f64, dim: usize },
    PlanarAnalytic(AnalyticTag),
}

fn identity_matrix(n: usize) -> Vec<f64> {
    (0..n * n).map(|i| if i / n == i % n { 1.0 } else { 0.0 }).collect()
}

impl MapSpec {
    pub fn identity(dim: usize) -> Self {
        MapSpec::BallAutomorphism {
            a: Point::origin(dim),
            rotation: identity_matrix(dim),
        }
    }

    /// `σ_a` without rotation.
    pub fn sigma(a: Point) -> Result<Self> {
        let n = a.dim();
        Self::ball_automorphism(a, identity_matrix(n))
    }

    pub fn ball_automorphism(a: Point, rotation: Vec<f64>) -> Result<Self> {
        let n = a.dim();
        if a.norm() >= 1.0 {
            return Err(Error::InvalidPoint("automorphism centre must satisfy |a| < 1".into()));
        }
        if rotation.len() != n * n || rotation.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!("rotation must be a finite {n}x{n} matrix")));
        }
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| rotation[i * n + k] * rotation[j * n + k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot - want).abs() > 1e-10 {
                    return Err(Error::InvalidConfig("rotation is not orthogonal".into()));
                }
            }
        }
        Ok(MapSpec::BallAutomorphism { a, rotation })
    }

    /// Planar rotation by `theta`.
    pub fn rotation2(theta: f64) -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        alloc::vec![c, -s, s, c]
    }

    pub fn radial_stretch(k: f64, dim: usize) -> Result<Self> {
        if !(k.is_finite() && k >= 1.0) {
            return Err(Error::InvalidConfig(format!("dilatation K must be >= 1, got {k}")));
        }
        if dim < 2 {
            return Err(Error::InvalidConfig("dimension must be >= 2".into()));
        }
        Ok(MapSpec::RadialStretch { k, dim })
    }

    pub fn dim(&self) -> usize {
        match self {
            MapSpec::BallAutomorphism { a, .. } => a.dim(),
            MapSpec::CayleyBallToHalfspace { dim }
            | MapSpec::CayleyHalfspaceToBall { dim }
            | MapSpec::RadialStretch { dim, .. } => *dim,
            MapSpec::PlanarAnalytic(_) => 2,
        }
    }

    pub fn is_mobius(&self) -> bool {
        matches!(
            self,
            MapSpec::BallAutomorphism { .. } | MapSpec::CayleyBallToHalfspace { .. } | MapSpec::CayleyHalfspaceToBall { .. }
        )
    }

    pub fn source_is_ball(&self) -> bool {
        matches!(
            self,
            MapSpec::BallAutomorphism { .. } | MapSpec::CayleyBallToHalfspace { .. } | MapSpec::RadialStretch { .. }
        )
    }

    /// Maximal dilatation `K`; `1` for conformal maps.
    pub fn dilatation(&self) -> f64 {
        match self {
            MapSpec::RadialStretch { k, .. } => *k,
            _ => 1.0,
        }
    }

    /// Source domain, or `None` for the quadrant of [`AnalyticTag::Square`],
    /// which is not one of the supported domains.
    pub fn source_domain(&self) -> Option<Domain> {
        let n = self.dim();
        match self {
            MapSpec::BallAutomorphism { .. } | MapSpec::CayleyBallToHalfspace { .. } => Some(Domain::unit_ball(n)),
            MapSpec::CayleyHalfspaceToBall { .. } => Some(Domain::HalfSpace { dim: n }),
            MapSpec::RadialStretch { .. } => Some(Domain::PuncturedBall {
                center: Point::origin(n),
                radius: 1.0,
            }),
            MapSpec::PlanarAnalytic(AnalyticTag::Square) => None,
        }
    }

    pub fn target_domain(&self) -> Domain {
        let n = self.dim();
        match self {
            MapSpec::BallAutomorphism { .. } | MapSpec::CayleyHalfspaceToBall { .. } => Domain::unit_ball(n),
            MapSpec::CayleyBallToHalfspace { .. } | MapSpec::PlanarAnalytic(AnalyticTag::Square) => {
                Domain::HalfSpace { dim: n }
            }
            MapSpec::RadialStretch { .. } => Domain::PuncturedBall {
                center: Point::origin(n),
                radius: 1.0,
            },
        }
    }

    pub fn source_contains(&self, x: &Point) -> bool {
        match self.source_domain() {
            Some(g) => g.contains(x),
            None => x.dim() == 2 && x.coords()[0] > 0.0 && x.coords()[1] > 0.0,
        }
    }

    pub fn label(&self) -> String {
        match self {
            MapSpec::BallAutomorphism { a, .. } => format!("sigma(a={:?})", a.coords()),
            MapSpec::CayleyBallToHalfspace { dim } => format!("cayley-ball-to-halfspace(n={dim})"),
            MapSpec::CayleyHalfspaceToBall { dim } => format!("cayley-halfspace-to-ball(n={dim})"),
            MapSpec::RadialStretch { k, dim } => format!("radial(K={k},n={dim})"),
            MapSpec::PlanarAnalytic(AnalyticTag::Square) => "square".into(),
        }
    }
}

fn mat_vec(m: &[f64], x: &[f64], transpose: bool) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if transpose { m[k * n + i] } else { m[i * n + k] } * x[k])
                .sum()
        })
        .collect()
}

/// `σ_a(x) = ((1−|a|²)(x−a) − |x−a|²a) / (1 − 2a·x + |a|²|x|²)`
fn sigma(a: &Point, x: &Point) -> Point {
    let a2 = a.norm_sq();
    let xa = x.sub(a);
    let den = 1.0 - 2.0 * a.dot(x) + a2 * x.norm_sq();
    xa.scale(1.0 - a2).add_scaled(a, -xa.norm_sq()).scale(1.0 / den)
}

/// Inversion in the sphere `S(e_n, √2)` followed by reflection in `x_n = 0`;
/// maps `B^n` onto `H^n` with `0 ↦ e_n`.
fn cayley_forward(x: &Point) -> Point {
    let n = x.dim();
    let mut e = alloc::vec![0.0; n];
    e[n - 1] = 1.0;
    let e = Point::new(e).expect("finite");
    let d = x.sub(&e);
    let mut c = e.add_scaled(&d, 2.0 / d.norm_sq()).coords().to_vec();
    c[n - 1] = -c[n - 1];
    Point::new(c).expect("finite")
}

fn cayley_inverse(y: &Point) -> Point {
    let n = y.dim();
    let mut c = y.coords().to_vec();
    c[n - 1] = -c[n - 1];
    let w = Point::new(c).expect("finite");
    let mut e = alloc::vec![0.0; n];
    e[n - 1] = 1.0;
    let e = Point::new(e).expect("finite");
    let d = w.sub(&e);
    e.add_scaled(&d, 2.0 / d.norm_sq())
}

pub fn apply_map(f: &MapSpec, x: &Point) -> Result<Point> {
    x.ensure_dim(f.dim())?;
    if !f.source_contains(x) {
        return Err(Error::OutsideDomain);
    }
    Ok(match f {
        MapSpec::BallAutomorphism { a, rotation } => {
            let s = sigma(a, x);
            Point::new(mat_vec(rotation, s.coords(), false))?
        }
        MapSpec::CayleyBallToHalfspace { .. } => cayley_forward(x),
        MapSpec::CayleyHalfspaceToBall { .. } => cayley_inverse(x),
        MapSpec::RadialStretch { k, .. } => x.scale(x.norm().powf(1.0 / k - 1.0)),
        MapSpec::PlanarAnalytic(AnalyticTag::Square) => {
            let (u, v) = (x.coords()[0], x.coords()[1]);
            Point::xy(u * u - v * v, 2.0 * u * v)
        }
    })
}

pub fn inverse_map(f: &MapSpec, y: &Point) -> Result<Point> {
    y.ensure_dim(f.dim())?;
    if !f.target_domain().contains(y) {
        return Err(Error::OutsideDomain);
    }
    Ok(match f {
        MapSpec::BallAutomorphism { a, rotation } => {
            let r = Point::new(mat_vec(rotation, y.coords(), true))?;
            sigma(&a.scale(-1.0), &r)
        }
        MapSpec::CayleyBallToHalfspace { .. } => cayley_inverse(y),
        MapSpec::CayleyHalfspaceToBall { .. } => cayley_forward(y),
        MapSpec::RadialStretch { k, .. } => y.scale(y.norm().powf(k - 1.0)),
        MapSpec::PlanarAnalytic(AnalyticTag::Square) => {
            // principal square root; the upper half-plane lands in the quadrant
            let (u, v) = (y.coords()[0], y.coords()[1]);
            let r = u.hypot(v);
            let a = ((r + u) / 2.0).sqrt();
            let b = ((r - u) / 2.0).sqrt();
            Point::xy(a, b)
        }
    })
}

pub const DEFAULT_RADII: [f64; 3] = [1e-2, 1e-3, 1e-4];
pub const DEFAULT_DIRECTIONS: usize = 720;

#[derive(Debug, Clone, PartialEq)]
pub struct DilatationEstimate {
    pub z: Point,
    pub radii: Vec<f64>,
    /// `max/min |f(z+r·e) − f(z)|` over the sampled directions, per radius.
    pub ratios: Vec<f64>,
    /// Ratio at the smallest radius.
    pub h: f64,
    /// Whether successive ratios settle (differences do not grow).
    pub converged: bool,
}

/// Unit directions: `count` angles in the plane, or the same angles in every
/// coordinate 2-plane when `n > 2`.
fn directions(n: usize, count: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for t in 0..count {
                let theta = core::f64::consts::TAU * t as f64 / count as f64;
                let mut c = alloc::vec![0.0; n];
                c[i] = theta.cos();
                c[j] = theta.sin();
                out.push(Point::new(c).expect("finite"));
            }
        }
    }
    out
}

/// Estimates the linear dilatation `H(f, z)` from spheres of the given radii.
pub fn linear_dilatation(f: &MapSpec, z: &Point, radii: &[f64], directions_count: usize) -> Result<DilatationEstimate> {
    z.ensure_dim(f.dim())?;
    if !f.source_contains(z) {
        return Err(Error::OutsideDomain);
    }
    if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidConfig("radii must be positive".into()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidConfig("radii must be strictly decreasing".into()));
    }
    if directions_count < 4 {
        return Err(Error::InvalidConfig("need at least 4 directions".into()));
    }
    let dirs = directions(z.dim(), directions_count);
    let fz = apply_map(f, z)?;
    let mut ratios = Vec::with_capacity(radii.len());
    for &r in radii {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for e in &dirs {
            let p = z.add_scaled(e, r);
            if !f.source_contains(&p) {
                return Err(Error::InvalidPoint(format!("sphere S(z, {r}) leaves the source domain")));
            }
            let d = apply_map(f, &p)?.dist(&fz);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if lo <= 0.0 {
            return Err(Error::Degenerate("map is not injective near z".into()));
        }
        ratios.push(hi / lo);
    }
    let diffs: Vec<f64> = ratios.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let converged = diffs.windows(2).all(|w| w[1] <= w[0] + 1e-9) && diffs.last().map_or(true, |d| *d < 0.05);
    Ok(DilatationEstimate {
        z: z.clone(),
        radii: radii.to_vec(),
        h: ratios[ratios.len() - 1],
        ratios,
        converged,
    })
}

fn source_of(f: &MapSpec) -> Result<Domain> {
    f.source_domain()
        .ok_or_else(|| Error::Unsupported(format!("{} has no supported source domain", f.label())))
}

/// Draws `samples` pairs from `spec`, keeping those accepted by `keep`.
fn accepted_pairs(
    domain: &Domain,
    spec: &SampleSpec,
    seed: u64,
    samples: usize,
    keep: impl Fn(&Point, &Point) -> bool,
) -> Result<Vec<(u64, Point, Point)>> {
    let mut out = Vec::with_capacity(samples);
    let mut index = 0u64;
    while out.len() < samples {
        if index > 100 * samples as u64 + 1000 {
            return Err(Error::Degenerate("sampling constraint rejects almost every pair".into()));
        }
        let (x, y) = sample_pair(domain, spec, seed, index)?;
        if keep(&x, &y) {
            out.push((index, x, y));
        }
        index += 1;
    }
    Ok(out)
}

fn report(tally: Tally, case: String, domain: &Domain, seed: u64) -> VerificationReport {
    tally.into_report(&case, &format!("{domain}"), seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistortionChain {
    J,
    K,
}

/// `m_G/2 ≤ m_{fG}(f(x), f(y)) ≤ 2·m_G` for `m = j` or `m = k` and a Möbius `f`.
///
/// For `k`, both points and their images keep distance at least `0.1` from
/// the boundary so the grid solver stays well resolved.
pub fn check_mobius_j_k_distortion(
    f: &MapSpec,
    chain: DistortionChain,
    samples: usize,
    seed: u64,
    cfgs: &SolverConfigs,
) -> Result<VerificationReport> {
    if !f.is_mobius() {
        return Err(Error::Unsupported("j/k distortion check needs a Möbius map".into()));
    }
    let g = source_of(f)?;
    let image = f.target_domain();
    let (kind, spec) = match chain {
        DistortionChain::J => (MetricKind::J, SampleSpec::FREE),
        DistortionChain::K => (MetricKind::K, SampleSpec::FREE.with_min_d(0.1)),
    };
    let far = |p: &Point| match chain {
        DistortionChain::J => true,
        DistortionChain::K => apply_map(f, p).map_or(false, |q| image.raw_boundary_distance(&q) >= 0.1),
    };
    let pairs = accepted_pairs(&g, &spec, seed, samples, |x, y| far(x) && far(y))?;
    let mut tally = Tally::new();
    for (i, x, y) in pairs {
        let eval = || -> Result<(Approx, Approx)> {
            let m = Approx::from_metric(evaluate_metric(kind, &g, &x, &y, cfgs)?);
            let fm = Approx::from_metric(evaluate_metric(kind, &image, &apply_map(f, &x)?, &apply_map(f, &y)?, cfgs)?);
            Ok((m, fm))
        };
        match eval() {
            Ok((m, fm)) => tally.record_all(i, &x, &y, &[(m * 0.5, fm), (fm, m * 2.0)]),
            Err(_) => tally.record_failure(i, &x, &y),
        }
    }
    let name = match chain {
        DistortionChain::J => "mobius-j-distortion",
        DistortionChain::K => "mobius-k-distortion",
    };
    Ok(report(tally, format!("{name}[{}]", f.label()), &g, seed))
}

/// `s_G(f(x), f(y)) ≤ 2s/(1+s²)` with `s = s_{B^n}(x, y)` for Möbius
/// `f: B^n → G ∈ {B^n, H^n}`.
pub fn check_s_mobius_bound(f: &MapSpec, samples: usize, seed: u64, cfgs: &SolverConfigs) -> Result<VerificationReport> {
    if !(f.is_mobius() && f.source_is_ball()) {
        return Err(Error::Unsupported("s bound needs a Möbius map defined on the ball".into()));
    }
    let g = source_of(f)?;
    let image = f.target_domain();
    let pairs = accepted_pairs(&g, &SampleSpec::FREE, seed, samples, |_, _| true)?;
    let mut tally = Tally::new();
    for (i, x, y) in pairs {
        let eval = || -> Result<(Approx, Approx)> {
            let s = Approx::from_metric(evaluate_metric(MetricKind::S, &g, &x, &y, cfgs)?);
            let fs = evaluate_metric(MetricKind::S, &image, &apply_map(f, &x)?, &apply_map(f, &y)?, cfgs)?;
            Ok((Approx::from_metric(fs), s * 2.0 / (s * s + 1.0)))
        };
        match eval() {
            Ok((lhs, rhs)) => tally.record(i, &x, &y, lhs, rhs),
            Err(_) => tally.record_failure(i, &x, &y),
        }
    }
    Ok(report(tally, format!("mobius-s-bound[{}]", f.label()), &g, seed))
}

/// The three source/target combinations of the `p` distortion theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PMobiusPart {
    /// `f: B^n → H^n`: `p ≤ p(f) ≤ 2p/(1+p²)`.
    BallToHalfspace,
    /// `f: B^n → B^n`: `p/(1+√(1−p²)) ≤ p(f) ≤ 2p/(1+p²)`.
    BallToBall,
    /// `f: H^n → B^n`: same window as `BallToBall`, with `p = p_{H^n}`.
    HalfspaceToBall,
}

impl PMobiusPart {
    pub const ALL: [PMobiusPart; 3] = [
        PMobiusPart::BallToHalfspace,
        PMobiusPart::BallToBall,
        PMobiusPart::HalfspaceToBall,
    ];

    pub fn number(self) -> u8 {
        match self {
            PMobiusPart::BallToHalfspace => 1,
            PMobiusPart::BallToBall => 2,
            PMobiusPart::HalfspaceToBall => 3,
        }
    }

    /// The `[lower, upper]` window for `p(f(x), f(y))`.
    pub fn window(self, p: Approx) -> (Approx, Approx) {
        let upper = p * 2.0 / (p * p + 1.0);
        let lower = match self {
            PMobiusPart::BallToHalfspace => p,
            _ => p / ((Approx::exact(1.0) - p * p).max(Approx::exact(0.0)).sqrt() + 1.0),
        };
        (lower, upper)
    }
}

pub fn check_p_mobius_bounds(f: &MapSpec, part: PMobiusPart, samples: usize, seed: u64) -> Result<VerificationReport> {
    let g = source_of(f)?;
    let image = f.target_domain();
    let fits = f.is_mobius()
        && match part {
            PMobiusPart::BallToHalfspace => matches!(f, MapSpec::CayleyBallToHalfspace { .. }),
            PMobiusPart::BallToBall => matches!(f, MapSpec::BallAutomorphism { .. }),
            PMobiusPart::HalfspaceToBall => matches!(f, MapSpec::CayleyHalfspaceToBall { .. }),
        };
    if !fits {
        return Err(Error::Unsupported(format!("{} does not match part ({})", f.label(), part.number())));
    }
    let cfgs = SolverConfigs::default();
    let pairs = accepted_pairs(&g, &SampleSpec::FREE, seed, samples, |_, _| true)?;
    let mut tally = Tally::new();
    for (i, x, y) in pairs {
        let eval = || -> Result<(Approx, Approx, Approx)> {
            let p = Approx::from_metric(evaluate_metric(MetricKind::P, &g, &x, &y, &cfgs)?);
            let fp = evaluate_metric(MetricKind::P, &image, &apply_map(f, &x)?, &apply_map(f, &y)?, &cfgs)?;
            let (lo, hi) = part.window(p);
            Ok((lo, Approx::from_metric(fp), hi))
        };
        match eval() {
            Ok((lo, fp, hi)) => tally.record_all(i, &x, &y, &[(lo, fp), (fp, hi)]),
            Err(_) => tally.record_failure(i, &x, &y),
        }
    }
    Ok(report(tally, format!("mobius-p-part{}[{}]", part.number(), f.label()), &g, seed))
}

/// Grötzsch ring constant in the plane.
pub const LAMBDA_2: f64 = 4.0;

/// `s_{B²}(f(x), f(y)) ≤ λ₂^{1−α}(2s/(1+s²))^α`, `α = 1/K`, for the radial
/// stretch of dilatation `K`. Pairs with a point in `B(0, 10⁻³)` are skipped.
pub fn check_qr_holder_bound(k: f64, samples: usize, seed: u64, cfgs: &SolverConfigs) -> Result<VerificationReport> {
    let f = MapSpec::radial_stretch(k, 2)?;
    let ball = Domain::unit_ball(2);
    let alpha = 1.0 / k;
    let pairs = accepted_pairs(&ball, &SampleSpec::FREE, seed, samples, |x, y| x.norm() >= 1e-3 && y.norm() >= 1e-3)?;
    let mut tally = Tally::new();
    for (i, x, y) in pairs {
        let eval = || -> Result<(Approx, Approx)> {
            let s = Approx::from_metric(evaluate_metric(MetricKind::S, &ball, &x, &y, cfgs)?);
            let fs = evaluate_metric(MetricKind::S, &ball, &apply_map(&f, &x)?, &apply_map(&f, &y)?, cfgs)?;
            let rhs = (s * 2.0 / (s * s + 1.0)).powf(alpha) * LAMBDA_2.powf(1.0 - alpha);
            Ok((Approx::from_metric(fs), rhs))
        };
        match eval() {
            Ok((lhs, rhs)) => tally.record(i, &x, &y, lhs, rhs),
            Err(_) => tally.record_failure(i, &x, &y),
        }
    }
    Ok(report(tally, format!("qr-holder[K={k}]"), &ball, seed))
}

/// `max(m'(fx,fy)/m(x,y), m(x,y)/m'(fx,fy))` over sampled pairs of the
/// source domain.
pub fn empirical_bilipschitz_constant(
    f: &MapSpec,
    metric: MetricKind,
    samples: usize,
    seed: u64,
    cfgs: &SolverConfigs,
) -> Result<f64> {
    let g = source_of(f)?;
    let image = f.target_domain();
    let spec = if metric == MetricKind::K {
        SampleSpec::FREE.with_min_d(0.1)
    } else {
        SampleSpec::FREE
    };
    let mut worst = 1.0f64;
    for i in 0..samples as u64 {
        let (x, y) = sample_pair(&g, &spec, seed, i)?;
        if x == y {
            return Err(Error::Degenerate("coincident pair".into()));
        }
        let m = evaluate_metric(metric, &g, &x, &y, cfgs)?.value;
        let fm = evaluate_metric(metric, &image, &apply_map(f, &x)?, &apply_map(f, &y)?, cfgs)?.value;
        if m <= 0.0 || fm <= 0.0 {
            return Err(Error::Degenerate("metric vanished on a distinct pair".into()));
        }
        worst = worst.max(fm / m).max(m / fm);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Point, b: &Point, tol: f64) -> bool {
        a.dist(b) <= tol
    }

    #[test]
    fn identity_and_sigma_examples() {
        let id = MapSpec::identity(2);
        let x = Point::xy(0.3, 0.4);
        assert_eq!(apply_map(&id, &x).unwrap(), x);
        let a = Point::xy(0.5, 0.0);
        let s = MapSpec::sigma(a.clone()).unwrap();
        assert!(apply_map(&s, &a).unwrap().norm() < 1e-15);
    }

    #[test]
    fn radial_example_and_inverse() {
        let f = MapSpec::radial_stretch(2.0, 2).unwrap();
        let y = apply_map(&f, &Point::xy(0.25, 0.0)).unwrap();
        assert!(close(&y, &Point::xy(0.5, 0.0), 1e-15));
        assert!(close(&inverse_map(&f, &y).unwrap(), &Point::xy(0.25, 0.0), 1e-15));
        assert!(apply_map(&f, &Point::xy(0.0, 0.0)).is_err());
    }

    #[test]
    fn cayley_sends_origin_to_e_n() {
        let f = MapSpec::CayleyBallToHalfspace { dim: 3 };
        let y = apply_map(&f, &Point::origin(3)).unwrap();
        assert!(close(&y, &Point::new(alloc::vec![0.0, 0.0, 1.0]).unwrap(), 1e-15));
        let g = MapSpec::CayleyHalfspaceToBall { dim: 3 };
        let x = Point::new(alloc::vec![0.1, -0.2, 0.3]).unwrap();
        assert!(close(&apply_map(&g, &apply_map(&f, &x).unwrap()).unwrap(), &x, 1e-14));
    }

    #[test]
    fn rotated_automorphism_round_trip() {
        let f = MapSpec::ball_automorphism(Point::xy(0.3, 0.2), MapSpec::rotation2(0.7)).unwrap();
        let x = Point::xy(-0.6, 0.1);
        let y = apply_map(&f, &x).unwrap();
        assert!(y.norm() < 1.0);
        assert!(close(&inverse_map(&f, &y).unwrap(), &x, 1e-14));
        assert!(MapSpec::ball_automorphism(Point::xy(0.0, 0.0), alloc::vec![1.0, 1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn square_map() {
        let f = MapSpec::PlanarAnalytic(AnalyticTag::Square);
        let x = Point::xy(1.0, 2.0);
        let y = apply_map(&f, &x).unwrap();
        assert!(close(&y, &Point::xy(-3.0, 4.0), 1e-15));
        assert!(close(&inverse_map(&f, &y).unwrap(), &x, 1e-14));
    }

    #[test]
    fn dilatation_of_radial_stretch() {
        let f = MapSpec::radial_stretch(2.0, 2).unwrap();
        let est = linear_dilatation(&f, &Point::xy(0.5, 0.0), &DEFAULT_RADII, DEFAULT_DIRECTIONS).unwrap();
        assert!((est.h - 2.0).abs() < 0.1, "{est:?}");
        assert!(est.ratios.iter().all(|r| *r >= 1.0));
        assert!(linear_dilatation(&f, &Point::xy(0.0, 0.0), &DEFAULT_RADII, 720).is_err());
        assert!(linear_dilatation(&f, &Point::xy(0.995, 0.0), &DEFAULT_RADII, 720).is_err());
    }

    #[test]
    fn p_window_example() {
        let (lo, hi) = PMobiusPart::BallToHalfspace.window(Approx::exact(0.5));
        assert_eq!(lo.value, 0.5);
        assert!((hi.value - 0.8).abs() < 1e-15);
    }
}
