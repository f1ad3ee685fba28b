//! Stratified pair sampling.
//!
//! Sample `i` is drawn from its own random stream. Indices `≡ 0 (mod 10)` put
//! `x` within `0.01·scale` of the boundary, indices `≡ 1 (mod 10)` put `y`
//! within `0.01·scale` of `x`; the rest are uniform over a window of the
//! domain. Extremal behaviour of most comparison inequalities lives in those
//! two strata.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::domain::Domain;
use crate::point::Point;
use crate::rng::{stream_id, stream_rng};
use crate::{Error, Result};

const MAX_TRIES: usize = 100_000;

/// Constraint tying `y` to `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairRule {
    Free,
    /// `y ∈ B(x, λ·d(x))`
    NearX { lambda: f64 },
}

impl PairRule {
    fn key(&self) -> u64 {
        match self {
            PairRule::Free => 0,
            PairRule::NearX { lambda } => lambda.to_bits(),
        }
    }
}

/// What to sample: the pair rule and an optional floor on `d(x)`, `d(y)`
/// as a fraction of the domain scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub rule: PairRule,
    pub min_d_frac: Option<f64>,
}

impl SampleSpec {
    pub const FREE: SampleSpec = SampleSpec {
        rule: PairRule::Free,
        min_d_frac: None,
    };

    pub fn near_x(lambda: f64) -> Self {
        SampleSpec {
            rule: PairRule::NearX { lambda },
            min_d_frac: None,
        }
    }

    pub fn with_min_d(self, frac: f64) -> Self {
        SampleSpec {
            min_d_frac: Some(frac),
            ..self
        }
    }

    /// Stream id shared by every case with the same spec on the same domain.
    pub fn stream(&self, domain: &Domain) -> u64 {
        let d = stream_id(&alloc::format!("{domain}"));
        let m = self.min_d_frac.map_or(0, f64::to_bits);
        d ^ self.rule.key().rotate_left(17) ^ m.rotate_left(41)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    NearBoundary,
    NearCoincident,
    Uniform,
}

pub fn stratum_of(index: u64) -> Stratum {
    match index % 10 {
        0 => Stratum::NearBoundary,
        1 => Stratum::NearCoincident,
        _ => Stratum::Uniform,
    }
}

/// Axis-aligned window covering the part of the domain that is sampled.
fn window(domain: &Domain) -> (Vec<f64>, Vec<f64>) {
    let n = domain.dim();
    let around = |c: &Point, h: f64| {
        (
            c.coords().iter().map(|v| v - h).collect::<Vec<_>>(),
            c.coords().iter().map(|v| v + h).collect::<Vec<_>>(),
        )
    };
    match domain {
        Domain::HalfSpace { .. } => {
            let mut lo = alloc::vec![-2.0; n];
            let mut hi = alloc::vec![2.0; n];
            lo[n - 1] = 0.0;
            hi[n - 1] = 4.0;
            (lo, hi)
        }
        Domain::Ball { center, radius } | Domain::PuncturedBall { center, radius } => around(center, *radius),
        Domain::BallComplement { center, radius } => around(center, 4.0 * radius),
        Domain::PuncturedSpace { puncture } => around(puncture, 3.0),
        Domain::Strip => (alloc::vec![-3.0, -1.0], alloc::vec![3.0, 1.0]),
        Domain::SlitDisk => (alloc::vec![-1.0, -1.0], alloc::vec![1.0, 1.0]),
        Domain::Polygon(p) | Domain::Koch { polygon: p, .. } => {
            let b = p.bbox();
            (alloc::vec![b.min.x, b.min.y], alloc::vec![b.max.x, b.max.y])
        }
    }
}

pub fn uniform_point(domain: &Domain, rng: &mut ChaCha8Rng) -> Result<Point> {
    let (lo, hi) = window(domain);
    for _ in 0..MAX_TRIES {
        let c: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| rng.gen_range(*a..*b)).collect();
        let p = Point::new(c)?;
        if domain.contains(&p) {
            return Ok(p);
        }
    }
    Err(Error::Degenerate(alloc::format!("could not sample a point of {domain}")))
}

/// Uniformly distributed unit vector (Box–Muller normals).
pub fn unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Point {
    loop {
        let mut c = Vec::with_capacity(n);
        while c.len() < n {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            let r = (-2.0 * u1.ln()).sqrt();
            let (s, co) = (core::f64::consts::TAU * u2).sin_cos();
            c.push(r * co);
            if c.len() < n {
                c.push(r * s);
            }
        }
        let p = Point::new(c).expect("finite normals");
        let norm = p.norm();
        if norm > 1e-12 {
            return p.scale(1.0 / norm);
        }
    }
}

/// `0.01·scale·10^(−decades·U)`
fn small_length(scale: f64, decades: f64, rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen();
    0.01 * scale * 10f64.powf(-decades * u)
}

fn near_boundary_point(domain: &Domain, rng: &mut ChaCha8Rng) -> Result<Point> {
    let scale = domain.scale();
    for _ in 0..MAX_TRIES {
        let x0 = uniform_point(domain, rng)?;
        let z = domain.nearest_boundary_point(&x0);
        let gap = x0.dist(&z);
        if gap == 0.0 {
            continue;
        }
        let t = small_length(scale, 2.0, rng).min(gap);
        // [z, x0] minus z lies in B(x0, d(x0)) ⊂ G
        let x = z.add_scaled(&x0.sub(&z), t / gap);
        if domain.contains(&x) {
            return Ok(x);
        }
    }
    Err(Error::Degenerate(alloc::format!("no near-boundary point found in {domain}")))
}

fn far_enough(domain: &Domain, p: &Point, min_d: f64) -> bool {
    domain.contains(p) && domain.raw_boundary_distance(p) >= min_d
}

/// The pair for sample `index`.
pub fn sample_pair(domain: &Domain, spec: &SampleSpec, seed: u64, index: u64) -> Result<(Point, Point)> {
    let mut rng = stream_rng(seed, spec.stream(domain), index);
    let scale = domain.scale();
    let min_d = spec.min_d_frac.map_or(0.0, |f| f * scale);
    let n = domain.dim();
    let stratum = match (stratum_of(index), spec.min_d_frac) {
        (Stratum::NearBoundary, Some(_)) => Stratum::Uniform,
        (s, _) => s,
    };
    for _ in 0..MAX_TRIES {
        let x = match stratum {
            Stratum::NearBoundary => near_boundary_point(domain, &mut rng)?,
            _ => uniform_point(domain, &mut rng)?,
        };
        if !far_enough(domain, &x, min_d) {
            continue;
        }
        let y = match (spec.rule, stratum) {
            (PairRule::Free, Stratum::NearCoincident) => {
                x.add_scaled(&unit_vector(n, &mut rng), small_length(scale, 3.0, &mut rng))
            }
            (PairRule::Free, _) => uniform_point(domain, &mut rng)?,
            (PairRule::NearX { lambda }, s) => {
                let reach = lambda * domain.raw_boundary_distance(&x);
                let frac = if s == Stratum::NearCoincident {
                    1e-3 * 10f64.powf(-2.0 * rng.gen::<f64>())
                } else {
                    rng.gen::<f64>().powf(1.0 / n as f64)
                };
                x.add_scaled(&unit_vector(n, &mut rng), reach * frac)
            }
        };
        if far_enough(domain, &y, min_d) {
            return Ok((x, y));
        }
    }
    Err(Error::Degenerate(alloc::format!("could not sample a pair in {domain}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strata_proportions_and_determinism() {
        let g = Domain::unit_ball(2);
        let n = 1000u64;
        let mut near_b = 0;
        let mut near_c = 0;
        for i in 0..n {
            let (x, y) = sample_pair(&g, &SampleSpec::FREE, 42, i).unwrap();
            assert!(g.contains(&x) && g.contains(&y));
            if g.raw_boundary_distance(&x) < 0.01 {
                near_b += 1;
            }
            if x.dist(&y) < 0.01 {
                near_c += 1;
            }
            assert_eq!((x, y), sample_pair(&g, &SampleSpec::FREE, 42, i).unwrap());
        }
        assert!(near_b >= n / 10 && near_c >= n / 10, "{near_b} {near_c}");
    }

    #[test]
    fn near_x_rule_and_floor() {
        let g = Domain::unit_square();
        let spec = SampleSpec::near_x(0.5).with_min_d(0.1);
        for i in 0..200 {
            let (x, y) = sample_pair(&g, &spec, 7, i).unwrap();
            let dx = g.raw_boundary_distance(&x);
            assert!(x.dist(&y) < 0.5 * dx);
            assert!(dx >= 0.1 * g.scale());
        }
    }

    #[test]
    fn every_domain_samples() {
        let domains = [
            Domain::upper_half_plane(),
            Domain::Strip,
            Domain::punctured(Point::origin(2)),
            Domain::koch(3).unwrap(),
            Domain::ball_complement(Point::origin(2), 1.0).unwrap(),
            Domain::SlitDisk,
            Domain::unit_ball(3),
        ];
        for g in &domains {
            for i in 0..20 {
                let (x, y) = sample_pair(g, &SampleSpec::FREE, 1, i).unwrap();
                assert!(g.contains(&x) && g.contains(&y), "{g}");
            }
        }
    }
}
