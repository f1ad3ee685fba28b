//! Sample evaluation with per-pair metric caching.

use alloc::vec::Vec;
use core::ops::Range;

use super::expr::{Approx, Env};
use super::registry::{InequalityCase, Precondition, Scope};
use super::report::{Tally, VerificationReport};
use super::sampler::{sample_pair, SampleSpec};
use super::{evaluate_metric, SolverConfigs};
use crate::domain::Domain;
use crate::metrics::MetricKind;
use crate::point::Point;
use crate::special::nonlinearity_delta_estimate;
use crate::{Error, Result};

/// `δ` used for planar convex domains, which satisfy `H(δ)` for all `δ < 1/2`.
pub const CONVEX_H_DELTA: f64 = 0.45;

/// Trials and seed of the nonlinearity estimate attached to Koch polygons.
pub const DELTA_HAT_TRIALS: usize = 2000;
pub const DELTA_HAT_SEED: u64 = 7;

/// Domain constants that some cases take as parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DomainProfile {
    pub h_delta: Option<f64>,
    /// Empirical nonlinearity constant; an estimate, not a proven value.
    pub delta_hat: Option<f64>,
}

impl DomainProfile {
    pub fn for_domain(g: &Domain) -> Result<Self> {
        let h_delta = Scope::ExteriorBall.accepts(g).then_some(CONVEX_H_DELTA);
        let delta_hat = match g {
            Domain::Koch { .. } => Some(nonlinearity_delta_estimate(g, DELTA_HAT_TRIALS, DELTA_HAT_SEED)?.delta),
            _ => None,
        };
        Ok(DomainProfile { h_delta, delta_hat })
    }

    fn param(&self, name: &str) -> Result<Approx> {
        let v = match name {
            "delta" => self.h_delta,
            "delta_hat" => self.delta_hat,
            _ => None,
        };
        v.map(Approx::exact)
            .ok_or_else(|| Error::Unsupported(alloc::format!("parameter {name} is not defined for this domain")))
    }
}

/// Everything a case can ask about one sample pair; metrics are computed at
/// most once.
pub struct PairEnv<'a> {
    domain: &'a Domain,
    x: &'a Point,
    y: &'a Point,
    cfgs: &'a SolverConfigs,
    profile: &'a DomainProfile,
    cache: [Option<Result<Approx>>; 7],
}

impl<'a> PairEnv<'a> {
    pub fn new(domain: &'a Domain, x: &'a Point, y: &'a Point, cfgs: &'a SolverConfigs, profile: &'a DomainProfile) -> Self {
        PairEnv {
            domain,
            x,
            y,
            cfgs,
            profile,
            cache: Default::default(),
        }
    }

    fn slot(kind: MetricKind) -> usize {
        MetricKind::ALL.iter().position(|k| *k == kind).expect("listed")
    }
}

impl Env for PairEnv<'_> {
    fn metric(&mut self, kind: MetricKind) -> Result<Approx> {
        let i = Self::slot(kind);
        if self.cache[i].is_none() {
            let v = evaluate_metric(kind, self.domain, self.x, self.y, self.cfgs).map(Approx::from_metric);
            self.cache[i] = Some(v);
        }
        self.cache[i].clone().expect("filled")
    }

    fn dist(&mut self) -> Approx {
        Approx::exact(self.x.dist(self.y))
    }

    fn dx(&mut self) -> Approx {
        Approx::exact(self.domain.raw_boundary_distance(self.x))
    }

    fn dy(&mut self) -> Approx {
        Approx::exact(self.domain.raw_boundary_distance(self.y))
    }

    fn diam(&mut self) -> Approx {
        Approx::exact(self.domain.diameter())
    }

    fn param(&mut self, name: &str) -> Result<Approx> {
        self.profile.param(name)
    }
}

/// Evaluates one case on one pair. `Ok(None)` means the precondition failed.
fn evaluate(case: &InequalityCase, env: &mut PairEnv) -> Result<Option<(Approx, Approx)>> {
    if case.precondition == Some(Precondition::SBelowOne) && env.metric(MetricKind::S)?.value >= 1.0 {
        return Ok(None);
    }
    let lhs = case.lhs.eval(env)?;
    let rhs = case.rhs.eval(env)?;
    Ok(Some((lhs, rhs)))
}

/// Tallies for `cases` over the sample indices in `range`, in case order.
/// Cases sharing a sample spec see the same pairs and share metric values.
pub fn evaluate_range(
    cases: &[&InequalityCase],
    g: &Domain,
    seed: u64,
    cfgs: &SolverConfigs,
    profile: &DomainProfile,
    range: Range<u64>,
) -> Result<Vec<Tally>> {
    for c in cases {
        c.check_scope(g)?;
    }
    let mut tallies: Vec<Tally> = cases.iter().map(|_| Tally::new()).collect();
    let mut specs: Vec<SampleSpec> = Vec::new();
    for c in cases {
        if !specs.contains(&c.sample) {
            specs.push(c.sample);
        }
    }
    for spec in &specs {
        let members: Vec<usize> = (0..cases.len()).filter(|&i| cases[i].sample == *spec).collect();
        for index in range.clone() {
            let (x, y) = sample_pair(g, spec, seed, index)?;
            let mut env = PairEnv::new(g, &x, &y, cfgs, profile);
            for &m in &members {
                match evaluate(cases[m], &mut env) {
                    Ok(Some((lhs, rhs))) => tallies[m].record(index, &x, &y, lhs, rhs),
                    Ok(None) => {}
                    Err(_) => tallies[m].record_failure(index, &x, &y),
                }
            }
        }
    }
    Ok(tallies)
}

/// Runs several cases on one domain.
pub fn run_cases(
    cases: &[&InequalityCase],
    g: &Domain,
    samples: usize,
    seed: u64,
    cfgs: &SolverConfigs,
) -> Result<Vec<VerificationReport>> {
    let profile = DomainProfile::for_domain(g)?;
    let tallies = evaluate_range(cases, g, seed, cfgs, &profile, 0..samples as u64)?;
    let domain = alloc::format!("{g}");
    Ok(tallies
        .into_iter()
        .zip(cases)
        .map(|(t, c)| t.into_report(c.id, &domain, seed))
        .collect())
}

pub fn run_case(case: &InequalityCase, g: &Domain, samples: usize, seed: u64, cfgs: &SolverConfigs) -> Result<VerificationReport> {
    Ok(run_cases(&[case], g, samples, seed, cfgs)?.remove(0))
}

/// Evaluates a case on one explicit pair.
pub fn check_pair(case: &InequalityCase, g: &Domain, x: &Point, y: &Point, cfgs: &SolverConfigs) -> Result<Option<(Approx, Approx)>> {
    case.check_scope(g)?;
    let profile = DomainProfile::for_domain(g)?;
    let mut env = PairEnv::new(g, x, y, cfgs, &profile);
    evaluate(case, &mut env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::registry::case_by_id;

    #[test]
    fn jstar_le_s_on_ball() {
        let c = case_by_id("jstar-le-s").unwrap();
        let r = run_case(&c, &Domain::unit_ball(2), 300, 42, &SolverConfigs::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.samples, 300);
    }

    #[test]
    fn s_le_2jstar_equality_on_punctured_plane() {
        let c = case_by_id("s-le-2jstar").unwrap();
        let g = Domain::punctured(Point::origin(2));
        let x = Point::xy(0.6, 0.2);
        let (lhs, rhs) = check_pair(&c, &g, &x, &x.scale(-1.0), &SolverConfigs::default()).unwrap().unwrap();
        assert!((lhs.value - 1.0).abs() < 1e-12 && (rhs.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coincident_pair_is_zero_le_zero() {
        let c = case_by_id("jstar-le-s").unwrap();
        let x = Point::xy(0.1, 0.2);
        let (lhs, rhs) = check_pair(&c, &Domain::unit_ball(2), &x, &x, &SolverConfigs::default()).unwrap().unwrap();
        assert_eq!((lhs.value, rhs.value), (0.0, 0.0));
    }

    #[test]
    fn reports_are_deterministic() {
        let c = case_by_id("s-ge-sin-v2").unwrap();
        let g = Domain::unit_square();
        let a = run_case(&c, &g, 50, 9, &SolverConfigs::default()).unwrap();
        let b = run_case(&c, &g, 50, 9, &SolverConfigs::default()).unwrap();
        assert_eq!(a, b);
    }
}
