//! Named groups of checks: the domain corpus the registry runs on, and the
//! distortion checks for maps.

use alloc::vec::Vec;

use super::registry::{registry, InequalityCase, Section};
use super::report::VerificationReport;
use super::SolverConfigs;
use crate::conformal::{
    check_mobius_j_k_distortion, check_p_mobius_bounds, check_qr_holder_bound, check_s_mobius_bound,
    DistortionChain, MapSpec, PMobiusPart,
};
use crate::domain::Domain;
use crate::point::Point;
use crate::Result;

/// Seeds used when a run asks for the standard three.
pub const STANDARD_SEEDS: [u64; 3] = [42, 43, 44];

/// Koch depth used in the corpus.
pub const CORPUS_KOCH_DEPTH: u32 = 6;

/// Ball, half-plane, strip, square, punctured plane and a Koch snowflake.
pub fn corpus() -> Vec<Domain> {
    alloc::vec![
        Domain::unit_ball(2),
        Domain::upper_half_plane(),
        Domain::Strip,
        Domain::unit_square(),
        Domain::punctured(Point::origin(2)),
        Domain::koch(CORPUS_KOCH_DEPTH).expect("depth within range"),
    ]
}

/// Registry cases of one section, or all of them.
pub fn section_cases(section: Option<Section>) -> Vec<InequalityCase> {
    registry()
        .into_iter()
        .filter(|c| section.map_or(true, |s| c.section == s))
        .collect()
}

/// For each corpus domain, the indices into `cases` that apply to it.
/// Domains with nothing in scope are dropped.
pub fn corpus_plan(cases: &[InequalityCase]) -> Vec<(Domain, Vec<usize>)> {
    corpus()
        .into_iter()
        .filter_map(|g| {
            let idx: Vec<usize> = (0..cases.len()).filter(|&i| cases[i].scope.accepts(&g)).collect();
            (!idx.is_empty()).then_some((g, idx))
        })
        .collect()
}

/// One of the map distortion checks.
#[derive(Debug, Clone, PartialEq)]
pub enum DistortionCheck {
    SBound(MapSpec),
    PBounds(MapSpec, PMobiusPart),
    Chain(MapSpec, DistortionChain),
    /// Radial stretch with the given `K`.
    Holder(f64),
}

impl DistortionCheck {
    pub fn run(&self, samples: usize, seed: u64, cfgs: &SolverConfigs) -> Result<VerificationReport> {
        match self {
            DistortionCheck::SBound(f) => check_s_mobius_bound(f, samples, seed, cfgs),
            DistortionCheck::PBounds(f, part) => check_p_mobius_bounds(f, *part, samples, seed),
            DistortionCheck::Chain(f, chain) => check_mobius_j_k_distortion(f, *chain, samples, seed, cfgs),
            DistortionCheck::Holder(k) => check_qr_holder_bound(*k, samples, seed, cfgs),
        }
    }
}

/// Every distortion check in the suite, in a fixed order.
pub fn distortion_checks() -> Vec<DistortionCheck> {
    use DistortionCheck::*;
    let cayley = MapSpec::CayleyBallToHalfspace { dim: 2 };
    let sigma = MapSpec::sigma(Point::xy(0.5, 0.0)).expect("|a| < 1");
    let sigma_p = MapSpec::sigma(Point::xy(0.3, 0.2)).expect("|a| < 1");
    alloc::vec![
        SBound(cayley.clone()),
        SBound(sigma.clone()),
        PBounds(cayley.clone(), PMobiusPart::BallToHalfspace),
        PBounds(sigma_p, PMobiusPart::BallToBall),
        PBounds(MapSpec::CayleyHalfspaceToBall { dim: 2 }, PMobiusPart::HalfspaceToBall),
        Chain(cayley.clone(), DistortionChain::J),
        Chain(sigma.clone(), DistortionChain::J),
        Chain(sigma, DistortionChain::K),
        Chain(cayley, DistortionChain::K),
        Holder(1.0),
        Holder(2.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_respects_scopes() {
        let cases = section_cases(None);
        let plan = corpus_plan(&cases);
        assert_eq!(plan.len(), corpus().len());
        for (g, idx) in &plan {
            assert!(idx.iter().all(|&i| cases[i].scope.accepts(g)));
        }
        let punctured = plan.iter().find(|(g, _)| matches!(g, Domain::PuncturedSpace { .. })).unwrap();
        assert!(punctured.1.iter().all(|&i| !cases[i].id.starts_with("convex")));
    }

    #[test]
    fn distortion_checks_run_small() {
        let cfgs = SolverConfigs::harness();
        for c in distortion_checks() {
            let r = c.run(20, 1, &cfgs).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.samples, 20);
        }
    }
}
