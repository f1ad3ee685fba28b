//! Inequality registry, sampling, evaluation and reporting.

pub mod expr;
pub mod registry;
pub mod report;
pub mod runner;
pub mod sampler;
pub mod sharpness;
pub mod suites;

pub use expr::{Approx, Env, Expr};
pub use registry::{case_by_id, registry, InequalityCase, Precondition, Scope, Section};
pub use report::{Tally, Verdict, VerificationReport, Witness};
pub use runner::{check_pair, evaluate_range, run_case, run_cases, DomainProfile, PairEnv};
pub use sampler::{sample_pair, PairRule, SampleSpec};
pub use sharpness::sharpness_suite;
pub use suites::{corpus, corpus_plan, distortion_checks, section_cases, DistortionCheck, STANDARD_SEEDS};

use crate::domain::Domain;
use crate::metrics::{j_metric, j_star, p_function, rho, MetricKind, MetricValue};
use crate::point::Point;
use crate::quasihyperbolic::{k_metric, GeodesicGraphConfig, Stencil};
use crate::sup::{s_metric, v_metric, SupSolverConfig};
use crate::Result;

/// Solver settings used when a metric has no closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfigs {
    pub sup: SupSolverConfig,
    pub geodesic: GeodesicGraphConfig,
}

impl Default for SolverConfigs {
    fn default() -> Self {
        SolverConfigs {
            sup: SupSolverConfig::default(),
            geodesic: GeodesicGraphConfig::default(),
        }
    }
}

impl SolverConfigs {
    /// Cheaper grid for bulk verification. Sampled pairs keep `d ≥ 0.1` from
    /// the boundary, which 64 cells across a unit disk resolve.
    pub fn harness() -> Self {
        SolverConfigs {
            sup: SupSolverConfig::default(),
            geodesic: GeodesicGraphConfig {
                base_resolution: 64,
                neighbor_stencil: Stencil::Sixteen,
                refinement_levels: 1,
            },
        }
    }
}

/// Dispatches to the closed form or solver for `kind` on `domain`.
pub fn evaluate_metric(kind: MetricKind, domain: &Domain, x: &Point, y: &Point, cfgs: &SolverConfigs) -> Result<MetricValue> {
    match kind {
        MetricKind::Rho => rho(domain, x, y),
        MetricKind::J => j_metric(domain, x, y),
        MetricKind::JStar => j_star(domain, x, y),
        MetricKind::K => k_metric(domain, x, y, &cfgs.geodesic),
        MetricKind::S => s_metric(domain, x, y, &cfgs.sup),
        MetricKind::V => v_metric(domain, x, y, &cfgs.sup),
        MetricKind::P => p_function(domain, x, y),
    }
}
