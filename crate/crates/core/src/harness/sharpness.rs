//! Extremal configurations with known exact values.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::expr::Approx;
use super::report::{Tally, VerificationReport};
use super::{evaluate_metric, SolverConfigs};
use crate::domain::Domain;
use crate::metrics::MetricKind;
use crate::point::Point;
use crate::Result;

const CLOSED_TOL: f64 = 1e-12;
const SOLVER_TOL: f64 = 1e-9;

/// Accumulates `|computed − expected| ≤ tol` checks.
struct Equalities {
    tally: Tally,
    next: u64,
}

impl Equalities {
    fn new() -> Self {
        Equalities {
            tally: Tally::new(),
            next: 0,
        }
    }

    fn check(&mut self, x: &Point, y: &Point, computed: f64, expected: f64, tol: f64) {
        let diff = Approx::exact((computed - expected).abs());
        self.tally
            .record_with_slack(self.next, x, y, diff, Approx::exact(0.0), tol);
        self.next += 1;
    }

    fn metric(&mut self, kind: MetricKind, g: &Domain, x: &Point, y: &Point, expected: f64, cfgs: &SolverConfigs) -> Result<()> {
        let m = evaluate_metric(kind, g, x, y, cfgs)?;
        let tol = if m.is_closed_form() { CLOSED_TOL } else { SOLVER_TOL };
        self.check(x, y, m.value, expected, tol);
        Ok(())
    }

    fn finish(self, case: &str, g: &Domain) -> VerificationReport {
        self.tally.into_report(case, &alloc::format!("{g}"), 0)
    }
}

/// (a) `x = (1,0)`, `y = (t,0)` in the punctured plane: `s = j* = (t−1)/(t+1)`.
fn collinear_punctured(cfgs: &SolverConfigs) -> Result<VerificationReport> {
    let g = Domain::punctured(Point::origin(2));
    let mut eq = Equalities::new();
    for t in [1.5, 2.0, 3.0, 5.0, 10.0] {
        let (x, y) = (Point::xy(1.0, 0.0), Point::xy(t, 0.0));
        let want = (t - 1.0) / (t + 1.0);
        eq.metric(MetricKind::S, &g, &x, &y, want, cfgs)?;
        eq.metric(MetricKind::JStar, &g, &x, &y, want, cfgs)?;
    }
    Ok(eq.finish("sharpness-a-collinear", &g))
}

/// (b) `y = −x` in the punctured plane: `p = 1/√2`, `j* = 1/2`, `s = 2j* = 1`.
fn antipodal_punctured(cfgs: &SolverConfigs) -> Result<VerificationReport> {
    let g = Domain::punctured(Point::origin(2));
    let mut eq = Equalities::new();
    for x in [Point::xy(0.7, 0.0), Point::xy(0.3, 0.4), Point::xy(-2.0, 1.0)] {
        let y = x.scale(-1.0);
        eq.metric(MetricKind::P, &g, &x, &y, core::f64::consts::FRAC_1_SQRT_2, cfgs)?;
        eq.metric(MetricKind::JStar, &g, &x, &y, 0.5, cfgs)?;
        eq.metric(MetricKind::S, &g, &x, &y, 1.0, cfgs)?;
    }
    Ok(eq.finish("sharpness-b-antipodal", &g))
}

/// (c) `y = x/|x|²` on a ray: `j* = p = (|x|²−1)/(|x|²+1)`.
fn inversion_punctured(cfgs: &SolverConfigs) -> Result<VerificationReport> {
    let g = Domain::punctured(Point::origin(2));
    let mut eq = Equalities::new();
    for a in [1.2, 2.0, 4.0] {
        for dir in [Point::xy(1.0, 0.0), Point::xy(0.6, 0.8)] {
            let x = dir.scale(a);
            let y = dir.scale(1.0 / a);
            let want = (a * a - 1.0) / (a * a + 1.0);
            eq.metric(MetricKind::JStar, &g, &x, &y, want, cfgs)?;
            eq.metric(MetricKind::P, &g, &x, &y, want, cfgs)?;
        }
    }
    Ok(eq.finish("sharpness-c-inversion", &g))
}

/// (d) `(0, ±t)` in the strip: `p = t/√(t²+(1−t)²)`, `v = arcsin t`.
fn strip_pair(cfgs: &SolverConfigs) -> Result<VerificationReport> {
    let g = Domain::Strip;
    let mut eq = Equalities::new();
    for i in 1..=9 {
        let t = f64::from(i) / 10.0;
        let (x, y) = (Point::xy(0.0, t), Point::xy(0.0, -t));
        eq.metric(MetricKind::P, &g, &x, &y, t / (t * t + (1.0 - t) * (1.0 - t)).sqrt(), cfgs)?;
        eq.metric(MetricKind::V, &g, &x, &y, t.asin(), cfgs)?;
    }
    Ok(eq.finish("sharpness-d-strip", &g))
}

/// The law-of-cosines bound `t/(1 + cos v + √(t² − sin²v))`.
pub fn law_of_cosines_bound(t: f64, v: f64) -> f64 {
    t / (1.0 + v.cos() + (t * t - v.sin().powi(2)).max(0.0).sqrt())
}

/// (e) At `v = 0` the law-of-cosines bound is `|x−y|/(|x−y| + 2d)`; at
/// `v = π` it is `1`, and pairs whose segment meets the boundary have
/// `s = 1`, `v = π`.
fn equality_cases(cfgs: &SolverConfigs) -> Result<VerificationReport> {
    let g = Domain::SlitDisk;
    let mut eq = Equalities::new();
    let o = Point::origin(2);
    for t in [0.01, 0.5, 1.0, 3.0, 100.0] {
        eq.check(&o, &o, law_of_cosines_bound(t, 0.0), t / (t + 2.0), CLOSED_TOL);
        eq.check(&o, &o, law_of_cosines_bound(t, core::f64::consts::PI), 1.0, CLOSED_TOL);
    }
    let crossing = [
        (Point::xy(0.5, 0.1), Point::xy(0.5, -0.1)),
        (Point::xy(0.2, 0.3), Point::xy(0.7, -0.05)),
    ];
    for (x, y) in &crossing {
        eq.metric(MetricKind::S, &g, x, y, 1.0, cfgs)?;
        eq.metric(MetricKind::V, &g, x, y, core::f64::consts::PI, cfgs)?;
    }
    let p = Domain::punctured(o.clone());
    let (x, y) = (Point::xy(1.0, 0.5), Point::xy(-2.0, -1.0));
    eq.metric(MetricKind::S, &p, &x, &y, 1.0, cfgs)?;
    eq.metric(MetricKind::V, &p, &x, &y, core::f64::consts::PI, cfgs)?;
    Ok(eq.finish("sharpness-e-equality", &g))
}

/// All extremal-configuration regressions.
pub fn sharpness_suite(cfgs: &SolverConfigs) -> Result<Vec<VerificationReport>> {
    Ok(alloc::vec![
        collinear_punctured(cfgs)?,
        antipodal_punctured(cfgs)?,
        inversion_punctured(cfgs)?,
        strip_pair(cfgs)?,
        equality_cases(cfgs)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for r in sharpness_suite(&SolverConfigs::default()).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}
