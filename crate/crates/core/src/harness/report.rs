use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::expr::Approx;
use crate::point::Point;

/// Absolute slack added to every assertion on top of the error radii.
pub const BASE_SLACK: f64 = 1e-9;

/// At most this many violating samples are kept per report.
pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A violating sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Sample index within the run; witnesses are kept in index order.
    pub index: u64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub case: String,
    pub domain: String,
    pub samples: usize,
    pub seed: u64,
    /// `max(lhs − rhs − slack)` over the samples; `0` when there were none.
    pub max_violation: f64,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// Accumulates `lhs ≤ rhs` checks. Merging is associative and the outcome is
/// independent of the order in which samples were recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct Tally {
    pub samples: usize,
    pub max_violation: f64,
    pub witnesses: Vec<Witness>,
    /// Samples that could not be evaluated at the required accuracy.
    pub failures: usize,
}

impl Default for Tally {
    fn default() -> Self {
        Tally {
            samples: 0,
            max_violation: f64::NEG_INFINITY,
            witnesses: Vec::new(),
            failures: 0,
        }
    }
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs ≤ rhs` with slack `err(lhs) + err(rhs) + BASE_SLACK`.
    pub fn record(&mut self, index: u64, x: &Point, y: &Point, lhs: Approx, rhs: Approx) {
        self.record_with_slack(index, x, y, lhs, rhs, lhs.err + rhs.err + BASE_SLACK);
    }

    /// Records `lhs ≤ rhs + slack` with an explicit slack.
    pub fn record_with_slack(&mut self, index: u64, x: &Point, y: &Point, lhs: Approx, rhs: Approx, slack: f64) {
        let violation = lhs.value - rhs.value - slack;
        let violation = if violation.is_nan() { f64::INFINITY } else { violation };
        self.samples += 1;
        self.max_violation = self.max_violation.max(violation);
        if violation > 0.0 {
            self.push_witness(Witness {
                index,
                x: x.coords().to_vec(),
                y: y.coords().to_vec(),
                lhs: lhs.value,
                rhs: rhs.value,
            });
        }
    }

    /// Records several inequalities for one sample; the worst one counts.
    pub fn record_all(&mut self, index: u64, x: &Point, y: &Point, checks: &[(Approx, Approx)]) {
        let violation = |(l, r): &(Approx, Approx)| {
            let v = l.value - r.value - l.err - r.err;
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        if let Some(worst) = checks.iter().max_by(|a, b| violation(a).total_cmp(&violation(b))) {
            self.record(index, x, y, worst.0, worst.1);
        }
    }

    /// A sample whose evaluation failed; counts as a violation of size 1.
    pub fn record_failure(&mut self, index: u64, x: &Point, y: &Point) {
        self.samples += 1;
        self.failures += 1;
        self.max_violation = self.max_violation.max(1.0);
        self.push_witness(Witness {
            index,
            x: x.coords().to_vec(),
            y: y.coords().to_vec(),
            lhs: f64::NAN,
            rhs: f64::NAN,
        });
    }

    fn push_witness(&mut self, w: Witness) {
        let pos = self.witnesses.partition_point(|o| o.index < w.index);
        if pos < MAX_WITNESSES {
            self.witnesses.insert(pos, w);
            self.witnesses.truncate(MAX_WITNESSES);
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.samples += other.samples;
        self.failures += other.failures;
        self.max_violation = self.max_violation.max(other.max_violation);
        for w in other.witnesses {
            self.push_witness(w);
        }
        self
    }

    pub fn into_report(self, case: &str, domain: &str, seed: u64) -> VerificationReport {
        let max_violation = if self.samples == 0 { 0.0 } else { self.max_violation };
        let verdict = if max_violation <= 0.0 && self.failures == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            case: case.into(),
            domain: domain.into(),
            samples: self.samples,
            seed,
            max_violation,
            witnesses: self.witnesses,
            verdict,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_is_order_independent() {
        let x = Point::xy(0.0, 0.0);
        let mut a = Tally::new();
        let mut b = Tally::new();
        for i in 0..30u64 {
            let lhs = Approx::exact(if i % 2 == 0 { 1.0 } else { 0.0 });
            a.record(i, &x, &x, lhs, Approx::exact(0.5));
        }
        for i in (0..30u64).rev() {
            let lhs = Approx::exact(if i % 2 == 0 { 1.0 } else { 0.0 });
            b.record(i, &x, &x, lhs, Approx::exact(0.5));
        }
        assert_eq!(a, b);
        assert_eq!(a.witnesses.len(), MAX_WITNESSES);
        assert_eq!(a.witnesses[0].index, 0);
        let r = a.into_report("c", "ball", 1);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn slack_absorbs_error() {
        let x = Point::xy(0.0, 0.0);
        let mut t = Tally::new();
        t.record(0, &x, &x, Approx::new(1.0 + 1e-8, 1e-8), Approx::exact(1.0));
        assert!(t.clone().into_report("c", "d", 0).passed());
        assert!(Tally::new().into_report("c", "d", 0).passed());
    }
}
