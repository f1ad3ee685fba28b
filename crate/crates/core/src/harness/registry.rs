//! The comparison inequalities, one link per case.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::expr::dsl::*;
use super::expr::Expr;
use super::sampler::SampleSpec;
use crate::domain::Domain;
use crate::{Error, Result};

/// Which domains a case applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Bounded,
    Convex,
    Ball,
    BallOrHalfspace,
    /// Where `k` is available: half-spaces, and planar balls via the grid solver.
    QuasihyperbolicBall,
    Planar,
    /// Planar convex domains; each satisfies `H(δ)` for every `δ < 1/2`.
    ExteriorBall,
    /// Koch polygons, carrying an estimated nonlinearity constant.
    Nonlinear,
}

impl Scope {
    pub fn accepts(self, g: &Domain) -> bool {
        match self {
            Scope::All => true,
            Scope::Bounded => g.is_bounded(),
            Scope::Convex => g.is_convex(),
            Scope::Ball => matches!(g, Domain::Ball { .. }),
            Scope::BallOrHalfspace => matches!(g, Domain::Ball { .. } | Domain::HalfSpace { .. }),
            Scope::QuasihyperbolicBall => match g {
                Domain::HalfSpace { .. } => true,
                Domain::Ball { .. } => g.dim() == 2,
                _ => false,
            },
            Scope::Planar => g.dim() == 2,
            Scope::ExteriorBall => g.dim() == 2 && g.is_convex(),
            Scope::Nonlinear => matches!(g, Domain::Koch { .. }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Bounded => "bounded",
            Scope::Convex => "convex",
            Scope::Ball => "ball",
            Scope::BallOrHalfspace => "ball-or-halfspace",
            Scope::QuasihyperbolicBall => "k-available",
            Scope::Planar => "planar",
            Scope::ExteriorBall => "planar-convex",
            Scope::Nonlinear => "koch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    /// Comparisons among `s`, `j`, `p`, `ρ`, `k` and `v` on general and convex domains.
    Two,
    /// Comparisons between `s` and `v`.
    Three,
}

/// Extra hypothesis checked per sample; failing samples are skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    SBelowOne,
}

#[derive(Debug, Clone)]
pub struct InequalityCase {
    pub id: &'static str,
    /// Human-readable form of the asserted link.
    pub statement: &'static str,
    pub section: Section,
    pub scope: Scope,
    pub sample: SampleSpec,
    pub precondition: Option<Precondition>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl InequalityCase {
    pub fn check_scope(&self, g: &Domain) -> Result<()> {
        if self.scope.accepts(g) {
            Ok(())
        } else {
            Err(Error::ScopeMismatch {
                case: self.id.into(),
                domain: alloc::format!("{g}"),
            })
        }
    }
}

/// Strip-pair constant rounded down, absorbing solver slack.
pub const STRIP_C_FLOOR: f64 = 0.737;

/// `λ = 1/2` constant of the `s ≤ c·th(3k)` bound: `1/th(3·log 1.5)`.
pub fn c_half() -> f64 {
    1.0 / (3.0 * 1.5f64.ln()).tanh()
}

fn w() -> Expr {
    (exp(j()) - 1.0) / 2.0
}

fn case(
    id: &'static str,
    statement: &'static str,
    section: Section,
    scope: Scope,
    lhs: Expr,
    rhs: Expr,
) -> InequalityCase {
    InequalityCase {
        id,
        statement,
        section,
        scope,
        sample: SampleSpec::FREE,
        precondition: None,
        lhs,
        rhs,
    }
}

/// Every registered case, in a fixed order.
pub fn registry() -> Vec<InequalityCase> {
    use Scope::*;
    use Section::*;
    let sqrt2 = core::f64::consts::SQRT_2;
    let k_spec = SampleSpec::FREE.with_min_d(0.1);
    let mut v = alloc::vec![
        case("jstar-le-s", "j* <= s", Two, All, jstar(), s()),
        case("s-le-expj", "s <= (e^j - 1)/2", Two, All, s(), w()),
        case("s-le-2jstar", "s <= 2 j*", Two, All, s(), 2.0 * jstar()),
        case("jstar-le-p", "j* <= p", Two, All, jstar(), p()),
        case("p-le-w-ratio", "p <= w/sqrt(w^2+1), w = (e^j-1)/2", Two, All, p(), w() / sqrt(w().sq() + 1.0)),
        case(
            "w-ratio-le-sqrt2-jstar",
            "w/sqrt(w^2+1) <= sqrt2 j*",
            Two,
            All,
            w() / sqrt(w().sq() + 1.0),
            sqrt2 * jstar()
        ),
        case("jstar-ge-dist-over-diam", "|x-y|/d(G) <= j*", Two, Bounded, dist() / diam(), jstar()),
        case("p-over-sqrt2-le-s", "p/sqrt2 <= s", Two, All, p() / sqrt2, s()),
        case("s-le-2p", "s <= 2p", Two, All, s(), 2.0 * p()),
        case("s-le-p-over-1mp", "s <= p/(1-p)", Two, All, s(), p() / (1.0 - p())),
        case("ball-th-rho4-le-s", "th(rho/4) <= s", Two, Ball, th(rho() / 4.0), s()),
        case("ball-s-le-p", "s <= p", Two, Ball, s(), p()),
        case("ball-p-le-th-rho2", "p <= th(rho/2)", Two, Ball, p(), th(rho() / 2.0)),
        case(
            "ball-th-rho2-le-2th-rho4",
            "th(rho/2) <= 2 th(rho/4)",
            Two,
            Ball,
            th(rho() / 2.0),
            2.0 * th(rho() / 4.0)
        ),
        case("j-le-rho", "j <= rho", Two, BallOrHalfspace, j(), rho()),
        case("rho-le-2j", "rho <= 2j", Two, BallOrHalfspace, rho(), 2.0 * j()),
        case("th-j2-le-p", "th(j/2) <= p", Two, All, th(j() / 2.0), p()),
        case("p-le-th-j", "p <= th j", Two, All, p(), th(j())),
        case("convex-th-j2-le-s", "th(j/2) <= s", Two, Convex, th(j() / 2.0), s()),
        case(
            "convex-s-le-m-ratio",
            "s <= |x-y|/sqrt(|x-y|^2 + 4m^2), m = min d",
            Two,
            Convex,
            s(),
            dist() / sqrt(dist().sq() + 4.0 * min_d().sq())
        ),
        case(
            "convex-m-ratio-le-th-j",
            "|x-y|/sqrt(|x-y|^2 + 4m^2) <= th j",
            Two,
            Convex,
            dist() / sqrt(dist().sq() + 4.0 * min_d().sq()),
            th(j())
        ),
        case("convex-s-le-v", "s <= v", Two, Convex, s(), v()),
        case("convex-s-le-sqrt2-jstar", "s <= sqrt2 j*", Two, Convex, s(), sqrt2 * jstar()),
        case("convex-p-over-sqrt2-le-v", "p/sqrt2 <= v", Two, Convex, p() / sqrt2, v()),
        case("p-le-v", "p <= v", Two, BallOrHalfspace, p(), v()),
        case("convex-C-p-le-v", "0.737 p <= v", Two, Convex, STRIP_C_FLOOR * p(), v()),
        case("j-le-k", "j <= k", Two, QuasihyperbolicBall, j(), k()),
        case("rho-le-2k", "rho <= 2k", Two, QuasihyperbolicBall, rho(), 2.0 * k()),
        case("k-le-rho", "k <= rho", Two, QuasihyperbolicBall, k(), rho()),
        case("ball-k-le-2j", "k <= 2j", Two, QuasihyperbolicBall, k(), 2.0 * j()),
        case(
            "s-le-c-th-3k",
            "s <= c th(3k), c = 1/th(3 log 1.5)",
            Two,
            QuasihyperbolicBall,
            s(),
            c_half() * th(3.0 * k())
        ),
        case("s-ge-sin-v2", "sin(v/2) <= s", Three, All, sin(v() / 2.0), s()),
        case(
            "sin-v-le-dist-over-dx",
            "sin v <= |x-y|/d(x), y in B(x, d(x))",
            Three,
            All,
            sin(v()),
            dist() / dx()
        ),
        case(
            "planar-s-le-law-of-cosines",
            "s <= t/(1 + cos v + sqrt(t^2 - sin^2 v)), t = |x-y|/min d",
            Three,
            Planar,
            s(),
            (dist() / min_d())
                / (cos(v()) + 1.0 + sqrt_guarded((dist() / min_d()).sq() - sin(v()).sq()))
        ),
        case(
            "hdelta-sin-v-ge",
            "(delta/2) j* <= sin v",
            Three,
            ExteriorBall,
            param("delta") / 2.0 * jstar(),
            sin(v())
        ),
        // sin is not monotone past π/2, so the form above can fail for wide
        // angles; this is the form that survives when v > π/2
        case(
            "hdelta-v-ge-arcsin",
            "arcsin((delta/2) j*) <= v",
            Three,
            ExteriorBall,
            asin(param("delta") / 2.0 * jstar()),
            v()
        ),
        case(
            "nonlinear-v-gt-arctan",
            "arctan((delta/6) s) < v, s < 1",
            Three,
            Nonlinear,
            atan(param("delta_hat") / 6.0 * s()),
            v()
        ),
    ];
    for c in v.iter_mut() {
        if c.scope == QuasihyperbolicBall {
            c.sample = k_spec;
        }
        match c.id {
            "sin-v-le-dist-over-dx" => c.sample = SampleSpec::near_x(1.0),
            "nonlinear-v-gt-arctan" => c.precondition = Some(Precondition::SBelowOne),
            _ => {}
        }
    }
    for (id, lambda, statement) in [
        ("k-le-j-over-1ml-0.1", 0.1, "k <= j/(1-lambda), lambda = 0.1, y in B(x, lambda d(x))"),
        ("k-le-j-over-1ml-0.5", 0.5, "k <= j/(1-lambda), lambda = 0.5, y in B(x, lambda d(x))"),
        ("k-le-j-over-1ml-0.9", 0.9, "k <= j/(1-lambda), lambda = 0.9, y in B(x, lambda d(x))"),
    ] {
        let mut c = case(id, statement, Two, QuasihyperbolicBall, k(), j() / (1.0 - lambda));
        c.sample = SampleSpec::near_x(lambda).with_min_d(0.1);
        v.push(c);
    }
    v
}

pub fn case_by_id(id: &str) -> Result<InequalityCase> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    #[test]
    fn registry_shape() {
        let r = registry();
        assert!(r.len() >= 18);
        let mut ids: Vec<_> = r.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), r.len(), "duplicate ids");
        assert!(r.iter().all(|c| !c.statement.is_empty()));
    }

    #[test]
    fn convex_cases_reject_punctured_space() {
        let g = Domain::punctured(Point::origin(2));
        for c in registry().iter().filter(|c| c.scope == Scope::Convex) {
            assert!(matches!(c.check_scope(&g), Err(Error::ScopeMismatch { .. })));
        }
        assert!(case_by_id("jstar-le-s").unwrap().check_scope(&g).is_ok());
        assert!(case_by_id("nope").is_err());
    }

    #[test]
    fn c_half_value() {
        assert!((c_half() - 1.0 / (3.0 * 1.5f64.ln()).tanh()).abs() < 1e-15);
        assert!(c_half() > 1.0);
    }
}
