//! Metric expressions with error propagation.
//!
//! An [`Expr`] is a small AST over the metrics, the distances `|x−y|`,
//! `d(x)`, `d(y)`, the diameter, named parameters and a handful of elementary
//! functions. Evaluation produces an [`Approx`]: a value together with an
//! absolute error radius, propagated by interval arithmetic so that monotone
//! and non-monotone steps alike stay conservative.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::metrics::{MetricKind, MetricValue};
use crate::{Error, Result};

/// Error radius attached to closed-form values.
pub const CLOSED_FORM_ERR: f64 = 1e-12;

/// Negative radicands down to this value are clamped to zero.
pub const RADICAND_GUARD: f64 = 1e-10;

/// A value with an absolute error radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub err: f64,
}

impl Approx {
    pub const fn exact(value: f64) -> Self {
        Approx { value, err: 0.0 }
    }

    pub const fn new(value: f64, err: f64) -> Self {
        Approx { value, err }
    }

    /// Closed forms get [`CLOSED_FORM_ERR`]; solver values keep their bound.
    pub fn from_metric(m: MetricValue) -> Self {
        if m.error_bound == 0.0 {
            Approx::new(m.value, CLOSED_FORM_ERR)
        } else {
            Approx::new(m.value, m.error_bound)
        }
    }

    pub fn lo(self) -> f64 {
        self.value - self.err
    }

    pub fn hi(self) -> f64 {
        self.value + self.err
    }

    /// Image under a monotone `f` defined on `[dom_lo, dom_hi]`.
    fn monotone(self, f: impl Fn(f64) -> f64, dom_lo: f64, dom_hi: f64) -> Self {
        let v = f(self.value.clamp(dom_lo, dom_hi));
        if self.err == 0.0 {
            return Approx::exact(v);
        }
        let a = f(self.lo().clamp(dom_lo, dom_hi));
        let b = f(self.hi().clamp(dom_lo, dom_hi));
        Approx::new(v, (a - v).abs().max((b - v).abs()))
    }

    /// Image under an `L`-Lipschitz `f`.
    fn lipschitz(self, f: impl Fn(f64) -> f64, l: f64) -> Self {
        Approx::new(f(self.value), l * self.err)
    }

    pub fn sqrt(self) -> Self {
        self.monotone(f64::sqrt, 0.0, f64::INFINITY)
    }

    pub fn th(self) -> Self {
        self.monotone(f64::tanh, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn atan(self) -> Self {
        self.monotone(f64::atan, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn asin(self) -> Self {
        self.monotone(f64::asin, -1.0, 1.0)
    }

    pub fn exp(self) -> Self {
        self.monotone(f64::exp, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn ln_1p(self) -> Self {
        self.monotone(f64::ln_1p, -1.0, f64::INFINITY)
    }

    pub fn sin(self) -> Self {
        self.lipschitz(f64::sin, 1.0)
    }

    pub fn cos(self) -> Self {
        self.lipschitz(f64::cos, 1.0)
    }

    pub fn powf(self, e: f64) -> Self {
        self.monotone(|t| t.powf(e), 0.0, f64::INFINITY)
    }

    /// `√max(r, 0)`; radicands below `−RADICAND_GUARD − err` are an accuracy failure.
    pub fn sqrt_guarded(self) -> Result<Self> {
        if self.value < -RADICAND_GUARD - self.err {
            return Err(Error::InsufficientResolution(alloc::format!(
                "negative radicand {:.3e}",
                self.value
            )));
        }
        Ok(self.sqrt())
    }

    pub fn min(self, o: Approx) -> Self {
        Approx::new(self.value.min(o.value), self.err.max(o.err))
    }

    pub fn max(self, o: Approx) -> Self {
        Approx::new(self.value.max(o.value), self.err.max(o.err))
    }
}

impl From<f64> for Approx {
    fn from(v: f64) -> Self {
        Approx::exact(v)
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx::new(-self.value, self.err)
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, o: Approx) -> Approx {
        Approx::new(self.value + o.value, self.err + o.err)
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, o: Approx) -> Approx {
        Approx::new(self.value - o.value, self.err + o.err)
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, o: Approx) -> Approx {
        let v = self.value * o.value;
        let err = self.value.abs() * o.err + o.value.abs() * self.err + self.err * o.err;
        Approx::new(v, err)
    }
}

impl Div for Approx {
    type Output = Approx;
    fn div(self, o: Approx) -> Approx {
        let v = self.value / o.value;
        if self.err == 0.0 && o.err == 0.0 {
            return Approx::exact(v);
        }
        if o.lo() <= 0.0 && o.hi() >= 0.0 {
            return Approx::new(v, f64::INFINITY);
        }
        let corners = [
            self.lo() / o.lo(),
            self.lo() / o.hi(),
            self.hi() / o.lo(),
            self.hi() / o.hi(),
        ];
        let err = corners.iter().map(|c| (c - v).abs()).fold(0.0, f64::max);
        Approx::new(v, err)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Approx {
            type Output = Approx;
            fn $m(self, o: f64) -> Approx {
                $tr::$m(self, Approx::exact(o))
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

/// Elementary functions available in expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Th,
    Atan,
    Asin,
    Sin,
    Cos,
    Sqrt,
    /// Square root with the negative-radicand guard.
    SqrtGuarded,
    Exp,
    Ln1p,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Th => "th",
            Func::Atan => "arctan",
            Func::Asin => "arcsin",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt | Func::SqrtGuarded => "sqrt",
            Func::Exp => "exp",
            Func::Ln1p => "log1p",
        }
    }

    fn apply(self, a: Approx) -> Result<Approx> {
        Ok(match self {
            Func::Th => a.th(),
            Func::Atan => a.atan(),
            Func::Asin => a.asin(),
            Func::Sin => a.sin(),
            Func::Cos => a.cos(),
            Func::Sqrt => a.sqrt(),
            Func::SqrtGuarded => a.sqrt_guarded()?,
            Func::Exp => a.exp(),
            Func::Ln1p => a.ln_1p(),
        })
    }
}

/// Quantities an expression can refer to, supplied per sample pair.
pub trait Env {
    fn metric(&mut self, kind: MetricKind) -> Result<Approx>;
    /// `|x−y|`
    fn dist(&mut self) -> Approx;
    fn dx(&mut self) -> Approx;
    fn dy(&mut self) -> Approx;
    /// Diameter of the domain.
    fn diam(&mut self) -> Approx;
    fn param(&mut self, name: &str) -> Result<Approx>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Param(&'static str),
    Metric(MetricKind),
    Dist,
    Dx,
    Dy,
    MinD,
    Diam,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Apply(Func, Box<Expr>),
    Pow(Box<Expr>, f64),
}

impl Expr {
    pub fn eval(&self, env: &mut dyn Env) -> Result<Approx> {
        Ok(match self {
            Expr::Const(c) => Approx::exact(*c),
            Expr::Param(name) => env.param(name)?,
            Expr::Metric(kind) => env.metric(*kind)?,
            Expr::Dist => env.dist(),
            Expr::Dx => env.dx(),
            Expr::Dy => env.dy(),
            Expr::MinD => env.dx().min(env.dy()),
            Expr::Diam => env.diam(),
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => a.eval(env)? / b.eval(env)?,
            Expr::Apply(f, a) => f.apply(a.eval(env)?)?,
            Expr::Pow(a, e) => a.eval(env)?.powf(*e),
        })
    }

    /// Metrics referenced anywhere in the expression.
    pub fn visit_metrics(&self, out: &mut impl FnMut(MetricKind)) {
        match self {
            Expr::Metric(k) => out(*k),
            Expr::Neg(a) | Expr::Apply(_, a) | Expr::Pow(a, _) => a.visit_metrics(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.visit_metrics(out);
                b.visit_metrics(out);
            }
            _ => {}
        }
    }

    pub fn uses(&self, kind: MetricKind) -> bool {
        let mut found = false;
        self.visit_metrics(&mut |k| found |= k == kind);
        found
    }

    pub fn apply(self, f: Func) -> Expr {
        Expr::Apply(f, Box::new(self))
    }

    pub fn powf(self, e: f64) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn sq(self) -> Expr {
        self.clone() * self
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, child: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < min_prec {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }

    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Param(name) => f.write_str(name),
            Expr::Metric(MetricKind::JStar) => f.write_str("j*"),
            Expr::Metric(k) => f.write_str(k.name()),
            Expr::Dist => f.write_str("|x-y|"),
            Expr::Dx => f.write_str("d(x)"),
            Expr::Dy => f.write_str("d(y)"),
            Expr::MinD => f.write_str("min(d(x),d(y))"),
            Expr::Diam => f.write_str("d(G)"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                self.fmt_child(a, 4, f)
            }
            Expr::Add(a, b) => {
                self.fmt_child(a, 1, f)?;
                f.write_str(" + ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Sub(a, b) => {
                self.fmt_child(a, 1, f)?;
                f.write_str(" - ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Mul(a, b) => {
                self.fmt_child(a, 2, f)?;
                f.write_str("*")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Div(a, b) => {
                self.fmt_child(a, 2, f)?;
                f.write_str("/")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Apply(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Pow(a, e) => {
                self.fmt_child(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $var:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$var(Box::new(self), Box::new(o))
            }
        }
        impl $tr<f64> for Expr {
            type Output = Expr;
            fn $m(self, o: f64) -> Expr {
                Expr::$var(Box::new(self), Box::new(Expr::Const(o)))
            }
        }
        impl $tr<Expr> for f64 {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$var(Box::new(Expr::Const(self)), Box::new(o))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Shorthand constructors used by the registry.
pub mod dsl {
    use super::{Expr, Func};
    use crate::metrics::MetricKind;

    pub fn s() -> Expr {
        Expr::Metric(MetricKind::S)
    }
    pub fn v() -> Expr {
        Expr::Metric(MetricKind::V)
    }
    pub fn j() -> Expr {
        Expr::Metric(MetricKind::J)
    }
    pub fn jstar() -> Expr {
        Expr::Metric(MetricKind::JStar)
    }
    pub fn p() -> Expr {
        Expr::Metric(MetricKind::P)
    }
    pub fn k() -> Expr {
        Expr::Metric(MetricKind::K)
    }
    pub fn rho() -> Expr {
        Expr::Metric(MetricKind::Rho)
    }
    pub fn c(value: f64) -> Expr {
        Expr::Const(value)
    }
    pub fn param(name: &'static str) -> Expr {
        Expr::Param(name)
    }
    pub fn dist() -> Expr {
        Expr::Dist
    }
    pub fn dx() -> Expr {
        Expr::Dx
    }
    pub fn min_d() -> Expr {
        Expr::MinD
    }
    pub fn diam() -> Expr {
        Expr::Diam
    }
    pub fn th(e: Expr) -> Expr {
        e.apply(Func::Th)
    }
    pub fn atan(e: Expr) -> Expr {
        e.apply(Func::Atan)
    }
    pub fn asin(e: Expr) -> Expr {
        e.apply(Func::Asin)
    }
    pub fn sin(e: Expr) -> Expr {
        e.apply(Func::Sin)
    }
    pub fn cos(e: Expr) -> Expr {
        e.apply(Func::Cos)
    }
    pub fn sqrt(e: Expr) -> Expr {
        e.apply(Func::Sqrt)
    }
    pub fn sqrt_guarded(e: Expr) -> Expr {
        e.apply(Func::SqrtGuarded)
    }
    pub fn exp(e: Expr) -> Expr {
        e.apply(Func::Exp)
    }
}

#[cfg(test)]
mod tests {
    use super::dsl::*;
    use super::*;

    struct Fixed;

    impl Env for Fixed {
        fn metric(&mut self, kind: MetricKind) -> Result<Approx> {
            Ok(match kind {
                MetricKind::S => Approx::new(0.5, 1e-10),
                MetricKind::J => Approx::exact(3f64.ln()),
                _ => Approx::exact(0.25),
            })
        }
        fn dist(&mut self) -> Approx {
            Approx::exact(2.0)
        }
        fn dx(&mut self) -> Approx {
            Approx::exact(1.0)
        }
        fn dy(&mut self) -> Approx {
            Approx::exact(3.0)
        }
        fn diam(&mut self) -> Approx {
            Approx::exact(f64::INFINITY)
        }
        fn param(&mut self, _: &str) -> Result<Approx> {
            Ok(Approx::exact(0.45))
        }
    }

    #[test]
    fn evaluates_and_renders() {
        let e = (exp(j()) - 1.0) / 2.0;
        let a = e.eval(&mut Fixed).unwrap();
        assert!((a.value - 1.0).abs() < 1e-15);
        assert_eq!(e.render(), "(exp(j) - 1)/2");
        assert_eq!((c(2.0) * jstar()).render(), "2*j*");
        assert_eq!(min_d().eval(&mut Fixed).unwrap().value, 1.0);
    }

    #[test]
    fn error_propagates() {
        let a = (2.0 * s()).eval(&mut Fixed).unwrap();
        assert!((a.err - 2e-10).abs() < 1e-20);
        let b = th(s()).eval(&mut Fixed).unwrap();
        assert!(b.err > 0.0 && b.err < 1e-10);
        assert!(s().uses(MetricKind::S) && !s().uses(MetricKind::V));
    }

    #[test]
    fn radicand_guard() {
        assert_eq!(Approx::new(-5e-11, 0.0).sqrt_guarded().unwrap().value, 0.0);
        assert!(Approx::new(-1e-6, 1e-9).sqrt_guarded().is_err());
    }

    #[test]
    fn division_interval() {
        let q = Approx::new(1.0, 0.1) / Approx::new(2.0, 0.1);
        assert!(q.lo() <= 0.9 / 2.1 && q.hi() >= 1.1 / 1.9);
    }
}
