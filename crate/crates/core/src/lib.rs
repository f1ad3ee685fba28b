//! Hyperbolic-type metrics on canonical Euclidean domains.
//!
//! The crate computes the hyperbolic metric `ρ`, the distance ratio metrics
//! `j` and `j*`, the quasihyperbolic metric `k`, the triangular ratio metric
//! `s`, the visual angle metric `v` and the point pair function `p` on a small
//! family of domains (balls, half-spaces, punctured space, a strip, planar
//! polygons and Koch snowflakes). On top of the metrics sits a registry of
//! comparison inequalities between them, a sampler, and a verification runner
//! that reports the worst violation observed.
//!
//! Everything here is `no_std` with `alloc`. File formats, the command line and
//! the parallel runner live in the companion `hypmetric` crate.
#![no_std]
// Modules import `num_traits::Float` for libm-backed math; when a dependent
// links std, f64's inherent methods win and the import reads as unused.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod boundary;
pub mod conformal;
pub mod domain;
mod error;
pub mod harness;
pub mod metrics;
pub mod optimize;
pub mod point;
pub mod quasihyperbolic;
pub mod rng;
pub mod special;
pub mod sup;

pub use boundary::{boundary_param, BoundaryParam, Piece};
pub use conformal::{apply_map, linear_dilatation, DilatationEstimate, MapSpec};
pub use domain::{domain_diameter, boundary_distance, Domain, Polygon};
pub use error::{Error, Result};
pub use metrics::{MetricKind, MetricValue};
pub use point::{angle_at, Point, Vec2};
pub use quasihyperbolic::{k_exact_halfspace, k_numeric, GeodesicGraphConfig};
pub use sup::{s_metric, s_numeric, s_oracle, v_metric, v_oracle, SupSolverConfig};
