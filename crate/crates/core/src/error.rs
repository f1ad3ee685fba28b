use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("point lies outside the closure of the domain")]
    OutsideDomain,
    #[error("point lies on the boundary of the domain")]
    OnBoundary,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("point too close to the boundary for the grid: increase resolution (need d > {needed:.3e}, got {got:.3e})")]
    ResolutionTooCoarse { needed: f64, got: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("case {case} does not apply to {domain}")]
    ScopeMismatch { case: String, domain: String },
    #[error("unknown case id: {0}")]
    UnknownCase(String),
    #[error("insufficient boundary resolution: {0}")]
    InsufficientResolution(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
