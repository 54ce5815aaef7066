use alloc::string::String;

/// Errors raised by the algebraic layers, the closed-form constructions and
/// the billiard simulator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("undefined root set: the zero polynomial has no isolated roots")]
    UndefinedRootSet,

    #[error("invalid ellipsoid: {0}")]
    InvalidEllipsoid(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular caustic: lambda_{index} coincides with an axis parameter")]
    SingularCaustic { index: usize },

    #[error("no tangent trajectories exist: lambda_{index} lies outside (a_{{k-1}}, a_k) U (a_k, a_{{k+1}})")]
    NoTangentTrajectories { index: usize },

    #[error("non-interlaced elliptic coordinates")]
    NonInterlaced,

    #[error("elliptic period below dimension: m = {m} < n = {n}")]
    EllipticPeriodBelowDimension { m: usize, n: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("degenerate certificate: P(0) = 0")]
    DegenerateCertificate,

    #[error("certificate root structure violated: {0}")]
    RootStructure(String),

    #[error("no convergence after {restarts} starts (best residual {best_residual:e})")]
    NoConvergence { restarts: usize, best_residual: f64 },

    #[error("spurious root: {0}")]
    SpuriousRoot(String),

    #[error("singular trajectory (ruled-quadric): {0}")]
    SingularTrajectory(String),

    #[error("no trajectory of this family: {0}")]
    ComplexRoots(String),

    #[error("construction rejected: {0}")]
    Rejected(String),

    #[error("no such trajectory in this ellipsoid: requires {0}")]
    NoSuchTrajectory(&'static str),

    #[error("existence indeterminate: parameters within tolerance of the threshold {0}")]
    Indeterminate(&'static str),

    #[error("grazing segment: chord is tangent to the boundary")]
    GrazingSegment,

    #[error("tangency extraction failed: fewer than n-1 real caustic parameters")]
    TangencyExtractionFailed,

    #[error("launch failure: {0}")]
    LaunchFailure(String),

    #[error("oscillation count unresolved for elliptic coordinate {0}")]
    OscillationCountUnresolved(usize),

    #[error("winding numbers inconsistent: {0}")]
    WindingInconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
