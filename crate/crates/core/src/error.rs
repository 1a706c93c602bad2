use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("point violates the chart domain: {0}")]
    DomainViolation(String),

    #[error("matrix is not unimodular: |det - 1| = {defect:e}")]
    NotUnimodular { defect: f64 },

    #[error("commutator leaves the span of the generators (residual {residual:e})")]
    NotInAlgebra { residual: f64 },

    #[error("cubic has three real roots; caller must disambiguate")]
    ThreeRealRoots,

    #[error("unknown chart: {0}")]
    UnknownChart(String),

    #[error("chart {got} incompatible here (expected {expected})")]
    IncompatibleChart { expected: String, got: String },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("metric is numerically singular (condition estimate {cond:e})")]
    SingularMetric { cond: f64 },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("trajectory left the chart domain at t = {t}")]
    LeftDomain { t: f64 },

    #[error("zero vector is not a valid geodesic-vector candidate")]
    ZeroVector,

    #[error("invalid configuration: {0}")]
    Config(String),
}
