use thiserror::Error;

/// Failure modes of the phase-factor pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} is not a power of two >= 2")]
    Sizing(usize),

    #[error("grid size bound {0:e} does not fit in a machine integer")]
    SizingOverflow(f64),

    #[error("grid of size {grid} aliases a Laurent polynomial spanning indices {lo}..={hi}")]
    Aliasing { grid: usize, lo: i64, hi: i64 },

    #[error("argument {0} lies outside [0, 1]")]
    Domain(f64),

    #[error("|f(x)| = {value} >= 1 at quadrature node x = {x}")]
    SingularIntegrand { x: f64, value: f64 },

    #[error("|b| = {value} exceeds 1 - eta = {limit} at grid node {node} of {grid}")]
    MarginViolation {
        node: usize,
        grid: usize,
        value: f64,
        limit: f64,
    },

    #[error("|b| = {value} >= 1 at grid node {node}; log(1 - |b|^2) is not finite")]
    SingularFactorization { node: usize, value: f64 },

    #[error("phase index {k} out of range 0..={d}")]
    IndexOutOfRange { k: usize, d: usize },

    #[error("Cholesky factorization failed at phase {k}: leading minor {minor} has pivot {pivot}")]
    Degeneracy { k: usize, minor: usize, pivot: f64 },

    #[error("invariant violated at phase {k}: {what}")]
    InvariantViolation { k: usize, what: String },

    #[error("phase factor at index {index} equals +-pi/2; tan has a pole")]
    Pole { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: target has d = {target}, phases have d = {phases}")]
    DimensionMismatch { target: usize, phases: usize },

    #[error("target sup-norm estimate {sup} exceeds 1 - eta = {limit}")]
    TargetMargin { sup: f64, limit: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Format(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
