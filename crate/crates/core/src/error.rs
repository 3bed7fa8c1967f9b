use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty matrix or spectrum")]
    EmptyMatrix,

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("not Hermitian: max |M_ij - conj(M_ji)| = {0:e}")]
    NotHermitian(f64),

    #[error("trace is not one: got {0}")]
    TraceNotOne(f64),

    #[error("not positive semidefinite: eigenvalue {0:e}")]
    NotPsd(f64),

    #[error("negative spectrum value {0:e}")]
    NegativeValue(f64),

    #[error("spectrum does not sum to one: sum = {0}")]
    NotNormalized(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("r = {r} outside 1..={n}")]
    InvalidR { n: usize, r: usize },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("alpha = {0} outside the allowed range")]
    AlphaOutOfRange(f64),

    #[error("closed-form evaluation capped at n <= {cap} (got n = {n}); use the contour oracle")]
    CapExceeded { n: usize, cap: usize },

    #[error("contour cannot be built: spectrum has no nonzero eigenvalue")]
    DegenerateContour,

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("report invariant violated: {0}")]
    ReportInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
