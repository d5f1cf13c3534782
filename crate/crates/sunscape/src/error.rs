use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not skew-Hermitian (residual {residual:.3e})")]
    NotSkewHermitian { residual: f64 },

    #[error("matrix is not traceless (|tr| = {trace_abs:.3e})")]
    NotTraceless { trace_abs: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("determinant is not 1 (|det - 1| = {residual:.3e})")]
    NotSpecialUnitary { residual: f64 },

    #[error("det U is too close to -1: the stereographic chart from the West is undefined there")]
    WestPole,

    #[error("not a regular point of the constraints (Gram condition {cond:.3e})")]
    NotRegularPoint { cond: f64 },

    #[error("direction is not tangent to the constraints (pairing {pairing:.3e})")]
    NotTangent { pairing: f64 },

    #[error("point is not critical (residual {residual:.3e} > tol {tol:.3e})")]
    NotCritical { residual: f64, tol: f64 },

    #[error("eigenvalue clustering is ambiguous; point does not match any catalog family")]
    AmbiguousMatch,

    #[error("ambient gradient is malformed: grad * U^dagger is not skew-Hermitian (residual {residual:.3e})")]
    MalformedGradient { residual: f64 },

    #[error("line search failed: step size underflow below {0:.3e}")]
    LineSearchFailure(f64),

    #[error("a concrete mu in [-2, 2] is required to materialize a continuum family")]
    MissingMu,

    #[error("mu = {0} is outside [-2, 2]")]
    MuOutOfRange(f64),

    #[error("finite-difference step h = {0:.3e} is outside the admissible range [{1:.0e}, {2:.0e}]")]
    BadStepSize(f64, f64, f64),

    #[error("classification requires a target in SU(N); |det A - 1| = {residual:.3e}")]
    TargetNotSpecialUnitary { residual: f64 },

    #[error("materialized point violates catalog invariants: {detail}")]
    CatalogInvariant { detail: String },

    #[error("matrix contains non-finite entries")]
    NonFiniteEntries,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
