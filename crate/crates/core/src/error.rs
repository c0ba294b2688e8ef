//! Shared error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain on which an operation is defined.
    #[error("domain error in {op}: {message}")]
    Domain { op: &'static str, message: String },

    /// A requested moment order is at or above the tail index, so the
    /// moment is infinite.
    #[error("infinite moment: p = {p} >= tail index {alpha}")]
    InfiniteMoment { p: f64, alpha: f64 },

    /// A structural invariant of a type was violated at runtime
    /// (e.g. a non-monotone survival function detected during bisection).
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// A tail construction failed its hypotheses (e.g. epsilon exceeds the
    /// tail index, or a gamma cap violation).
    #[error("construction error: {0}")]
    Construction(String),

    /// A theorem hypothesis does not hold for the supplied inputs.
    #[error("hypothesis not satisfied in {op}: {message}")]
    Hypothesis { op: &'static str, message: String },

    /// A verification predicate failed: the measured quantities contradict
    /// what the theorem guarantees. This is a test-failure signal, not a
    /// usage error.
    #[error("theorem violation in {op}: {message}")]
    TheoremViolation { op: &'static str, message: String },

    /// A precondition that must be checked numerically (e.g. log-convexity
    /// on a grid) does not hold.
    #[error("precondition failed in {op}: {message}")]
    Precondition { op: &'static str, message: String },

    /// Quadrature did not converge to the requested tolerance.
    /// Carries the partial value and the achieved error estimate.
    #[error("quadrature tolerance not reached: value {value}, error {error}")]
    QuadratureTolerance { value: f64, error: f64 },

    /// Not enough (or degenerate) data for an estimator.
    #[error("data error: {0}")]
    Data(String),

    /// Malformed input (descriptors, tensors, configs).
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    pub fn domain(op: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            op,
            message: message.into(),
        }
    }
}
