//! Error types shared across the crate.

/// Errors raised by series evaluation, quadrature, and operator application.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A series reached its term budget before the tail dropped below the
    /// requested relative tolerance.
    #[error("series did not converge within {max_terms} terms (last relative term {last_rel:.3e})")]
    NonConvergence { max_terms: usize, last_rel: f64 },

    /// Adaptive quadrature exhausted its subdivision budget without meeting
    /// the requested tolerance.
    #[error("quadrature failed after {intervals} subdivisions (error estimate {error_estimate:.3e}, tolerance {tolerance:.3e})")]
    QuadratureFailure {
        intervals: usize,
        error_estimate: f64,
        tolerance: f64,
    },

    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A target function exceeded its declared growth envelope on an
    /// evaluated node by more than 10%.
    #[error("growth violation at t = {t}: |f(t)| = {actual:.6e} exceeds declared envelope {declared:.6e}")]
    GrowthViolation { t: f64, actual: f64, declared: f64 },

    /// An invalid parameter bundle (negative parameter, zero operator index).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
