//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building problems, strategies,
/// unitaries, or running the optimizers and simulators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar argument fell outside its admissible closed interval.
    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        /// Name of the offending parameter.
        what: &'static str,
        /// Value that was passed.
        value: f64,
        /// Lower end of the admissible interval.
        min: f64,
        /// Upper end of the admissible interval.
        max: f64,
    },

    /// Arguments are individually in range but jointly violate a model
    /// constraint (failure-probability products, norm conditions, …).
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    /// A computation lost all significance (zero-norm measurement branch,
    /// vanishing denominators, …).
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    /// The interior stationary value never exceeds the boundary value
    /// anywhere in the searched overlap range, so no critical overlap
    /// exists for these priors.
    #[error("no interior/boundary crossing for eta1 = {eta1}")]
    NoCrossing {
        /// Prior of state 1 for which the search was attempted.
        eta1: f64,
    },

    /// The requested quantity is only defined for equal priors.
    #[error("equal priors required, got eta1 = {eta1}")]
    UnsupportedPriors {
        /// Prior of state 1 that was passed.
        eta1: f64,
    },
}
