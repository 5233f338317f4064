//! Centralized numeric tolerances.
//!
//! Every comparison threshold used by the library lives here so the
//! accuracy contract is visible in one place and tests can reference the
//! same constants instead of re-inventing magic numbers.

/// Absolute tolerance for parameter-level constraint checks: box bounds of
/// `(t, q1b, q1c)`, failure-probability products, prior normalization.
/// Parameters are accepted if they violate a bound by at most this much and
/// are then clamped onto it.
pub const CONSTRAINT: f64 = 1e-10;

/// Absolute tolerance for linear-algebra identities: unitarity defects,
/// state norms, post-measurement fidelities, inner-product reproduction.
pub const UNITARY: f64 = 1e-12;

/// Residual bound when a quartic root is substituted back into the
/// defining polynomial.
pub const QUARTIC_RESIDUAL: f64 = 1e-9;

/// An eigenvalue of the companion matrix counts as a real root when its
/// imaginary part is below this, and a real root within this distance of
/// the physical interval `[s, 1]` is clamped onto it.
pub const ROOT_IMAG: f64 = 1e-9;

/// Companion-matrix eigenvalues closer to each other than this are treated
/// as one multiple root and replaced by their mean. A defective root of
/// multiplicity `m` scatters the computed eigenvalues by
/// O(machine epsilon^(1/m)) individually — about 1e-5 for the worst case, a
/// triple root — but the scatter is symmetric, so the cluster mean recovers
/// the root to roughly the square of that.
pub const ROOT_CLUSTER: f64 = 1e-4;

/// Absolute parameter tolerance for one-dimensional maximizations.
pub const SEARCH_PARAM: f64 = 1e-12;

/// Iteration cap for one-dimensional maximizations.
pub const SEARCH_MAX_ITER: usize = 200;

/// Interval tolerance for the critical-overlap bisection.
pub const BISECT: f64 = 1e-10;

/// A measurement branch whose vector norm falls below this is treated as
/// numerically empty and must not be selected by sampling.
pub const SECTOR_NORM_FLOOR: f64 = 1e-14;

/// Gram–Schmidt residual below which a candidate basis vector is considered
/// linearly dependent on the span built so far and is skipped.
pub const GS_RESIDUAL_FLOOR: f64 = 1e-8;
