//! Crate-wide error type.

use crate::lp::LpStatus;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A dispersion model with a conductivity term was evaluated at a
    /// non-positive angular frequency.
    #[error("dispersion model with a conductivity term requires omega > 0 (got {0})")]
    NonPositiveFrequency(f64),

    /// A model or input value violates a documented invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A bracket term `1 + A_jj (eps_i - eps_0)/eps_0` of the concentration
    /// factor vanished; the contrast is physically pathological.
    #[error("singular denominator in concentration factor")]
    SingularDenominator,

    /// The measured value lies outside the attainable range of the forward
    /// model: every entry of `u` has the same strict sign, so no volume
    /// fraction vector reproduces the measurement exactly.
    #[error("empty minimizer set: measurement outside the attainable range")]
    EmptyMinimizerSet,

    /// The Charnes-Cooper scale variable collapsed; volume fractions cannot
    /// be recovered from the transformed optimizer.
    #[error("degenerate Charnes-Cooper scale (s = {0})")]
    DegenerateScale(f64),

    /// The sensitivity matrix is numerically singular; the error bound is
    /// undefined.
    #[error("singular sensitivity matrix (sigma_min = {0})")]
    SingularSensitivity(f64),

    /// The LP solver did not return an optimal point for an inversion.
    #[error("measurement infeasible: solver status {0:?}")]
    InfeasibleMeasurement(LpStatus),
}
