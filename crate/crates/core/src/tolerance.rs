//! Floating-point comparison tolerances shared by every module.

/// Absolute tolerance for reconstructions (polar round trips, inverses,
/// refitting a probability from its phase).
pub const RECONSTRUCTION: f64 = 1e-10;

/// Slack allowed when deciding whether a floating-point result lies in
/// `[0, 1]` or whether `|λ| = 1`. Values within this slack of a boundary are
/// snapped onto it; anything further out is an error.
pub const PROBABILITY: f64 = 1e-12;

/// Slack for stochasticity checks (row sums, prior sums).
pub const STOCHASTIC: f64 = 1e-12;

/// Accepts `value` as a probability, snapping rounding noise at 0 and 1.
pub(crate) fn snap_probability(value: f64) -> Option<f64> {
    if !value.is_finite() {
        return None;
    }
    if (-PROBABILITY..0.0).contains(&value) {
        Some(0.0)
    } else if value > 1.0 && value <= 1.0 + PROBABILITY {
        Some(1.0)
    } else if (0.0..=1.0).contains(&value) {
        Some(value)
    } else {
        None
    }
}
