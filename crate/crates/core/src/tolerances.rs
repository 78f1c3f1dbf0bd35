//! Numerical slack used to turn exact identities into floating-point checks.
//!
//! Every comparison in the suite reads its threshold from [`Tolerances`];
//! the defaults below are the values the acceptance suite is pinned to.

use serde::{Deserialize, Serialize};

/// `‖M†M − I‖_max` for a matrix to count as unitary.
pub const UNITARITY: f64 = 1e-10;
/// Elementwise agreement of algebraically equal vectors (tensor vs. sum forms).
pub const ELEMENTWISE: f64 = 1e-12;
/// Agreement between amplitudes computed along different routes.
pub const AMPLITUDE: f64 = 1e-10;
/// Agreement between probabilities, and the residual mass allowed off the
/// exact outcome.
pub const PROBABILITY: f64 = 1e-10;
/// Deviation of a distribution's total mass from one.
pub const NORMALIZATION: f64 = 1e-9;
/// Agreement between simulated states and their closed forms.
pub const STATE: f64 = 1e-9;
/// Minimum positive margin for a strict inequality to count as strict.
pub const STRICT_MARGIN: f64 = 1e-12;
/// Slack added to an upper bound on a probability.
pub const BOUND_SLACK: f64 = 1e-12;
/// Eigenpair residual `‖U·u − e^{2πiφ}u‖` accepted for an instance.
pub const EIGEN_RESIDUAL: f64 = 1e-9;
/// Residual above which the second register is declared entangled.
pub const ENTANGLEMENT: f64 = 1e-8;
/// Norm deviation accepted for input eigenvectors.
pub const NORM: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub unitarity: f64,
    pub elementwise: f64,
    pub amplitude: f64,
    pub probability: f64,
    pub normalization: f64,
    pub state: f64,
    pub strict_margin: f64,
    pub bound_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: UNITARITY,
            elementwise: ELEMENTWISE,
            amplitude: AMPLITUDE,
            probability: PROBABILITY,
            normalization: NORMALIZATION,
            state: STATE,
            strict_margin: STRICT_MARGIN,
            bound_slack: BOUND_SLACK,
        }
    }
}

impl Tolerances {
    pub fn all_positive(&self) -> bool {
        [
            self.unitarity,
            self.elementwise,
            self.amplitude,
            self.probability,
            self.normalization,
            self.state,
            self.strict_margin,
            self.bound_slack,
        ]
        .iter()
        .all(|&v| v.is_finite() && v > 0.0)
    }
}
