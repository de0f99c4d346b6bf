//! Configurable tolerances with their defaults.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Allowed deviation of `|u|` from 1 for fields flagged unit.
    pub unit_tol: f64,
    /// Minimum distance (in units of `h`) between a weak-pairing support and the grid boundary.
    pub support_margin: f64,
    /// Gagliardo sums skip pairs closer than this many grid spacings.
    pub near_diagonal_cut: f64,
    /// Intersection cluster diameter for vortex detection, in units of `h`.
    pub cluster_tol: f64,
    /// Largest fit residual, in units of `h`, accepted for a vortex verdict.
    pub vortex_residual: f64,
    /// Relative slack on the `1/d` Lipschitz alternative.
    pub lipschitz_slack: f64,
    /// Winding number rounding tolerance.
    pub winding_tol: f64,
    /// Residual tolerance for Burgers verdicts (absolute).
    pub burgers_residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unit_tol: 1e-12,
            support_margin: 2.0,
            near_diagonal_cut: 1.0,
            cluster_tol: 4.0,
            vortex_residual: 5.0,
            lipschitz_slack: 0.1,
            winding_tol: 1e-6,
            burgers_residual_tol: 2e-3,
        }
    }
}
