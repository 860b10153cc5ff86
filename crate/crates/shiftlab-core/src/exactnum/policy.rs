/// Numeric tolerances for Float-mode decisions. Ignored (treated as zero)
/// by Exact-mode computations.
#[derive(Debug, Clone)]
pub struct TolerancePolicy {
    /// Relative threshold for singular values / pivots when counting rank.
    pub rank_tol: f64,
    /// Slack allowed below zero for positive-semidefiniteness verdicts.
    pub psd_tol: f64,
    /// Number of unit-circle sample points for symbol positivity scans.
    pub circle_samples: usize,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            rank_tol: 1e-10,
            psd_tol: 1e-10,
            circle_samples: 128,
        }
    }
}

impl TolerancePolicy {
    pub fn with_tol(tol: f64) -> Self {
        TolerancePolicy {
            rank_tol: tol,
            psd_tol: tol,
            ..Default::default()
        }
    }
}
