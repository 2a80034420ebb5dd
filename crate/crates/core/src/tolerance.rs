//! Validation and clustering tolerances.

use crate::error::{Error, Result};

pub const DEFAULT_VALIDATION_TOL: f64 = 1e-8;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Relative tolerances used by constructors (`validation_tol`) and by
/// eigenvalue clustering (`cluster_tol`). Both must lie in (0, 1e-2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    validation_tol: f64,
    cluster_tol: f64,
}

impl ToleranceConfig {
    pub fn new(validation_tol: f64, cluster_tol: f64) -> Result<Self> {
        for t in [validation_tol, cluster_tol] {
            if !(t > 0.0 && t <= 1e-2) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        Ok(Self { validation_tol, cluster_tol })
    }

    pub fn validation_tol(&self) -> f64 {
        self.validation_tol
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { validation_tol: DEFAULT_VALIDATION_TOL, cluster_tol: DEFAULT_CLUSTER_TOL }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(ToleranceConfig::new(0.0, 1e-8).is_err());
        assert!(ToleranceConfig::new(1e-8, 0.1).is_err());
        assert!(ToleranceConfig::new(-1e-9, 1e-8).is_err());
        assert!(ToleranceConfig::new(1e-2, 1e-2).is_ok());
    }
}
