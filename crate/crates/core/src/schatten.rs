//! Singular values and Schatten p-norms of antilinear operators.
//!
//! The singular values of `x -> M conj(x)` are the eigenvalues of
//! `|A| = (A*A)^{1/2}`, which coincide with the singular values of `M`.

use crate::error::{Error, Result};
use crate::linalg::singular_values_of;
use crate::op::RealLinearOp;

/// Schatten exponent `p` in (1, inf) with its conjugate `q = p/(p-1)`,
/// the pair that drives the decomposition's partition counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchattenParams {
    p: f64,
    q: f64,
}

impl SchattenParams {
    /// Rejects p outside (1, inf); the trace-norm endpoint p = 1 is out of
    /// scope rather than extrapolated.
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidSchattenExponent(p));
        }
        Ok(Self { p, q: p / (p - 1.0) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Singular values of a purely antilinear operator, descending.
pub fn singular_values(a: &RealLinearOp) -> Result<Vec<f64>> {
    let m = a.require_antilinear(1e-12)?;
    singular_values_of(m)
}

/// `(sum_n s_n^p)^{1/p}`.
pub fn schatten_norm(a: &RealLinearOp, params: &SchattenParams) -> Result<f64> {
    let s = singular_values(a)?;
    Ok(p_norm(&s, params.p()))
}

pub(crate) fn p_norm(s: &[f64], p: f64) -> f64 {
    let top = s.first().cloned().unwrap_or(0.0);
    if top <= 0.0 {
        return 0.0;
    }
    // scale out the largest value to avoid overflow for large p
    let sum: f64 = s.iter().map(|&x| (x / top).powf(p)).sum();
    top * sum.powf(1.0 / p)
}

/// Numerical rank: singular values at or below `1e-14 * s_max` count as zero.
pub fn numerical_rank(s: &[f64]) -> usize {
    let top = s.first().cloned().unwrap_or(0.0);
    if top <= 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > 1e-14 * top).count()
}
