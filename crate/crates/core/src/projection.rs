//! Antilinear orthogonal projections: antilinear maps acting as a unitary
//! conjugation on a subspace and as zero on its orthogonal complement.
//!
//! For an orthonormal frame `{f_k}` the projection is `x -> sum_k <f_k, x>* ...`
//! realized by the matrix `M_F = sum_k f_k f_k^T` acting through conjugation;
//! its range projection is `P = sum_k f_k f_k^H`. Distinct frames of the same
//! subspace give distinct `M_F` but the same `P`.

use crate::cmat::{conj_mat, conj_vec, fro, is_finite, CMat, CVec};
use crate::error::{Error, Result};
use crate::op::RealLinearOp;
use crate::tolerance::DEFAULT_VALIDATION_TOL;

#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearProjection {
    matrix: CMat,
    range_projection: CMat,
}

impl AntilinearProjection {
    /// Builds the projection determined by an orthonormal frame, supplied as
    /// the columns of an n x k matrix.
    pub fn from_frame(frame: &CMat) -> Result<Self> {
        Self::from_frame_with_tol(frame, DEFAULT_VALIDATION_TOL)
    }

    pub fn from_frame_with_tol(frame: &CMat, tol: f64) -> Result<Self> {
        let (n, k) = (frame.nrows(), frame.ncols());
        if n == 0 {
            return Err(Error::Empty("frame lives in a zero-dimensional space"));
        }
        if k > n {
            return Err(Error::DimensionMismatch { expected: n, got: k });
        }
        if !is_finite(frame) {
            return Err(Error::NonFinite);
        }
        let gram = frame.adjoint() * frame;
        let defect = (&gram - CMat::identity(k, k)).norm();
        if defect > tol {
            return Err(Error::NotOrthonormal { residual: defect });
        }
        let matrix = frame * frame.transpose();
        let range_projection = frame * frame.adjoint();
        Ok(Self { matrix, range_projection })
    }

    pub(crate) fn new_unchecked(matrix: CMat, range_projection: CMat) -> Self {
        Self { matrix, range_projection }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn range_projection(&self) -> &CMat {
        &self.range_projection
    }

    pub fn apply(&self, x: &CVec) -> CVec {
        &self.matrix * conj_vec(x)
    }

    pub fn as_op(&self) -> RealLinearOp {
        RealLinearOp::from_antilinear(self.matrix.clone()).expect("validated matrix")
    }

    /// Checks the defining invariants: `F^2 = P`, `M_F` symmetric, and
    /// `F` zero on the orthocomplement of its range.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.dim();
        let scale = fro(&self.matrix).max(1.0);
        let sq = (&self.matrix * conj_mat(&self.matrix) - &self.range_projection).norm();
        if sq > tol * scale {
            return Err(Error::NotInvolution { residual: sq });
        }
        let sym = (&self.matrix - self.matrix.transpose()).norm();
        if sym > tol * scale {
            return Err(Error::NotSymmetric { residual: sym });
        }
        let complement = CMat::identity(n, n) - &self.range_projection;
        let on_complement = (&self.matrix * conj_mat(&complement)).norm();
        if on_complement > tol * scale {
            return Err(Error::NotOrthonormal { residual: on_complement });
        }
        Ok(())
    }
}
