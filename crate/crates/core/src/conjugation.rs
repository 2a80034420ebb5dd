//! Unitary conjugations: antilinear involutions `x -> T conj(x)` with `T`
//! symmetric unitary.

use crate::cmat::{conj_mat, conj_vec, ensure_square_finite, symmetry_residual, unitary_residual, CMat, CVec};
use crate::error::{Error, Result};
use crate::op::RealLinearOp;
use crate::tolerance::DEFAULT_VALIDATION_TOL;

#[derive(Debug, Clone, PartialEq)]
pub struct Conjugation {
    matrix: CMat,
}

/// The three defining residuals, exposed for diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct ConjugationResiduals {
    /// |T - T^T| / max(1, |T|)
    pub symmetry: f64,
    /// |T^H T - I|
    pub unitarity: f64,
    /// |T conj(T) - I|, i.e. the involution defect of x -> T conj(x)
    pub involution: f64,
}

impl Conjugation {
    pub fn new(matrix: CMat) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_VALIDATION_TOL)
    }

    pub fn with_tol(matrix: CMat, tol: f64) -> Result<Self> {
        ensure_square_finite(&matrix)?;
        let out = Self { matrix };
        out.validate(tol)?;
        Ok(out)
    }

    pub(crate) fn new_unchecked(matrix: CMat) -> Self {
        Self { matrix }
    }

    /// Entrywise complex conjugation, `T = I`.
    pub fn standard(n: usize) -> Self {
        Self { matrix: CMat::identity(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn apply(&self, x: &CVec) -> CVec {
        &self.matrix * conj_vec(x)
    }

    /// A unit vector fixed by this conjugation in the real-linear span of
    /// `v`: whichever of `v + kappa v` and `i(v - kappa v)` is larger, at
    /// least one of which is nonzero for `v != 0`.
    pub fn fix_vector(&self, v: &CVec) -> Result<CVec> {
        if v.norm() <= 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(crate::cmat::refix(v, &self.matrix))
    }

    pub fn as_op(&self) -> RealLinearOp {
        RealLinearOp::from_antilinear(self.matrix.clone()).expect("validated matrix")
    }

    pub fn residuals(&self) -> ConjugationResiduals {
        let n = self.dim();
        let involution = (&self.matrix * conj_mat(&self.matrix) - CMat::identity(n, n)).norm();
        ConjugationResiduals {
            symmetry: symmetry_residual(&self.matrix),
            unitarity: unitary_residual(&self.matrix),
            involution,
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let r = self.residuals();
        if r.symmetry > tol {
            return Err(Error::NotSymmetric { residual: r.symmetry });
        }
        if r.unitarity > tol {
            return Err(Error::NotUnitary { residual: r.unitarity });
        }
        if r.involution > tol {
            return Err(Error::NotInvolution { residual: r.involution });
        }
        Ok(())
    }
}

/// Conjugation residuals of an arbitrary square matrix, for diagnostics on
/// inputs that have not been validated.
pub fn residuals_of(matrix: &CMat) -> ConjugationResiduals {
    Conjugation { matrix: matrix.clone() }.residuals()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::C;
    use crate::sample;

    #[test]
    fn standard_conjugation_validates() {
        let k = Conjugation::standard(4);
        k.validate(1e-14).unwrap();
        let x = CVec::from_vec(vec![C::new(1.0, 2.0); 4]);
        assert!((k.apply(&x) - CVec::from_vec(vec![C::new(1.0, -2.0); 4])).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_symmetric_and_non_unitary() {
        let mut t = CMat::identity(2, 2);
        t[(0, 1)] = C::new(0.5, 0.0);
        assert!(matches!(Conjugation::new(t), Err(Error::NotSymmetric { .. })));
        let t = CMat::identity(2, 2) * C::new(2.0, 0.0);
        assert!(matches!(Conjugation::new(t), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn phase_matrix_is_a_conjugation() {
        // T = diag(e^{i a}) is symmetric unitary and x -> T conj(x) squares to I
        let t = CMat::from_diagonal(&CVec::from_vec(vec![
            C::from_polar(1.0, 0.7),
            C::from_polar(1.0, -2.1),
        ]));
        let k = Conjugation::new(t).unwrap();
        let x = CVec::from_vec(vec![C::new(0.3, -1.0), C::new(2.0, 0.1)]);
        assert!((k.apply(&k.apply(&x)) - &x).norm() < 1e-14);
    }

    #[test]
    fn sampled_conjugation_passes_invariants() {
        for seed in 0..5 {
            let k = sample::conjugation(6, seed);
            k.validate(1e-10).unwrap();
        }
    }
}
