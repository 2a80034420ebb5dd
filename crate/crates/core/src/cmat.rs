//! Dense complex matrices and the inner-product convention.
//!
//! Everything in this crate works on `DMatrix<Complex64>`. The inner product
//! is linear in the FIRST argument and conjugate-linear in the second:
//! `inner(x, y) = sum_i x_i * conj(y_i)`. With this convention the adjoint of
//! an antilinear operator `x -> M conj(x)` has matrix `M^T`, so self-adjoint
//! antilinear operators are exactly those with symmetric `M`.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C = Complex64;
pub type CMat = DMatrix<C>;
pub type CVec = DVector<C>;
pub type RMat = DMatrix<f64>;

/// Inner product, linear in the first argument.
pub fn inner(x: &CVec, y: &CVec) -> C {
    y.dotc(x)
}

/// Entrywise conjugate.
pub fn conj_mat(a: &CMat) -> CMat {
    a.map(|z| z.conj())
}

pub fn conj_vec(v: &CVec) -> CVec {
    v.map(|z| z.conj())
}

/// Frobenius norm.
pub fn fro(a: &CMat) -> f64 {
    a.norm()
}

/// All entries finite.
pub fn is_finite(a: &CMat) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Validates a square matrix with finite entries; returns its dimension.
pub fn ensure_square_finite(a: &CMat) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    if a.nrows() == 0 {
        return Err(Error::Empty("matrix must have positive dimension"));
    }
    if !is_finite(a) {
        return Err(Error::NonFinite);
    }
    Ok(a.nrows())
}

/// Relative symmetry defect |A - A^T| / max(1, |A|).
pub fn symmetry_residual(a: &CMat) -> f64 {
    (a - a.transpose()).norm() / fro(a).max(1.0)
}

/// Relative Hermitian defect |A - A^H| / max(1, |A|).
pub fn hermitian_residual(a: &CMat) -> f64 {
    (a - a.adjoint()).norm() / fro(a).max(1.0)
}

/// |A^H A - I|.
pub fn unitary_residual(a: &CMat) -> f64 {
    let n = a.nrows();
    (a.adjoint() * a - CMat::identity(n, n)).norm()
}

pub fn ensure_symmetric(a: &CMat, tol: f64) -> Result<()> {
    let r = symmetry_residual(a);
    if r > tol {
        return Err(Error::NotSymmetric { residual: r });
    }
    Ok(())
}

pub fn ensure_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, got: b });
    }
    Ok(())
}

/// (A + A^T)/2.
pub fn symmetrize(a: &CMat) -> CMat {
    (a + a.transpose()) * C::new(0.5, 0.0)
}

/// (A + A^H)/2.
pub fn hermitize(a: &CMat) -> CMat {
    (a + a.adjoint()) * C::new(0.5, 0.0)
}

/// Unit vector fixed by `x -> t conj(x)` in the real-linear span of `v`:
/// the larger of `v + t conj(v)` and `i(v - t conj(v))`, normalized. Their
/// squared norms sum to `4|v|^2`, so one of them always survives.
pub(crate) fn refix(v: &CVec, t: &CMat) -> CVec {
    let tv = t * conj_vec(v);
    let plus = v + &tv;
    let minus = (v - &tv) * C::new(0.0, 1.0);
    let g = if plus.norm() >= minus.norm() { plus } else { minus };
    let norm = g.norm();
    &g / C::new(norm, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_is_linear_in_first() {
        let x = CVec::from_vec(vec![C::new(1.0, 2.0), C::new(0.0, -1.0)]);
        let y = CVec::from_vec(vec![C::new(3.0, 0.0), C::new(0.0, 1.0)]);
        let lhs = inner(&(&x * C::new(0.0, 2.0)), &y);
        assert!((lhs - C::new(0.0, 2.0) * inner(&x, &y)).norm() < 1e-15);
        // conjugate symmetry
        assert!((inner(&x, &y) - inner(&y, &x).conj()).norm() < 1e-15);
    }

    #[test]
    fn square_finite_checks() {
        let a = CMat::identity(2, 3);
        assert!(matches!(ensure_square_finite(&a), Err(Error::NotSquare { .. })));
        let mut b = CMat::identity(2, 2);
        b[(0, 1)] = C::new(f64::NAN, 0.0);
        assert!(matches!(ensure_square_finite(&b), Err(Error::NonFinite)));
        assert_eq!(ensure_square_finite(&CMat::identity(4, 4)).unwrap(), 4);
    }
}
