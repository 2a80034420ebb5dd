//! Spectrum membership for real-linear operators and the constructive
//! facts about conjugations: the full unit circle as point spectrum, a fixed
//! orthonormal eigenbasis, and the unitary transfer between two conjugations.

use crate::cmat::{conj_mat, ensure_same_dim, C, CMat, CVec};
use crate::conjugation::Conjugation;
use crate::error::{Error, Result};
use crate::linalg::singular_values_real;
use crate::op::RealLinearOp;
use crate::takagi::takagi;

/// A membership query: is `lambda` in the spectrum, decided at tolerance
/// `tol` on the smallest singular value of the realified shift?
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumQuery {
    lambda: C,
    tol: f64,
}

impl SpectrumQuery {
    pub fn new(lambda: C, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        Ok(Self { lambda, tol })
    }

    pub fn lambda(&self) -> C {
        self.lambda
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// True iff the smallest singular value of `realify(op - lambda)` is below
/// `tol * max(1, |op|)`. In finite dimension this decides the whole spectrum,
/// which coincides with the point spectrum.
pub fn in_spectrum(op: &RealLinearOp, q: &SpectrumQuery) -> bool {
    let shifted = op.shift(q.lambda);
    let s = singular_values_real(&shifted.realify()).expect("real SVD of finite matrix");
    let smallest = s.last().cloned().unwrap_or(0.0);
    smallest < q.tol * op.operator_norm().max(1.0)
}

/// For a purely antilinear operator the spectrum is circularly symmetric:
/// checks `in_spectrum(op, e^{i theta} lambda)` for every supplied phase.
pub fn circular_symmetry_check(
    op: &RealLinearOp,
    lambda: C,
    phases: &[f64],
    tol: f64,
) -> Result<bool> {
    op.require_antilinear(tol)?;
    for &theta in phases {
        let q = SpectrumQuery::new(lambda * C::from_polar(1.0, theta), tol)?;
        if !in_spectrum(op, &q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orthonormal basis `{e_n}` with `kappa e_n = e_n`, as matrix columns.
///
/// Computed from the Takagi factorization `T = U U^T` of the symmetric
/// unitary matrix of `kappa`; the columns of `U` are the fixed vectors. The
/// 1e-10 fixed-point residual holds for conjugations that are unitary to
/// machine precision; an input that merely passes the validation tolerance
/// cannot beat its own unitarity defect.
pub fn conjugation_eigenbasis(kappa: &Conjugation) -> Result<CMat> {
    let fact = takagi(kappa.matrix(), 1e-6)?;
    Ok(fact.u().clone())
}

/// A unit vector `v` with `kappa v = e^{i theta} v`: the half-phase rotation
/// `e^{-i theta / 2} e_1` of a fixed vector.
pub fn eigvec_for_phase(kappa: &Conjugation, theta: f64) -> Result<CVec> {
    let basis = conjugation_eigenbasis(kappa)?;
    let e1 = basis.column(0).into_owned();
    Ok(e1 * C::from_polar(1.0, -theta / 2.0))
}

/// A complex unitary `U` with `tau = U* kappa U`, i.e. the matrix identity
/// `T_tau = U^H T_kappa conj(U)`: maps the fixed basis of `tau` onto the
/// fixed basis of `kappa`.
pub fn conjugation_transfer(tau: &Conjugation, kappa: &Conjugation) -> Result<CMat> {
    ensure_same_dim(tau.dim(), kappa.dim())?;
    let e = conjugation_eigenbasis(tau)?;
    let f = conjugation_eigenbasis(kappa)?;
    Ok(f * e.adjoint())
}

/// Residual of the transfer identity `T_tau = U^H T_kappa conj(U)`.
pub fn transfer_residual(tau: &Conjugation, kappa: &Conjugation, u: &CMat) -> f64 {
    (tau.matrix() - u.adjoint() * kappa.matrix() * conj_mat(u)).norm()
}
