//! Polar form `A = |A| tau = tau |A|` of self-adjoint antilinear operators
//! and the atomic antilinear spectral measure `F(M) = E(M) tau` with
//! reconstruction `A = sum_i lambda_i F({i})`.

use crate::cmat::{
    conj_mat, ensure_square_finite, hermitian_residual, hermitize, symmetrize, C, CMat,
};
use crate::conjugation::Conjugation;
use crate::error::{Error, Result};
use crate::linalg::{cluster_descending, eigh};
use crate::op::RealLinearOp;
use crate::projection::AntilinearProjection;
use crate::takagi::takagi;
use crate::tolerance::ToleranceConfig;
use std::collections::BTreeSet;

/// `A = H tau` with `H = |A|` Hermitian PSD and `tau` a unitary conjugation
/// commuting with `H`.
#[derive(Debug, Clone)]
pub struct PolarForm {
    modulus: CMat,
    tau: Conjugation,
}

impl PolarForm {
    pub fn modulus(&self) -> &CMat {
        &self.modulus
    }

    pub fn tau(&self) -> &Conjugation {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.modulus.nrows()
    }
}

/// Hermitian PSD square root. Eigenvalue dust in `[-tol*|H|, 0)` is clamped
/// to zero; materially negative input is rejected.
pub fn sqrt_psd(h: &CMat, tol: f64) -> Result<CMat> {
    ensure_square_finite(h)?;
    let herm = hermitian_residual(h);
    if herm > tol {
        return Err(Error::NotHermitian { residual: herm });
    }
    let (w, q) = eigh(h)?;
    let scale = w.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let floor = -tol * scale.max(1.0);
    let mut d = CMat::zeros(w.len(), w.len());
    for (i, &wi) in w.iter().enumerate() {
        if wi < floor {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: wi });
        }
        d[(i, i)] = C::new(wi.max(0.0).sqrt(), 0.0);
    }
    Ok(hermitize(&(&q * d * q.adjoint())))
}

/// Polar decomposition of a self-adjoint antilinear operator. From the Takagi
/// factorization `M = U diag(d) U^T`: `|A| = U diag(d) U^H` and
/// `tau = U U^T`, which fixes the orthonormal basis `U` and acts on `ker(A)`
/// as the conjugation with respect to the kernel columns of `U`.
pub fn polar(a: &RealLinearOp, tol: f64) -> Result<PolarForm> {
    let m = a.require_antilinear(tol)?;
    let fact = takagi(m, tol)?;
    let n = fact.dim();
    let u = fact.u();
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = C::new(fact.values()[i], 0.0);
    }
    let modulus = hermitize(&(u * d * u.adjoint()));
    let tau = Conjugation::new_unchecked(symmetrize(&(u * u.transpose())));
    Ok(PolarForm { modulus, tau })
}

/// One atom of the spectral measure: an eigenvalue cluster of `|A|` and its
/// Hermitian spectral projection.
#[derive(Debug, Clone)]
pub struct SpectralAtom {
    pub lambda: f64,
    pub projection: CMat,
}

/// Atomic antilinear spectral measure: `F(M) = E(M) tau` over subsets of the
/// atoms. Finite dimension makes the measure purely atomic, so Borel sets are
/// realized as index sets.
#[derive(Debug, Clone)]
pub struct SpectralMeasure {
    atoms: Vec<SpectralAtom>,
    tau: Conjugation,
}

impl SpectralMeasure {
    pub fn atoms(&self) -> &[SpectralAtom] {
        &self.atoms
    }

    pub fn tau(&self) -> &Conjugation {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.tau.dim()
    }

    /// `F(M) = E(M) tau` for an index set `M`: an antilinear projection with
    /// range projection `E(M) = sum_{i in M} E_i`. Duplicate indices are
    /// collapsed (set semantics).
    pub fn measure_of(&self, indices: &[usize]) -> Result<AntilinearProjection> {
        let n = self.dim();
        let set: BTreeSet<usize> = indices.iter().cloned().collect();
        let mut e = CMat::zeros(n, n);
        for &i in &set {
            if i >= self.atoms.len() {
                return Err(Error::AtomIndexOutOfRange { index: i, len: self.atoms.len() });
            }
            e += &self.atoms[i].projection;
        }
        let matrix = &e * self.tau.matrix();
        Ok(AntilinearProjection::new_unchecked(symmetrize(&matrix), hermitize(&e)))
    }

    /// `sum_i lambda_i E_i tau`, the reconstruction of the source operator.
    pub fn reconstruct(&self) -> RealLinearOp {
        let n = self.dim();
        let mut h = CMat::zeros(n, n);
        for atom in &self.atoms {
            h += &atom.projection * C::new(atom.lambda, 0.0);
        }
        let m = symmetrize(&(&h * self.tau.matrix()));
        RealLinearOp::from_antilinear(m).expect("finite by construction")
    }
}

/// Builds the spectral measure of a self-adjoint antilinear operator. Atoms
/// are single-linkage clusters of the eigenvalues of `|A|` with relative gap
/// `cluster_tol`; each atom's projection is the sum of the Takagi eigenvector
/// projectors, and `tau` is the polar conjugation.
pub fn spectral_measure(a: &RealLinearOp, cfg: &ToleranceConfig) -> Result<SpectralMeasure> {
    let m = a.require_antilinear(cfg.validation_tol())?;
    let fact = takagi(m, cfg.validation_tol())?;
    let u = fact.u();
    let d = fact.values();
    let scale = d.first().cloned().unwrap_or(0.0).max(1e-300);
    let mut atoms = Vec::new();
    for cl in cluster_descending(d, cfg.cluster_tol() * scale) {
        let k = cl.len();
        let cols = u.columns(cl.start, k);
        let projection = hermitize(&(cols * cols.adjoint()));
        let lambda = d[cl.clone()].iter().sum::<f64>() / k as f64;
        atoms.push(SpectralAtom { lambda, projection });
    }
    let tau = Conjugation::new_unchecked(symmetrize(&(u * u.transpose())));
    Ok(SpectralMeasure { atoms, tau })
}

/// Commutation residual `|E tau - tau conj(E)|` of a projection with a
/// conjugation (both as matrices); zero when `E tau = tau E` as operators.
pub fn commutation_residual(e: &CMat, tau: &Conjugation) -> f64 {
    (e * tau.matrix() - tau.matrix() * conj_mat(e)).norm()
}
