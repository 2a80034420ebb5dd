//! The complex-symmetric bridge: tau-symmetric complex-linear operators
//! (`tau S* tau = S`) correspond to self-adjoint antilinear operators via
//! `A = S tau` and `S = A tau`. Through the Weyl-von Neumann decomposition
//! every tau-symmetric operator is within epsilon of a condiagonalizable one,
//! in operator norm (`S ≈ U D tau U* tau`) and in Schatten norm
//! (`S ≈ tau D kappa`). Also houses the relative-state operator of bipartite
//! states, the basis-independent antilinear encoding of a coefficient matrix.

use crate::cmat::{conj_mat, ensure_same_dim, ensure_square_finite, fro, C, CMat};
use crate::conjugation::Conjugation;
use crate::error::{Error, Result};
use crate::op::RealLinearOp;
use crate::schatten::SchattenParams;
use crate::spectra::conjugation_eigenbasis;
use crate::wvn::wvn_decompose;

/// A complex-linear operator `S` together with a conjugation `tau` such that
/// `tau S* tau = S`.
#[derive(Debug, Clone)]
pub struct TauSymmetricOp {
    matrix: CMat,
    tau: Conjugation,
}

impl TauSymmetricOp {
    pub fn new(matrix: CMat, tau: Conjugation, tol: f64) -> Result<Self> {
        ensure_square_finite(&matrix)?;
        ensure_same_dim(matrix.nrows(), tau.dim())?;
        let defect = tau_symmetry_defect(&matrix, &tau)?;
        if defect > tol * fro(&matrix).max(1.0) {
            return Err(Error::NotSymmetric { residual: defect });
        }
        Ok(Self { matrix, tau })
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn tau(&self) -> &Conjugation {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn as_op(&self) -> RealLinearOp {
        RealLinearOp::from_linear(self.matrix.clone()).expect("validated matrix")
    }

    /// `A = S ∘ tau`, antilinear self-adjoint with matrix `S T`.
    pub fn to_antilinear(&self) -> RealLinearOp {
        RealLinearOp::from_antilinear(&self.matrix * self.tau.matrix()).expect("finite product")
    }

    /// `S = A ∘ tau` for self-adjoint antilinear `A`: matrix `M_A conj(T)`,
    /// tau-symmetric by construction. Inverse of [`Self::to_antilinear`]
    /// since `tau^2 = I`.
    pub fn from_antilinear(a: &RealLinearOp, tau: &Conjugation, tol: f64) -> Result<Self> {
        let m = a.require_antilinear(tol)?;
        crate::cmat::ensure_symmetric(m, tol)?;
        ensure_same_dim(a.dim(), tau.dim())?;
        let s = m * conj_mat(tau.matrix());
        Self::new(s, tau.clone(), tol.max(1e-10))
    }
}

/// Defect of `tau ∘ S* ∘ tau = S`, evaluated as a real-linear composition.
fn tau_symmetry_defect(s: &CMat, tau: &Conjugation) -> Result<f64> {
    ensure_same_dim(s.nrows(), tau.dim())?;
    let s_op = RealLinearOp::from_linear(s.clone())?;
    let tau_op = tau.as_op();
    let composed = tau_op.compose(&s_op.adjoint())?.compose(&tau_op)?;
    let diff = composed.sub(&s_op)?;
    Ok((fro(diff.linear_part()).powi(2) + fro(diff.antilinear_part()).powi(2)).sqrt())
}

/// True iff `tau S* tau = S` within `tol`, relative to `max(1, |S|)`.
pub fn is_tau_symmetric(s: &CMat, tau: &Conjugation, tol: f64) -> Result<bool> {
    Ok(tau_symmetry_defect(s, tau)? <= tol * fro(s).max(1.0))
}

/// Approximate condiagonalization `S ≈ U D tau U* tau` in operator norm.
#[derive(Debug, Clone)]
pub struct CondiagApprox {
    /// Unitary mapping the tau-fixed basis onto the diagonalizing basis.
    pub u: CMat,
    /// Nonnegative diagonal values.
    pub d_values: Vec<f64>,
    /// The diagonal operator with respect to tau's fixed basis (a literal
    /// diagonal matrix when tau is the standard conjugation).
    pub d_matrix: CMat,
    /// Operator-norm error of `S - U D tau U* tau`.
    pub op_norm_error: f64,
    /// Schatten-p error of the underlying antilinear approximation; the
    /// operator-norm bound is proved through this one, so both are reported.
    pub schatten_error: f64,
}

/// Runs the decomposition on `A = S tau` and reads off `U e_n = f_n` over
/// tau's fixed basis `{e_n}`, where `{f_n}` diagonalizes the returned `D`.
pub fn approx_condiag(
    s: &TauSymmetricOp,
    epsilon: f64,
    params: &SchattenParams,
    tol: f64,
) -> Result<CondiagApprox> {
    let a = s.to_antilinear();
    let dec = wvn_decompose(&a, epsilon, params, tol)?;
    let e = conjugation_eigenbasis(s.tau())?;
    let f = dec.eigenbasis();
    let d_values = dec.eigenvalues();
    let n = s.dim();
    let u = &f * e.adjoint();
    let mut d_matrix = CMat::zeros(n, n);
    for (j, &dj) in d_values.iter().enumerate() {
        d_matrix += e.column(j) * e.column(j).adjoint() * C::new(dj, 0.0);
    }
    // real-linear composition U D tau U* tau, never a transpose shortcut
    let tau_op = s.tau().as_op();
    let u_op = RealLinearOp::from_linear(u.clone())?;
    let d_op = RealLinearOp::from_linear(d_matrix.clone())?;
    let composed = u_op
        .compose(&d_op)?
        .compose(&tau_op)?
        .compose(&u_op.adjoint())?
        .compose(&tau_op)?;
    let diff = s.as_op().sub(&composed)?;
    let op_norm_error = diff.operator_norm();
    Ok(CondiagApprox {
        u,
        d_values,
        d_matrix,
        op_norm_error,
        schatten_error: dec.achieved_norm(),
    })
}

/// Approximate factorization `S ≈ tau D kappa` in Schatten-p norm, with
/// `kappa` and `D` diagonalized by the same orthonormal basis.
#[derive(Debug, Clone)]
pub struct FactorApprox {
    pub kappa: Conjugation,
    /// Diagonal with respect to `basis`, nonnegative.
    pub d_matrix: CMat,
    pub d_values: Vec<f64>,
    /// Columns diagonalize both `kappa` and `D`.
    pub basis: CMat,
    /// Schatten-p norm of `tau S - D kappa` (the antilinear difference).
    pub schatten_error: f64,
    /// Operator-norm error of `S - tau D kappa`, reported alongside.
    pub op_norm_error: f64,
}

/// Runs the decomposition on `tau S` (antilinear self-adjoint) and factors
/// the diagonalizable part as `D kappa` over its eigenbasis.
pub fn approx_factor(
    s: &TauSymmetricOp,
    epsilon: f64,
    params: &SchattenParams,
    tol: f64,
) -> Result<FactorApprox> {
    let n = s.dim();
    let m_ts = s.tau().matrix() * conj_mat(s.matrix());
    let a = RealLinearOp::from_antilinear(m_ts)?;
    let dec = wvn_decompose(&a, epsilon, params, tol)?;
    let basis = dec.eigenbasis();
    let d_values = dec.eigenvalues();
    let mut d_matrix = CMat::zeros(n, n);
    for (j, &dj) in d_values.iter().enumerate() {
        d_matrix += basis.column(j) * basis.column(j).adjoint() * C::new(dj, 0.0);
    }
    let kappa = Conjugation::new_unchecked(crate::cmat::symmetrize(&(&basis * basis.transpose())));
    // errors
    let tau_op = s.tau().as_op();
    let d_op = RealLinearOp::from_linear(d_matrix.clone())?;
    let kappa_op = kappa.as_op();
    let composed = tau_op.compose(&d_op)?.compose(&kappa_op)?;
    let diff = s.as_op().sub(&composed)?;
    let op_norm_error = diff.operator_norm();
    // Schatten error of the antilinear difference tau S - D kappa
    let anti_diff = tau_op.compose(&s.as_op())?.sub(&d_op.compose(&kappa_op)?)?;
    let schatten_error = crate::schatten::schatten_norm(&anti_diff, params)?;
    Ok(FactorApprox { kappa, d_matrix, d_values, basis, schatten_error, op_norm_error })
}

/// The relative-state operator of a bipartite coefficient matrix: the unique
/// antilinear `L` with `L f_n = v_n`, where `v_n` is the expansion of the
/// state in the supplied orthonormal second-factor basis (columns of
/// `basis`). The representing matrix is independent of the basis and equals
/// the coefficient matrix.
pub fn relative_state(coefficients: &CMat, basis: &CMat, tol: f64) -> Result<RealLinearOp> {
    let n = ensure_square_finite(coefficients)?;
    if basis.nrows() != n || basis.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: basis.nrows().max(basis.ncols()) });
    }
    let gram_defect = crate::cmat::unitary_residual(basis);
    if gram_defect > tol {
        return Err(Error::NotOrthonormal { residual: gram_defect });
    }
    // v_n = T conj(f_n); solve M conj(f_n) = v_n for all n
    let v = coefficients * conj_mat(basis);
    let m = v * basis.transpose();
    RealLinearOp::from_antilinear(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::symmetry_residual;
    use crate::sample;

    fn random_tau_symmetric(n: usize, seed: u64) -> TauSymmetricOp {
        // S = A tau for a random self-adjoint antilinear A
        let tau = sample::conjugation(n, seed);
        let a = sample::selfadjoint_antilinear(n, seed + 1000);
        TauSymmetricOp::from_antilinear(&a, &tau, 1e-8).unwrap()
    }

    #[test]
    fn bridge_standard_cases() {
        // S = I with standard tau gives the standard conjugation
        let s = TauSymmetricOp::new(CMat::identity(3, 3), Conjugation::standard(3), 1e-10).unwrap();
        let a = s.to_antilinear();
        assert!((a.antilinear_part() - CMat::identity(3, 3)).norm() < 1e-14);

        // with standard tau, tau-symmetric means symmetric matrix
        let m = sample::symmetric(4, 3);
        let s = TauSymmetricOp::new(m.clone(), Conjugation::standard(4), 1e-10).unwrap();
        let a = s.to_antilinear();
        assert!((a.antilinear_part() - &m).norm() < 1e-14);
        assert!(symmetry_residual(a.antilinear_part()) < 1e-12);
    }

    #[test]
    fn bridge_round_trips() {
        let s = random_tau_symmetric(5, 7);
        let a = s.to_antilinear();
        let back = TauSymmetricOp::from_antilinear(&a, s.tau(), 1e-8).unwrap();
        assert!((back.matrix() - s.matrix()).norm() <= 1e-12 * fro(s.matrix()).max(1.0));

        let a0 = sample::selfadjoint_antilinear(5, 9);
        let tau = sample::conjugation(5, 11);
        let s0 = TauSymmetricOp::from_antilinear(&a0, &tau, 1e-8).unwrap();
        let a_back = s0.to_antilinear();
        assert!(
            (a_back.antilinear_part() - a0.antilinear_part()).norm()
                <= 1e-12 * fro(a0.antilinear_part()).max(1.0)
        );
    }

    #[test]
    fn self_adjointness_transfer() {
        for seed in 0..5 {
            let s = random_tau_symmetric(4, 20 + seed);
            assert!(symmetry_residual(s.to_antilinear().antilinear_part()) < 1e-10);
        }
    }

    #[test]
    fn tau_symmetry_test_cases() {
        // diagonal wrt standard tau
        let d = CMat::from_diagonal(&crate::cmat::CVec::from_vec(vec![
            C::new(1.0, 2.0),
            C::new(-0.5, 0.3),
        ]));
        assert!(is_tau_symmetric(&d, &Conjugation::standard(2), 1e-10).unwrap());

        // Jordan block is not symmetric wrt standard tau
        let mut j = CMat::zeros(2, 2);
        j[(0, 0)] = C::new(1.0, 0.0);
        j[(0, 1)] = C::new(1.0, 0.0);
        j[(1, 1)] = C::new(1.0, 0.0);
        assert!(!is_tau_symmetric(&j, &Conjugation::standard(2), 1e-10).unwrap());

        // built as tau A: always tau-symmetric
        let s = random_tau_symmetric(5, 31);
        assert!(is_tau_symmetric(s.matrix(), s.tau(), 1e-8).unwrap());
    }

    #[test]
    fn condiag_zero_operator() {
        let tau = sample::conjugation(3, 41);
        let s = TauSymmetricOp::new(CMat::zeros(3, 3), tau, 1e-10).unwrap();
        let params = SchattenParams::new(2.0).unwrap();
        let out = approx_condiag(&s, 0.1, &params, 1e-8).unwrap();
        assert!(out.op_norm_error < 1e-12);
        assert!(out.d_values.iter().all(|&d| d < 1e-12));
    }

    #[test]
    fn condiag_standard_tau_reduces_to_takagi() {
        let m = sample::symmetric(5, 43);
        let s = TauSymmetricOp::new(m, Conjugation::standard(5), 1e-10).unwrap();
        let params = SchattenParams::new(2.0).unwrap();
        let out = approx_condiag(&s, 0.05, &params, 1e-8).unwrap();
        assert!(out.op_norm_error < 0.05);
        // with standard tau, tau U* tau is the transpose: S ≈ U D U^T
        let mut d = CMat::zeros(5, 5);
        for i in 0..5 {
            d[(i, i)] = C::new(out.d_values[i], 0.0);
        }
        // d_matrix should be close to literally diagonal
        let mut offdiag: f64 = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    offdiag = offdiag.max(out.d_matrix[(i, j)].norm());
                }
            }
        }
        assert!(offdiag < 1e-9);
    }

    #[test]
    fn condiag_random_meets_epsilon() {
        let params = SchattenParams::new(2.0).unwrap();
        for seed in 0..3 {
            let s = random_tau_symmetric(6, 50 + seed);
            let out = approx_condiag(&s, 0.05, &params, 1e-8).unwrap();
            assert!(out.op_norm_error < 0.05, "error {}", out.op_norm_error);
            assert!(crate::cmat::unitary_residual(&out.u) < 1e-9);
            assert!(out.schatten_error < 0.05);
        }
    }

    #[test]
    fn condiag_error_weakly_decreasing_in_epsilon() {
        let s = random_tau_symmetric(5, 140);
        let params = SchattenParams::new(2.0).unwrap();
        let loose = approx_condiag(&s, 0.1, &params, 1e-8).unwrap();
        let tight = approx_condiag(&s, 0.01, &params, 1e-8).unwrap();
        assert!(tight.op_norm_error <= loose.op_norm_error + 1e-12);
    }

    #[test]
    fn tau_u_star_tau_is_transpose_for_standard_tau() {
        let u = sample::unitary(4, 61);
        let tau_op = Conjugation::standard(4).as_op();
        let u_op = RealLinearOp::from_linear(u.clone()).unwrap();
        let composed = tau_op.compose(&u_op.adjoint()).unwrap().compose(&tau_op).unwrap();
        assert!((composed.linear_part() - u.transpose()).norm() < 1e-12);
        assert!(fro(composed.antilinear_part()) < 1e-14);
    }

    #[test]
    fn factor_identity_case() {
        // S with tau S = standard conjugation: S = T_tau, D = I, kappa = standard
        let tau = sample::conjugation(4, 71);
        let s = TauSymmetricOp::new(tau.matrix().clone(), tau.clone(), 1e-8).unwrap();
        let params = SchattenParams::new(2.0).unwrap();
        let out = approx_factor(&s, 0.1, &params, 1e-8).unwrap();
        assert!(out.schatten_error < 1e-10);
        assert!(out.d_values.iter().all(|&d| (d - 1.0).abs() < 1e-10));
        out.kappa.validate(1e-9).unwrap();
    }

    #[test]
    fn factor_random_meets_epsilon() {
        let params = SchattenParams::new(2.0).unwrap();
        for seed in 0..3 {
            let s = random_tau_symmetric(6, 80 + seed);
            let out = approx_factor(&s, 0.05, &params, 1e-8).unwrap();
            assert!(out.schatten_error < 0.05);
            // kappa and D share the returned basis
            out.kappa.validate(1e-9).unwrap();
            for j in 0..6 {
                let b_j = out.basis.column(j).into_owned();
                assert!((out.kappa.apply(&b_j) - &b_j).norm() < 1e-9);
                let db = &out.d_matrix * &b_j;
                assert!((db - &b_j * C::new(out.d_values[j], 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn factor_zero_operator() {
        let tau = sample::conjugation(3, 91);
        let s = TauSymmetricOp::new(CMat::zeros(3, 3), tau, 1e-10).unwrap();
        let params = SchattenParams::new(2.0).unwrap();
        let out = approx_factor(&s, 0.1, &params, 1e-8).unwrap();
        assert!(out.schatten_error < 1e-12);
        assert!(out.d_values.iter().all(|&d| d < 1e-12));
        out.kappa.validate(1e-9).unwrap();
    }

    #[test]
    fn relative_state_standard_and_rank_one() {
        let t = sample::ginibre(4, 101);
        let l = relative_state(&t, &CMat::identity(4, 4), 1e-10).unwrap();
        assert!((l.antilinear_part() - &t).norm() < 1e-12);

        // rank-one state v (x) e_1: L e_1 = v, L e_k = 0 otherwise
        let v = sample::ginibre(4, 102).column(0).into_owned();
        let mut t = CMat::zeros(4, 4);
        t.set_column(0, &v);
        let l = relative_state(&t, &CMat::identity(4, 4), 1e-10).unwrap();
        let mut e1 = crate::cmat::CVec::zeros(4);
        e1[0] = C::new(1.0, 0.0);
        assert!((l.apply(&e1).unwrap() - &v).norm() < 1e-12);
        let mut e2 = crate::cmat::CVec::zeros(4);
        e2[1] = C::new(1.0, 0.0);
        assert!(l.apply(&e2).unwrap().norm() < 1e-12);
    }

    #[test]
    fn relative_state_basis_independence() {
        let t = sample::ginibre(5, 111);
        let reference = relative_state(&t, &CMat::identity(5, 5), 1e-10).unwrap();
        for seed in 0..20 {
            let basis = sample::unitary(5, 200 + seed);
            let l = relative_state(&t, &basis, 1e-10).unwrap();
            assert!(
                (l.antilinear_part() - reference.antilinear_part()).norm() < 1e-10,
                "basis dependence detected"
            );
            assert!((l.antilinear_part() - &t).norm() < 1e-10);
        }
    }

    #[test]
    fn relative_state_rejects_bad_basis() {
        let t = sample::ginibre(3, 121);
        let basis = sample::ginibre(3, 122);
        assert!(matches!(
            relative_state(&t, &basis, 1e-10),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
