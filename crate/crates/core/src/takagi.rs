//! Takagi factorization `M = U diag(d) U^T` of complex symmetric matrices,
//! the antilinear eigendecomposition built on it, and unitary
//! diagonalization of commuting pairs `N + S` with `N S = S N*`.
//!
//! The factorization is computed from an SVD `M = V Σ W^H`: for singular
//! values with no near-degeneracy, `Z = V^H conj(W)` is diagonal and
//! `U = V Z^{1/2}` finishes the job. Degenerate and clustered singular values
//! are resolved by unitary-congruence Jacobi sweeps on `R = U^H M conj(U)`
//! whose 2x2 kernel is gap-independent, so the reconstruction residual stays
//! at machine level even for exactly repeated singular values.

use crate::cmat::{conj_mat, ensure_same_dim, ensure_square_finite, fro, inner, C, CMat, CVec};
use crate::error::{Error, Result};
use crate::linalg::{cluster_descending, normal_eig, svd, unit_complement};
use crate::op::RealLinearOp;
use crate::tolerance::DEFAULT_CLUSTER_TOL;
use nalgebra::{Matrix2, Vector2};

const MAX_SWEEPS: usize = 60;

/// `M = U diag(d) U^T` with `U` unitary and `d` nonnegative descending.
#[derive(Debug, Clone, PartialEq)]
pub struct TakagiFactorization {
    u: CMat,
    d: Vec<f64>,
}

impl TakagiFactorization {
    pub fn u(&self) -> &CMat {
        &self.u
    }

    /// Singular values, descending.
    pub fn values(&self) -> &[f64] {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// `U diag(d) U^T`.
    pub fn reconstruct(&self) -> CMat {
        let n = self.dim();
        let mut d = CMat::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = C::new(self.d[i], 0.0);
        }
        &self.u * d * self.u.transpose()
    }
}

/// 2x2 Takagi kernel: a unitary `J` with `J^H B conj(J)` diagonal nonnegative,
/// for symmetric `B = [[a, b], [b, c]]`.
///
/// The columns are built as `y ± B conj(y)/ρ` from an eigenvector `y` of
/// `B B^H`; this stays accurate when the two singular values coincide, where
/// the eigenvector direction itself is ill-conditioned.
fn takagi2(a: C, b: C, c: C) -> Matrix2<C> {
    let bm = Matrix2::new(a, b, b, c);
    let g11 = a.norm_sqr() + b.norm_sqr();
    let g22 = b.norm_sqr() + c.norm_sqr();
    let g12 = a * b.conj() + b * c.conj();
    let half_gap = (g11 - g22) / 2.0;
    let disc = (half_gap * half_gap + g12.norm_sqr()).sqrt();
    let l1 = (g11 + g22) / 2.0 + disc;
    if l1 <= 1e-300 {
        return Matrix2::identity();
    }
    let cand1 = Vector2::new(C::new(half_gap + disc, 0.0), g12.conj());
    let cand2 = Vector2::new(g12, C::new(disc - half_gap, 0.0));
    let y = if cand1.norm() >= cand2.norm() { cand1 } else { cand2 };
    let y = if y.norm() * y.norm() <= 1e-30 * l1 {
        Vector2::new(C::new(1.0, 0.0), C::new(0.0, 0.0))
    } else {
        y.normalize()
    };
    let fix = |v: &Vector2<C>| -> Vector2<C> {
        let kv = bm * v.map(|z| z.conj());
        let rho = kv.norm();
        if rho <= 1e-14 * l1.sqrt() {
            return *v; // v is in the kernel; any phase works
        }
        let plus = v + kv / C::new(rho, 0.0);
        let minus = (v - kv / C::new(rho, 0.0)) * C::new(0.0, 1.0);
        let u = if plus.norm() >= minus.norm() { plus } else { minus };
        u.normalize()
    };
    let u1 = fix(&y);
    let y2 = Vector2::new(-u1[1].conj(), u1[0].conj());
    let mut u2 = fix(&y2);
    u2 -= u1 * u1.dotc(&u2);
    let n2 = u2.norm();
    let u2 = if n2 <= 1e-8 { y2 } else { u2 / C::new(n2, 0.0) };
    Matrix2::from_columns(&[u1, u2])
}

/// Jacobi sweeps on `r <- J^H r conj(J)`, accumulating `u <- u J`, until the
/// off-diagonal part of `r` is at machine level. Returns the diagonal
/// magnitudes and the final off-diagonal norm.
fn jacobi_sweeps(m: &CMat, u: &mut CMat) -> (Vec<f64>, f64) {
    let n = m.nrows();
    let scale = fro(m).max(1e-300);
    let mut r = u.adjoint() * m * conj_mat(&*u);
    r = (&r + r.transpose()) * C::new(0.5, 0.0);
    let tol = 1e-13 * scale;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * r[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if r[(p, q)].norm() <= tol / (2.0 * n as f64) {
                    continue;
                }
                let j2 = takagi2(r[(p, p)], r[(p, q)], r[(q, q)]);
                for k in 0..n {
                    let rp = r[(p, k)];
                    let rq = r[(q, k)];
                    r[(p, k)] = j2[(0, 0)].conj() * rp + j2[(1, 0)].conj() * rq;
                    r[(q, k)] = j2[(0, 1)].conj() * rp + j2[(1, 1)].conj() * rq;
                }
                for k in 0..n {
                    let rp = r[(k, p)];
                    let rq = r[(k, q)];
                    r[(k, p)] = rp * j2[(0, 0)].conj() + rq * j2[(1, 0)].conj();
                    r[(k, q)] = rp * j2[(0, 1)].conj() + rq * j2[(1, 1)].conj();
                }
                for k in 0..n {
                    let up = u[(k, p)];
                    let uq = u[(k, q)];
                    u[(k, p)] = up * j2[(0, 0)] + uq * j2[(1, 0)];
                    u[(k, q)] = up * j2[(0, 1)] + uq * j2[(1, 1)];
                }
            }
        }
    }
    // absorb leftover diagonal phases into U
    let mut d = vec![0.0f64; n];
    for j in 0..n {
        let rjj = r[(j, j)];
        d[j] = rjj.norm();
        if d[j] > 0.0 {
            let ph = C::from_polar(1.0, rjj.arg() / 2.0);
            for k in 0..n {
                u[(k, j)] *= ph;
            }
        }
    }
    let mut off = 0.0f64;
    for p in 0..n {
        for q in (p + 1)..n {
            off += 2.0 * r[(p, q)].norm_sqr();
        }
    }
    (d, off.sqrt())
}

/// Takagi factorization of a complex symmetric matrix.
///
/// `tol` is the relative symmetry tolerance on the input. Fails with
/// [`Error::NotSymmetric`] for asymmetric input and [`Error::NoConvergence`]
/// if the sweep phase cannot reach machine-level off-diagonals (not observed
/// in practice; the bound is a guard, never a silent fallback).
pub fn takagi(m: &CMat, tol: f64) -> Result<TakagiFactorization> {
    let n = ensure_square_finite(m)?;
    let sym_defect = crate::cmat::symmetry_residual(m);
    if sym_defect > tol {
        return Err(Error::NotSymmetric { residual: sym_defect });
    }
    let ms = crate::cmat::symmetrize(m);

    // SVD initialization with half-phase correction on well-separated
    // singular values; clusters are left to the sweeps. Should the SVD ever
    // fail to converge, the sweeps alone still get there from the identity.
    let mut u = match svd(&ms) {
        Ok((v, s, w)) => {
            let z = v.adjoint() * conj_mat(&w);
            let scale = s.first().cloned().unwrap_or(0.0).max(1e-300);
            let mut u = v.clone();
            for cl in cluster_descending(&s, DEFAULT_CLUSTER_TOL * scale) {
                if cl.len() == 1 {
                    let i = cl.start;
                    let ph = C::from_polar(1.0, z[(i, i)].arg() / 2.0);
                    for r0 in 0..n {
                        u[(r0, i)] = v[(r0, i)] * ph;
                    }
                }
            }
            u
        }
        Err(_) => CMat::identity(n, n),
    };
    let (d, off) = jacobi_sweeps(&ms, &mut u);
    if off > 1e-11 * fro(&ms).max(1.0) {
        return Err(Error::NoConvergence { residual: off });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].total_cmp(&d[a]));
    let mut u_sorted = CMat::zeros(n, n);
    let mut d_sorted = Vec::with_capacity(n);
    for (c0, &i) in order.iter().enumerate() {
        u_sorted.set_column(c0, &u.column(i));
        d_sorted.push(d[i]);
    }
    let fact = TakagiFactorization { u: u_sorted, d: d_sorted };
    let rec = (&ms - fact.reconstruct()).norm();
    if rec > 1e-10 * fro(&ms).max(1.0) {
        return Err(Error::NoConvergence { residual: rec });
    }
    Ok(fact)
}

/// Orthonormal eigenbasis and nonnegative eigenvalues of a self-adjoint
/// antilinear operator: `A u_j = d_j u_j` with `d_j` descending.
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearEigensystem {
    basis: CMat,
    values: Vec<f64>,
}

impl AntilinearEigensystem {
    /// Eigenvectors as columns.
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }
}

/// Unitary diagonalization of a self-adjoint antilinear operator via Takagi:
/// the basis is the Takagi `U`, the values its singular values.
pub fn antilinear_eig(a: &RealLinearOp, tol: f64) -> Result<AntilinearEigensystem> {
    let m = a.require_antilinear(tol)?;
    let fact = takagi(m, tol)?;
    Ok(AntilinearEigensystem { basis: fact.u, values: fact.d })
}

/// A common eigenvector of a normal `N`, its adjoint, and a commuting
/// self-adjoint antilinear `S` (hypothesis `N S = S N*`, i.e.
/// `N M_S = M_S N^T` for the representing matrices).
///
/// Returns `(z, lambda, r)` with `N z ≈ lambda z`, `S z ≈ r z`, `r >= 0`,
/// `|z| = 1`. The eigenvalue of `N` is chosen from the largest-dimension
/// eigenspace, tie-broken by smallest `|lambda|`, then by smallest principal
/// argument.
pub fn common_eigenvector(
    n_mat: &CMat,
    s: &RealLinearOp,
    tol: f64,
) -> Result<(CVec, C, f64)> {
    let (basis, _lambda, _vals) = invariant_eigenspace(n_mat, s, tol)?;
    // restriction of S to the eigenspace, in the basis coordinates
    let s_w = crate::cmat::symmetrize(&(basis.adjoint() * s.antilinear_part() * conj_mat(&basis)));
    let fact = takagi(&s_w, 1e-6)?;
    let c0 = fact.u.column(0).into_owned();
    let z = &basis * c0;
    let lam = inner(&(n_mat * &z), &z);
    Ok((z, lam, fact.d[0]))
}

/// Validates the hypotheses and returns the selected eigenspace of `N`
/// (orthonormal columns), its eigenvalue, and all eigenvalues of `N`.
fn invariant_eigenspace(
    n_mat: &CMat,
    s: &RealLinearOp,
    tol: f64,
) -> Result<(CMat, C, Vec<C>)> {
    let n = ensure_square_finite(n_mat)?;
    ensure_same_dim(n, s.dim())?;
    let m_s = s.require_antilinear(tol)?;
    crate::cmat::ensure_symmetric(m_s, tol)?;
    let scale_n = fro(n_mat).max(1.0);
    // normality
    let normal_defect =
        (n_mat * n_mat.adjoint() - n_mat.adjoint() * n_mat).norm() / (scale_n * scale_n);
    if normal_defect > tol {
        return Err(Error::HypothesisViolated { residual: normal_defect });
    }
    // N M_S = M_S N^T
    let comm = (n_mat * m_s - m_s * n_mat.transpose()).norm() / (scale_n * fro(m_s).max(1.0));
    if comm > tol {
        return Err(Error::HypothesisViolated { residual: comm });
    }
    let (lambdas, q) = normal_eig(n_mat)?;
    // group eigenvalues in the complex plane (greedy single-linkage)
    let gap = 1e-8 * scale_n;
    let mut assigned = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if assigned[i] != usize::MAX {
            continue;
        }
        let gi = groups.len();
        assigned[i] = gi;
        let mut stack = vec![i];
        let mut members = vec![i];
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if assigned[b] == usize::MAX && (lambdas[a] - lambdas[b]).norm() <= gap {
                    assigned[b] = gi;
                    stack.push(b);
                    members.push(b);
                }
            }
        }
        groups.push(members);
    }
    // largest dimension first; ties by smallest |lambda|, then smallest arg
    let key = |g: &Vec<usize>| {
        let mean = g.iter().map(|&i| lambdas[i]).sum::<C>() / C::new(g.len() as f64, 0.0);
        (g.len(), mean.norm(), mean.arg())
    };
    let mut best = 0;
    for gi in 1..groups.len() {
        let (la, na, aa) = key(&groups[best]);
        let (lb, nb, ab) = key(&groups[gi]);
        let better = lb > la
            || (lb == la && nb < na - 1e-12 * scale_n)
            || (lb == la && (nb - na).abs() <= 1e-12 * scale_n && ab < aa);
        if better {
            best = gi;
        }
    }
    let mut members = groups[best].clone();
    members.sort_unstable();
    let mut basis = CMat::zeros(n, members.len());
    for (c, &i) in members.iter().enumerate() {
        basis.set_column(c, &q.column(i));
    }
    let mean = members.iter().map(|&i| lambdas[i]).sum::<C>() / C::new(members.len() as f64, 0.0);
    Ok((basis, mean, lambdas))
}

/// Joint unitary diagonalization of `A = N + S` for a commuting pair:
/// an orthonormal basis `{e_k}` and pairs `(lambda_k, r_k)` with
/// `A e_k ≈ (lambda_k + r_k) e_k`.
#[derive(Debug, Clone)]
pub struct CommutingPairDiagonalization {
    pub basis: CMat,
    pub pairs: Vec<(C, f64)>,
}

/// Deflation: find a common eigenvector, split off its span, recurse on the
/// orthocomplement. Hypothesis violations at any step are reported.
pub fn diagonalize_commuting_pair(
    n_mat: &CMat,
    s: &RealLinearOp,
    tol: f64,
) -> Result<CommutingPairDiagonalization> {
    let n = ensure_square_finite(n_mat)?;
    ensure_same_dim(n, s.dim())?;
    let mut q_rem = CMat::identity(n, n);
    let mut basis = CMat::zeros(n, n);
    let mut pairs = Vec::with_capacity(n);
    let mut filled = 0;
    while q_rem.ncols() > 0 {
        let n_r = q_rem.adjoint() * n_mat * &q_rem;
        let s_r = crate::cmat::symmetrize(&(q_rem.adjoint() * s.antilinear_part() * conj_mat(&q_rem)));
        let s_r_op = RealLinearOp::from_antilinear(s_r)?;
        // the restriction inherits the hypotheses up to deflation drift
        let (c0, lam, r_val) = common_eigenvector(&n_r, &s_r_op, tol.max(1e-10))?;
        let z = &q_rem * &c0;
        basis.set_column(filled, &z);
        pairs.push((lam, r_val));
        filled += 1;
        if q_rem.ncols() == 1 {
            break;
        }
        let comp = unit_complement(&c0);
        q_rem = &q_rem * comp;
    }
    Ok(CommutingPairDiagonalization { basis, pairs })
}
