//! Internal dense linear-algebra kernels: SVD / Hermitian eigendecomposition
//! wrappers (sorted descending), eigenvalue clustering, joint diagonalization
//! of commuting Hermitian pairs, and orthonormal completions.

use crate::cmat::{hermitize, C, CMat, CVec, RMat};
use crate::error::{Error, Result};

/// SVD `m = U diag(s) V^H` with `s` descending.
pub(crate) fn svd(m: &CMat) -> Result<(CMat, Vec<f64>, CMat)> {
    let svd = m
        .clone()
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or(Error::NoConvergence { residual: f64::NAN })?;
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let (rows, k) = (u.nrows(), order.len());
    let mut us = CMat::zeros(rows, k);
    let mut vs = CMat::zeros(vt.ncols(), k);
    let v = vt.adjoint();
    let mut s = Vec::with_capacity(k);
    for (c, &i) in order.iter().enumerate() {
        us.set_column(c, &u.column(i));
        vs.set_column(c, &v.column(i));
        s.push(svd.singular_values[i]);
    }
    Ok((us, s, vs))
}

/// Singular values of the matrix, descending.
pub(crate) fn singular_values_of(m: &CMat) -> Result<Vec<f64>> {
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, 0)
        .ok_or(Error::NoConvergence { residual: f64::NAN })?;
    let mut s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Singular values of a real matrix, descending.
pub(crate) fn singular_values_real(m: &RMat) -> Result<Vec<f64>> {
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, 0)
        .ok_or(Error::NoConvergence { residual: f64::NAN })?;
    let mut s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// The input is Hermitized first; callers validate Hermiticity when required.
pub(crate) fn eigh(h: &CMat) -> Result<(Vec<f64>, CMat)> {
    let hh = hermitize(h);
    let se = nalgebra::SymmetricEigen::try_new(hh, f64::EPSILON, 0)
        .ok_or(Error::NoConvergence { residual: f64::NAN })?;
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));
    let mut q = CMat::zeros(n, n);
    let mut w = Vec::with_capacity(n);
    for (c, &i) in order.iter().enumerate() {
        q.set_column(c, &se.eigenvectors.column(i));
        w.push(se.eigenvalues[i]);
    }
    Ok((w, q))
}

/// Splits a descending sequence into single-linkage clusters: a new cluster
/// starts wherever consecutive values differ by more than `gap`.
pub(crate) fn cluster_descending(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let n = values.len();
    if n == 0 {
        return out;
    }
    let mut start = 0;
    for i in 1..n {
        if values[i - 1] - values[i] > gap {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..n);
    out
}

/// Eigendecomposition of a normal matrix via joint diagonalization of its
/// commuting Hermitian parts `(N + N^H)/2` and `(N - N^H)/(2i)`.
/// Returns `(eigenvalues, Q)` with `Q` unitary and `N ≈ Q diag(λ) Q^H`;
/// eigenvalue order follows the real-part stage (descending) refined by the
/// imaginary part within clusters.
pub(crate) fn normal_eig(n_mat: &CMat) -> Result<(Vec<C>, CMat)> {
    let n = n_mat.nrows();
    let h1 = hermitize(n_mat);
    let h2 = (n_mat - n_mat.adjoint()) * C::new(0.0, -0.5);
    let scale = n_mat.norm().max(1.0);
    let (w1, q1) = eigh(&h1)?;
    let mut q = q1;
    let clusters = cluster_descending(&w1, 1e-8 * scale);
    for cl in clusters {
        let k = cl.len();
        if k <= 1 {
            continue;
        }
        let qc = q.columns(cl.start, k).into_owned();
        let sub = qc.adjoint() * &h2 * &qc;
        let (_w2, q2) = eigh(&sub)?;
        let rot = qc * q2;
        q.view_mut((0, cl.start), (n, k)).copy_from(&rot);
    }
    let t = q.adjoint() * n_mat * &q;
    let lambdas = (0..n).map(|i| t[(i, i)]).collect();
    Ok((lambdas, q))
}

/// Orthonormal basis of the orthogonal complement of a unit vector, as the
/// trailing columns of a Householder reflection mapping `c` onto `e_1`.
pub(crate) fn unit_complement(c: &CVec) -> CMat {
    let n = c.len();
    debug_assert!(n >= 1);
    let mut out = CMat::zeros(n, n - 1);
    // reflector v = c - alpha e1 with alpha = phase(c_0), chosen to avoid cancellation
    let alpha = if c[0].norm() > 0.0 { c[0] / c[0].norm() } else { C::new(1.0, 0.0) };
    let mut v = c.clone();
    v[0] -= alpha;
    let vnorm2 = v.norm_squared();
    if vnorm2 <= 1e-60 {
        // c is (a phase times) e1 already
        for k in 1..n {
            let mut col = CVec::zeros(n);
            col[k] = C::new(1.0, 0.0);
            out.set_column(k - 1, &col);
        }
        return out;
    }
    // columns 2..n of H = I - 2 v v^H / |v|^2 (H is Hermitian unitary, H c = alpha e1)
    for k in 1..n {
        let coef = v[k].conj() * C::new(2.0 / vnorm2, 0.0);
        let mut col = CVec::zeros(n);
        col[k] = C::new(1.0, 0.0);
        for r in 0..n {
            col[r] -= v[r] * coef;
        }
        out.set_column(k - 1, &col);
    }
    out
}

/// Columns orthonormal to the given orthonormal `basis` (n x k), completing it
/// to a unitary. Modified Gram-Schmidt against `basis` and the standard basis,
/// with one re-orthogonalization pass.
pub(crate) fn complete_orthonormal(basis: &CMat) -> CMat {
    let (n, k) = (basis.nrows(), basis.ncols());
    let mut cols: Vec<CVec> = (0..k).map(|j| basis.column(j).into_owned()).collect();
    let mut extra: Vec<CVec> = Vec::with_capacity(n - k);
    let mut cand = 0;
    while cols.len() < n && cand < n {
        let mut v = CVec::zeros(n);
        v[cand] = C::new(1.0, 0.0);
        cand += 1;
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
        }
        let nv = v.norm();
        if nv > 1e-6 {
            v /= C::new(nv, 0.0);
            extra.push(v.clone());
            cols.push(v);
        }
    }
    debug_assert_eq!(cols.len(), n, "orthonormal completion must succeed");
    let mut out = CMat::zeros(n, n - k);
    for (j, v) in extra.iter().enumerate() {
        out.set_column(j, v);
    }
    out
}

/// Unitary factor of a QR decomposition with the phases fixed so that the
/// diagonal of R is real positive (the standard Haar-measure correction).
pub(crate) fn unitary_qr(m: &CMat) -> CMat {
    let n = m.nrows();
    let qr = m.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = q;
    for j in 0..n {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C::new(1.0, 0.0) };
        for i in 0..n {
            out[(i, j)] *= phase;
        }
    }
    out
}
