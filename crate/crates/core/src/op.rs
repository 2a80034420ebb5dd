//! Real-linear operators on C^n.
//!
//! A real-linear operator splits uniquely into a complex-linear part `C` and
//! an antilinear part `M`, acting as `x -> C x + M conj(x)`. Purely antilinear
//! operators are stored as `(0, M)`; a self-adjoint antilinear operator has
//! symmetric `M`.

use crate::cmat::{
    conj_mat, conj_vec, ensure_same_dim, ensure_square_finite, fro, inner, C, CMat, CVec, RMat,
};
use crate::error::{Error, Result};
use crate::linalg::singular_values_real;

#[derive(Debug, Clone, PartialEq)]
pub struct RealLinearOp {
    linear: CMat,
    antilinear: CMat,
}

impl RealLinearOp {
    /// Builds the operator `x -> linear·x + antilinear·conj(x)`.
    pub fn new(linear: CMat, antilinear: CMat) -> Result<Self> {
        let n = ensure_square_finite(&linear)?;
        let m = ensure_square_finite(&antilinear)?;
        ensure_same_dim(n, m)?;
        Ok(Self { linear, antilinear })
    }

    /// A purely complex-linear operator `x -> c x`.
    pub fn from_linear(c: CMat) -> Result<Self> {
        let n = ensure_square_finite(&c)?;
        Ok(Self { linear: c, antilinear: CMat::zeros(n, n) })
    }

    /// A purely antilinear operator `x -> m conj(x)`.
    pub fn from_antilinear(m: CMat) -> Result<Self> {
        let n = ensure_square_finite(&m)?;
        Ok(Self { linear: CMat::zeros(n, n), antilinear: m })
    }

    pub fn identity(n: usize) -> Self {
        Self { linear: CMat::identity(n, n), antilinear: CMat::zeros(n, n) }
    }

    pub fn zero(n: usize) -> Self {
        Self { linear: CMat::zeros(n, n), antilinear: CMat::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn linear_part(&self) -> &CMat {
        &self.linear
    }

    pub fn antilinear_part(&self) -> &CMat {
        &self.antilinear
    }

    /// Recovers the operator from its action on the 2n probe vectors
    /// `{e_j, i e_j}`: column j of the linear part is `(A e_j - i A(i e_j))/2`
    /// and of the antilinear part `(A e_j + i A(i e_j))/2`.
    pub fn from_action<F>(n: usize, mut action: F) -> Result<Self>
    where
        F: FnMut(&CVec) -> CVec,
    {
        if n == 0 {
            return Err(Error::Empty("operator dimension must be positive"));
        }
        let mut on_basis = Vec::with_capacity(n);
        let mut on_i_basis = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = CVec::zeros(n);
            e[j] = C::new(1.0, 0.0);
            on_basis.push(action(&e));
            e[j] = C::new(0.0, 1.0);
            on_i_basis.push(action(&e));
        }
        Self::from_probe_outputs(&on_basis, &on_i_basis)
    }

    /// Same recovery from recorded probe outputs: `on_basis[j] = A e_j`,
    /// `on_i_basis[j] = A (i e_j)`.
    pub fn from_probe_outputs(on_basis: &[CVec], on_i_basis: &[CVec]) -> Result<Self> {
        let n = on_basis.len();
        if n == 0 {
            return Err(Error::Empty("probe set is empty"));
        }
        if on_i_basis.len() != n {
            return Err(Error::MissingProbe { index: on_i_basis.len().min(n) });
        }
        let i = C::new(0.0, 1.0);
        let half = C::new(0.5, 0.0);
        let mut linear = CMat::zeros(n, n);
        let mut antilinear = CMat::zeros(n, n);
        for j in 0..n {
            if on_basis[j].len() != n || on_i_basis[j].len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: on_basis[j].len().max(on_i_basis[j].len()),
                });
            }
            let c_col = (&on_basis[j] - &on_i_basis[j] * i) * half;
            let m_col = (&on_basis[j] + &on_i_basis[j] * i) * half;
            linear.set_column(j, &c_col);
            antilinear.set_column(j, &m_col);
        }
        Self::new(linear, antilinear)
    }

    /// `C x + M conj(x)`.
    pub fn apply(&self, x: &CVec) -> Result<CVec> {
        ensure_same_dim(self.dim(), x.len())?;
        Ok(&self.linear * x + &self.antilinear * conj_vec(x))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        ensure_same_dim(self.dim(), other.dim())?;
        let linear = &self.linear * &other.linear + &self.antilinear * conj_mat(&other.antilinear);
        let antilinear =
            &self.linear * &other.antilinear + &self.antilinear * conj_mat(&other.linear);
        Ok(Self { linear, antilinear })
    }

    /// Adjoint with respect to `Re<Ax, y> = Re<x, A*y>`: `(C^H, M^T)`.
    pub fn adjoint(&self) -> Self {
        Self { linear: self.linear.adjoint(), antilinear: self.antilinear.transpose() }
    }

    /// The 2n x 2n real matrix acting on stacked `[Re x; Im x]`.
    pub fn realify(&self) -> RMat {
        let n = self.dim();
        let mut out = RMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let c = self.linear[(i, j)];
                let m = self.antilinear[(i, j)];
                out[(i, j)] = c.re + m.re;
                out[(i, j + n)] = -c.im + m.im;
                out[(i + n, j)] = c.im + m.im;
                out[(i + n, j + n)] = c.re - m.re;
            }
        }
        out
    }

    /// Operator norm `sup { |Ax| : |x| = 1 }` — the top singular value of the
    /// realification.
    pub fn operator_norm(&self) -> f64 {
        let s = singular_values_real(&self.realify()).expect("real SVD of a finite matrix");
        s.first().cloned().unwrap_or(0.0)
    }

    /// True when the complex-linear part vanishes relative to the given
    /// tolerance and scale.
    pub fn is_antilinear(&self, tol: f64) -> bool {
        fro(&self.linear) <= tol * fro(&self.antilinear).max(1.0)
    }

    /// Requires a purely antilinear operator and returns its matrix.
    pub fn require_antilinear(&self, tol: f64) -> Result<&CMat> {
        if !self.is_antilinear(tol) {
            return Err(Error::NotAntilinear { norm: fro(&self.linear) });
        }
        Ok(&self.antilinear)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same_dim(self.dim(), other.dim())?;
        Ok(Self {
            linear: &self.linear + &other.linear,
            antilinear: &self.antilinear + &other.antilinear,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        ensure_same_dim(self.dim(), other.dim())?;
        Ok(Self {
            linear: &self.linear - &other.linear,
            antilinear: &self.antilinear - &other.antilinear,
        })
    }

    /// `A - λ I` (λ acts complex-linearly).
    pub fn shift(&self, lambda: C) -> Self {
        let n = self.dim();
        let mut linear = self.linear.clone();
        for i in 0..n {
            linear[(i, i)] -= lambda;
        }
        Self { linear, antilinear: self.antilinear.clone() }
    }
}

/// Re part of the defining adjoint identity, `Re<Ax,y> - Re<x,A*y>`; used by
/// tests and the `check` command.
pub fn adjoint_defect(op: &RealLinearOp, x: &CVec, y: &CVec) -> Result<f64> {
    let lhs = inner(&op.apply(x)?, y).re;
    let rhs = inner(x, &op.adjoint().apply(y)?).re;
    Ok((lhs - rhs).abs())
}
