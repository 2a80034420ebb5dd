//! Seeded random sampling of matrices and operators.
//!
//! All sampling is deterministic: the generator is a ChaCha8 stream keyed by
//! the `seed` argument, and identical `(kind, n, seed)` calls return
//! bit-identical results. Ginibre entries are standard complex Gaussians
//! `(N(0,1) + i N(0,1)) / sqrt(2)`.

use crate::cmat::{symmetrize, C, CMat};
use crate::conjugation::Conjugation;
use crate::error::{Error, Result};
use crate::linalg::unitary_qr;
use crate::op::RealLinearOp;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Ginibre,
    Symmetric,
    Unitary,
    Conjugation,
    SelfadjointAntilinear,
}

/// Output of [`sample`]: either a real-linear operator or a conjugation.
#[derive(Debug, Clone)]
pub enum Sampled {
    Op(RealLinearOp),
    Conjugation(Conjugation),
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ginibre_with(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    CMat::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C::new(re * inv_sqrt2, im * inv_sqrt2)
    })
}

/// i.i.d. standard complex Gaussian entries.
pub fn ginibre(n: usize, seed: u64) -> CMat {
    ginibre_with(&mut rng_for(seed), n)
}

/// `(G + G^T)/2` for Ginibre `G`.
pub fn symmetric(n: usize, seed: u64) -> CMat {
    symmetrize(&ginibre(n, seed))
}

/// Haar-distributed unitary: QR of a Ginibre sample with the R-diagonal
/// phases fixed positive real.
pub fn unitary(n: usize, seed: u64) -> CMat {
    unitary_qr(&ginibre(n, seed))
}

/// `U U^T` for a Haar unitary `U` — a symmetric unitary, i.e. a conjugation.
pub fn conjugation(n: usize, seed: u64) -> Conjugation {
    let u = unitary(n, seed);
    Conjugation::new_unchecked(&u * u.transpose())
}

/// `(0, M)` with `M` a symmetric Ginibre sample.
pub fn selfadjoint_antilinear(n: usize, seed: u64) -> RealLinearOp {
    RealLinearOp::from_antilinear(symmetric(n, seed)).expect("finite sample")
}

/// A generic real-linear operator `(C, M)` with independent Ginibre parts.
/// Convenience for tests; not one of the named kinds.
pub fn real_linear(n: usize, seed: u64) -> RealLinearOp {
    let mut rng = rng_for(seed);
    let c = ginibre_with(&mut rng, n);
    let m = ginibre_with(&mut rng, n);
    RealLinearOp::new(c, m).expect("finite sample")
}

/// Dispatch over [`SampleKind`].
pub fn sample(kind: SampleKind, n: usize, seed: u64) -> Result<Sampled> {
    if n < 1 {
        return Err(Error::Empty("sample dimension must be at least 1"));
    }
    Ok(match kind {
        SampleKind::Ginibre => Sampled::Op(RealLinearOp::from_linear(ginibre(n, seed))?),
        SampleKind::Symmetric => Sampled::Op(RealLinearOp::from_linear(symmetric(n, seed))?),
        SampleKind::Unitary => Sampled::Op(RealLinearOp::from_linear(unitary(n, seed))?),
        SampleKind::Conjugation => Sampled::Conjugation(conjugation(n, seed)),
        SampleKind::SelfadjointAntilinear => Sampled::Op(selfadjoint_antilinear(n, seed)),
    })
}
