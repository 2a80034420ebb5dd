//! Numerical library for antilinear self-adjoint operators on C^n.
//!
//! Real-linear operators split into complex-linear and antilinear parts
//! `x -> C x + M conj(x)`. Around this representation the crate builds:
//!
//! - operator algebra, realification, adjoints, operator norms ([`op`]);
//! - unitary conjugations and antilinear projections ([`conjugation`],
//!   [`projection`]);
//! - spectrum membership and the constructive conjugation facts: full-circle
//!   point spectrum, fixed eigenbases, unitary transfer ([`spectra`]);
//! - Takagi factorization of complex symmetric matrices and the antilinear
//!   eigendecomposition, plus diagonalization of commuting `N + S` pairs
//!   ([`takagi`]);
//! - polar form `A = |A| tau` and the atomic antilinear spectral measure
//!   `F(M) = E(M) tau` ([`polar`]);
//! - singular values and Schatten p-norms ([`schatten`]);
//! - the constructive Weyl-von Neumann decomposition `A = D + K` with `D`
//!   diagonalizable and `|K|_p < epsilon` ([`wvn`]);
//! - the complex-symmetric bridge and approximate condiagonalization
//!   ([`csym`]);
//! - seeded sampling and a JSON exchange format ([`sample`], [`json`]).
//!
//! All types are immutable after construction and all operations are pure;
//! everything may be used concurrently without synchronization.

pub mod cmat;
pub mod conjugation;
pub mod csym;
pub mod error;
pub mod json;
mod linalg;
pub mod op;
pub mod polar;
pub mod projection;
pub mod sample;
pub mod schatten;
pub mod spectra;
pub mod takagi;
pub mod tolerance;
pub mod wvn;

pub use cmat::{C, CMat, CVec, RMat};
pub use conjugation::{Conjugation, ConjugationResiduals};
pub use csym::{
    approx_condiag, approx_factor, is_tau_symmetric, relative_state, CondiagApprox, FactorApprox,
    TauSymmetricOp,
};
pub use error::{Error, Result};
pub use op::RealLinearOp;
pub use polar::{polar, spectral_measure, sqrt_psd, PolarForm, SpectralAtom, SpectralMeasure};
pub use projection::AntilinearProjection;
pub use sample::{sample, SampleKind, Sampled};
pub use schatten::{schatten_norm, singular_values, SchattenParams};
pub use spectra::{
    circular_symmetry_check, conjugation_eigenbasis, conjugation_transfer, eigvec_for_phase,
    in_spectrum, SpectrumQuery,
};
pub use takagi::{
    antilinear_eig, common_eigenvector, diagonalize_commuting_pair, takagi,
    AntilinearEigensystem, CommutingPairDiagonalization, TakagiFactorization,
};
pub use tolerance::{ToleranceConfig, DEFAULT_CLUSTER_TOL, DEFAULT_VALIDATION_TOL};
pub use wvn::{reduce_step, wvn_decompose, ReduceStepResult, WvnBlock, WvnDecomposition, WvnStep};
