//! Dense real-matrix kernels and five Moore-Penrose pseudoinverse
//! algorithms, built around a full-rank Cholesky factorization of the Gram
//! matrix.
//!
//! The crate is `no_std` (with `alloc`); everything here is pure
//! computation. File formats, timing, and the benchmark CLI live in the
//! companion `pinv-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algorithm;
pub mod baselines;
pub mod benchgen;
pub mod cholesky;
pub mod error;
pub mod geninv;
pub mod matrix;
pub mod svd;
pub mod verify;

pub use algorithm::{AlgorithmConfig, PinvAlgorithm};
pub use baselines::{pinv_greville, pinv_gso_qr, pinv_hyperpower, InitScale, IterativeConfig};
pub use benchgen::{random_rank_deficient, uniform_stream, MatrixFamilySpec, UniformRng};
pub use cholesky::{full_rank_cholesky, FullRankCholesky, ToleranceConfig, ToleranceMode};
pub use error::{Error, Result};
pub use geninv::{pinv_geninv, pinv_geninv_detailed, solve_min_norm, GeninvDiagnostics};
pub use matrix::{gram, spd_inverse, GramSide, Matrix};
pub use svd::{jacobi_svd, pinv_svd_reference, JacobiSvd, SvdConfig, Truncation};
pub use verify::{
    is_valid_pinv, nullspace_orthogonality, penrose_residuals, PenroseReport,
    DEFAULT_PENROSE_BOUND,
};
