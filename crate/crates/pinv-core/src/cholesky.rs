//! Full-rank Cholesky factorization of a symmetric positive semidefinite
//! matrix: A = LL' with L of size n x r and full column rank r, obtained by
//! skipping columns whose pivot falls below a tolerance.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Pivot tolerance policy for rank detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToleranceMode {
    /// tol = (smallest strictly positive diagonal entry) * relative_floor.
    RelativeFloor,
    /// Fixed absolute pivot threshold.
    Absolute(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub relative_floor: f64,
    pub mode: ToleranceMode,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            relative_floor: 1e-9,
            mode: ToleranceMode::RelativeFloor,
        }
    }
}

impl ToleranceConfig {
    pub fn absolute(value: f64) -> Self {
        assert!(value > 0.0);
        ToleranceConfig {
            relative_floor: 1e-9,
            mode: ToleranceMode::Absolute(value),
        }
    }

    /// Pivot threshold for a given PSD matrix. With no positive diagonal
    /// entry (the zero matrix) the threshold is 0 and the factor is empty.
    fn pivot_tol(&self, a: &Matrix) -> f64 {
        match self.mode {
            ToleranceMode::Absolute(v) => v,
            ToleranceMode::RelativeFloor => {
                assert!(self.relative_floor > 0.0);
                let mut min_pos = f64::INFINITY;
                for k in 0..a.rows() {
                    let d = a.at(k, k);
                    if d > 0.0 && d < min_pos {
                        min_pos = d;
                    }
                }
                if min_pos.is_finite() {
                    min_pos * self.relative_floor
                } else {
                    0.0
                }
            }
        }
    }
}

/// Result of the full-rank factorization: the n x r factor, the detected
/// rank, and the pivot threshold that was used.
#[derive(Debug, Clone, PartialEq)]
pub struct FullRankCholesky {
    pub l: Matrix,
    pub rank: usize,
    pub tol: f64,
}

/// Factors a symmetric positive semidefinite n x n matrix as A = LL' with
/// L of full column rank equal to the numerical rank of A.
///
/// Columns are formed in order; each tentative column is corrected against
/// the already accepted ones and kept only when its pivot exceeds the
/// threshold. Tiny negative pivots (down to -tol*n) are rounding artifacts
/// of PSD input and reject the column; anything more negative means the
/// input was not PSD.
pub fn full_rank_cholesky(a: &Matrix, cfg: &ToleranceConfig) -> Result<FullRankCholesky> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if a.at(i, j).to_bits() != a.at(j, i).to_bits() {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let any_positive_diag = (0..n).any(|k| a.at(k, k) > 0.0);
    if !any_positive_diag && a.max_abs() > 0.0 {
        return Err(Error::NotPositiveDefinite { pivot: 0.0 });
    }

    let tol = cfg.pivot_tol(a);
    let neg_floor = -tol * n as f64;

    // n x n workspace, truncated to the detected rank at exit.
    let mut work = Matrix::zeros(n, n);
    let mut r = 0usize;
    for k in 0..n {
        // Tentative column r: a[k.., k] minus the correction from the
        // accepted columns, work[k.., 0..r] * work[k, 0..r]'.
        for i in k..n {
            let mut s = a.at(i, k);
            for j in 0..r {
                s -= work.at(i, j) * work.at(k, j);
            }
            work.set(i, r, s);
        }
        let pivot = work.at(k, r);
        if pivot > tol {
            let root = libm::sqrt(pivot);
            work.set(k, r, root);
            for i in (k + 1)..n {
                work.set(i, r, work.at(i, r) / root);
            }
            r += 1;
        } else {
            if pivot < neg_floor {
                return Err(Error::NotPositiveDefinite { pivot });
            }
            for i in k..n {
                work.set(i, r, 0.0);
            }
        }
    }

    let mut values = alloc::vec::Vec::with_capacity(n * r);
    for i in 0..n {
        for j in 0..r {
            values.push(work.at(i, j));
        }
    }
    Ok(FullRankCholesky {
        l: Matrix::from_vec(n, r, values),
        rank: r,
        tol,
    })
}
