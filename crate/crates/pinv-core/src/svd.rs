//! One-sided Jacobi SVD and the pseudoinverse built from it. Slow but very
//! accurate; this is the correctness oracle the other algorithms are
//! checked against.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Singular-value truncation rule for the pseudoinverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// max(m, n) * machine epsilon * largest singular value.
    DefaultRule,
    /// cutoff = factor * largest singular value.
    Relative(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvdConfig {
    /// Off-diagonal convergence threshold, relative to the column norms.
    pub sweep_tol: f64,
    pub truncation: Truncation,
}

impl Default for SvdConfig {
    fn default() -> Self {
        SvdConfig {
            sweep_tol: 1e-14,
            truncation: Truncation::DefaultRule,
        }
    }
}

const MAX_SWEEPS: usize = 50;

/// Economy SVD of a tall (rows >= cols) matrix: g = U diag(sigma) V' with
/// U of size m x n, V of size n x n, sigma descending is NOT guaranteed
/// (values come out in column order).
#[derive(Debug, Clone)]
pub struct JacobiSvd {
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

/// One-sided Jacobi: plane rotations orthogonalize the columns of g until
/// every off-diagonal inner product is negligible relative to the column
/// norms; the rotations accumulate into V.
pub fn jacobi_svd(g: &Matrix, cfg: &SvdConfig) -> Result<JacobiSvd> {
    assert!(cfg.sweep_tol > 0.0);
    assert!(
        g.rows() >= g.cols(),
        "jacobi_svd expects the tall orientation"
    );
    let (m, n) = (g.rows(), g.cols());

    // Working copies hold columns contiguously: w[j] is column j of g,
    // vt[j] is column j of V.
    let mut w: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| g.at(i, j)).collect()).collect();
    let mut vt: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (wp, wq) = pick_two(&mut w, p, q);
                let app = dot(wp, wp);
                let aqq = dot(wq, wq);
                let apq = dot(wp, wq);
                if libm::fabs(apq) <= cfg.sweep_tol * libm::sqrt(app * aqq) {
                    continue;
                }
                rotated = true;
                // Jacobi rotation annihilating the (p, q) inner product.
                let zeta = (aqq - app) / (2.0 * apq);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate(wp, wq, c, s);
                let (vp, vq) = pick_two(&mut vt, p, q);
                rotate(vp, vq, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual: f64::NAN,
        });
    }

    let sigma: Vec<f64> = w.iter().map(|col| libm::sqrt(dot(col, col))).collect();
    let mut u = Matrix::zeros(m, n);
    for (j, col) in w.iter().enumerate() {
        if sigma[j] > 0.0 {
            for i in 0..m {
                u.set(i, j, col[i] / sigma[j]);
            }
        }
    }
    let mut v = Matrix::zeros(n, n);
    for (j, col) in vt.iter().enumerate() {
        for i in 0..n {
            v.set(i, j, col[i]);
        }
    }
    Ok(JacobiSvd { u, sigma, v })
}

/// Pseudoinverse through the Jacobi SVD: G+ = V diag(1/sigma_i for the
/// singular values above the truncation cutoff, else 0) U'. Wide inputs go
/// through the transpose, (G')+ = (G+)'.
pub fn pinv_svd_reference(g: &Matrix, cfg: &SvdConfig) -> Result<Matrix> {
    if g.rows() < g.cols() {
        return Ok(pinv_svd_reference(&g.transpose(), cfg)?.transpose());
    }
    let svd = jacobi_svd(g, cfg)?;
    let sigma_max = svd.sigma.iter().cloned().fold(0.0, f64::max);
    let cutoff = match cfg.truncation {
        Truncation::DefaultRule => g.rows().max(g.cols()) as f64 * f64::EPSILON * sigma_max,
        Truncation::Relative(factor) => factor * sigma_max,
    };
    let inv_sigma: Vec<f64> = svd
        .sigma
        .iter()
        .map(|&s| if s > cutoff && s > 0.0 { 1.0 / s } else { 0.0 })
        .collect();
    // V diag(inv_sigma) U': scale the columns of V, then multiply by U'.
    let n = g.cols();
    let mut vs = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            vs.set(i, j, svd.v.at(i, j) * inv_sigma[j]);
        }
    }
    vs.matmul(&svd.u.transpose())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn rotate(a: &mut [f64], b: &mut [f64], c: f64, s: f64) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let xp = c * *x - s * *y;
        let yp = s * *x + c * *y;
        *x = xp;
        *y = yp;
    }
}

fn pick_two<T>(v: &mut [T], p: usize, q: usize) -> (&mut T, &mut T) {
    debug_assert!(p < q);
    let (lo, hi) = v.split_at_mut(q);
    (&mut lo[p], &mut hi[0])
}
