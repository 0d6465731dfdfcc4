//! Comparison algorithms: Greville's column-recursive method, full-rank QR
//! by Gram-Schmidt orthonormalization, and hyper-power iteration of
//! configurable order. The Jacobi-SVD oracle lives in [`crate::svd`].

use alloc::vec;
use alloc::vec::Vec;

use crate::cholesky::{ToleranceConfig, ToleranceMode};
use crate::error::{Error, Result};
use crate::matrix::{spd_inverse, Matrix};

/// Default relative dependence tolerance for Greville's method: a column
/// whose orthogonal residual norm is below this fraction of the column norm
/// is treated as linearly dependent.
pub const GREVILLE_DEP_TOL: f64 = 1e-11;

/// Initialization for the hyper-power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitScale {
    /// alpha = 1 / (|G|_1 |G|_inf), a sufficient condition for convergence.
    Auto,
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterativeConfig {
    /// Order p of the iteration (number of polynomial terms per sweep).
    pub order: usize,
    pub max_sweeps: usize,
    pub residual_tol: f64,
    pub init_scale: InitScale,
}

impl Default for IterativeConfig {
    fn default() -> Self {
        IterativeConfig {
            order: 512,
            max_sweeps: 200,
            residual_tol: 1e-12,
            init_scale: InitScale::Auto,
        }
    }
}

impl IterativeConfig {
    pub fn with_order(order: usize) -> Self {
        IterativeConfig {
            order,
            ..IterativeConfig::default()
        }
    }

    fn validate(&self) {
        assert!(self.order >= 2, "order must be at least 2");
        assert!(self.max_sweeps >= 1);
        assert!(self.residual_tol > 0.0);
    }
}

/// Moore-Penrose inverse by Greville's column recursion with the default
/// dependence tolerance.
pub fn pinv_greville(g: &Matrix) -> Matrix {
    pinv_greville_with_tol(g, GREVILLE_DEP_TOL)
}

/// Greville's method: the pseudoinverse of the first k columns is updated
/// into the pseudoinverse of the first k+1, one column at a time.
pub fn pinv_greville_with_tol(g: &Matrix, dep_tol: f64) -> Matrix {
    let (m, n) = (g.rows(), g.cols());
    // Rows of `apinv` are the rows of A_k^+; `cols` holds the processed
    // columns of G as contiguous vectors.
    let mut apinv: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);

    for k in 0..n {
        let a: Vec<f64> = (0..m).map(|i| g.at(i, k)).collect();
        let a_norm = norm(&a);

        // d = A_{k-1}^+ a, c = a - A_{k-1} d.
        let d: Vec<f64> = apinv.iter().map(|row| dot(row, &a)).collect();
        let mut c = a.clone();
        for (j, col) in cols.iter().enumerate() {
            let dj = d[j];
            for (ci, &cj) in c.iter_mut().zip(col) {
                *ci -= dj * cj;
            }
        }

        let b: Vec<f64> = if norm(&c) > dep_tol * a_norm {
            // Independent column: b = c' / (c'c).
            let cc = dot(&c, &c);
            c.iter().map(|&v| v / cc).collect()
        } else {
            // Dependent column: b = (1 + d'd)^-1 d' A_{k-1}^+.
            let denom = 1.0 + dot(&d, &d);
            let mut b = vec![0.0; m];
            for (j, row) in apinv.iter().enumerate() {
                let dj = d[j];
                for (bi, &rj) in b.iter_mut().zip(row) {
                    *bi += dj * rj;
                }
            }
            for bi in &mut b {
                *bi /= denom;
            }
            b
        };

        for (j, row) in apinv.iter_mut().enumerate() {
            let dj = d[j];
            for (ri, &bi) in row.iter_mut().zip(&b) {
                *ri -= dj * bi;
            }
        }
        apinv.push(b);
        cols.push(a);
    }

    let mut values = Vec::with_capacity(n * m);
    for row in &apinv {
        values.extend_from_slice(row);
    }
    Matrix::from_vec(n, m, values)
}

/// Moore-Penrose inverse via full-rank QR: G = QR with orthonormal Q (m x r)
/// built by modified Gram-Schmidt with one reorthogonalization pass,
/// dependent columns skipped, then G+ = R'(RR')^-1 Q'.
pub fn pinv_gso_qr(g: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let (m, n) = (g.rows(), g.cols());
    // Orthonormal vectors kept as contiguous rows of Q'.
    let mut q_rows: Vec<Vec<f64>> = Vec::new();

    for j in 0..n {
        let mut v: Vec<f64> = (0..m).map(|i| g.at(i, j)).collect();
        let col_norm = norm(&v);
        let threshold = match cfg.mode {
            ToleranceMode::Absolute(t) => t,
            ToleranceMode::RelativeFloor => cfg.relative_floor * col_norm,
        };
        // MGS plus one reorthogonalization pass.
        for _ in 0..2 {
            for q in &q_rows {
                let proj = dot(q, &v);
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let res_norm = norm(&v);
        if res_norm > threshold && res_norm > 0.0 {
            for vi in &mut v {
                *vi /= res_norm;
            }
            q_rows.push(v);
        }
    }

    let r = q_rows.len();
    let mut qt_values = Vec::with_capacity(r * m);
    for row in &q_rows {
        qt_values.extend_from_slice(row);
    }
    let qt = Matrix::from_vec(r, m, qt_values);
    let rmat = qt.matmul(g)?; // r x n, entries q_i' g_j
    let rrt = crate::matrix::gram(&rmat, crate::matrix::GramSide::Right); // RR'
    let inv = spd_inverse(&rrt)?;
    let t = inv.matmul(&qt)?; // r x m
    rmat.transpose().matmul(&t) // n x m
}

/// Hyper-power iteration of order p: X_{k+1} = X_k (I + T + ... + T^{p-1})
/// with T = I - G X_k, evaluated by Horner's scheme as p-1 multiplications
/// by T. Converges to G+ from X_0 = alpha G'.
///
/// The iteration runs on the Gram matrix A = G'G: W_{k+1} =
/// W_k (I + S + ... + S^{p-1}) with S = I - A W_k and W_0 = alpha A, and
/// the pseudoinverse is recovered through the reverse-order identity
/// G+ = (G'G)+ G' as X_k = W_k G'. Iterating on X directly with
/// T = I - G X_k is the textbook form, but on rank-deficient input it is
/// unstable for large p: rounding components in the null spaces of G and
/// G' sit in an eigenvalue-1 subspace of T and grow by a factor of p per
/// sweep, putting a floor of about p^k * eps under the achievable error.
/// In the Gram form the amplified subspace is null(A), and it is
/// annihilated exactly by the trailing multiplication with G', so the
/// iterate X_k stays clean. All products are n x n instead of m x m.
pub fn pinv_hyperpower(g: &Matrix, cfg: &IterativeConfig) -> Result<Matrix> {
    cfg.validate();
    let (m, n) = (g.rows(), g.cols());
    if m < n {
        // (G')+ = (G+)' keeps the carried matrices at size min(m, n).
        return Ok(pinv_hyperpower(&g.transpose(), cfg)?.transpose());
    }
    if g.max_abs() == 0.0 {
        return Ok(Matrix::zeros(n, m));
    }
    let a = crate::matrix::gram(g, crate::matrix::GramSide::Left);
    let alpha = match cfg.init_scale {
        InitScale::Auto => 1.0 / (a.one_norm() * a.inf_norm()),
        InitScale::Explicit(v) => v,
    };
    let gt = g.transpose();
    let mut w = a.scale(alpha);
    let mut x = w.matmul(&gt)?;
    let identity = Matrix::identity(n);

    let mut best = x.clone();
    let mut best_ratio = f64::INFINITY;
    let mut stall = 0usize;
    for sweep in 1..=cfg.max_sweeps {
        let s = sub_unchecked(&identity, &a.matmul(&w)?);
        // Horner from the right: Z <- W + Z S accumulates
        // W (I + S + ... + S^{p-1}) in p-1 multiplications by S.
        let mut z = w.clone();
        for _ in 0..cfg.order - 1 {
            z = add_unchecked(&w, &z.matmul(&s)?);
            if !all_finite(&z) {
                return Err(Error::NoConvergence {
                    sweeps: sweep,
                    residual: f64::INFINITY,
                });
            }
        }
        let x_next = z.matmul(&gt)?;
        if !all_finite(&x_next) {
            return Err(Error::NoConvergence {
                sweeps: sweep,
                residual: f64::INFINITY,
            });
        }
        let diff = max_abs_diff(&x_next, &x);
        let scale = x_next.max_abs().max(1.0);
        if diff <= cfg.residual_tol * scale {
            return Ok(x_next);
        }
        let ratio = diff / scale;
        if ratio < best_ratio {
            best_ratio = ratio;
            best = x_next.clone();
            stall = 0;
        } else {
            // The relative update can plateau for many sweeps while small
            // singular components ramp up (the lower the order, the longer),
            // so non-improvement is only terminal once the rounding floor
            // is reached just above residual_tol. Divergent configurations
            // overflow within a sweep or two and exit through the finite
            // checks above; max_sweeps bounds everything else.
            stall += 1;
            if stall >= 2 && best_ratio <= 1e-9 {
                return Ok(best);
            }
        }
        w = z;
        x = x_next;
    }
    Err(Error::NoConvergence {
        sweeps: cfg.max_sweeps,
        residual: best_ratio,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

fn all_finite(a: &Matrix) -> bool {
    a.values().iter().all(|v| v.is_finite())
}

fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    let mut acc = 0.0f64;
    for (&x, &y) in a.values().iter().zip(b.values()) {
        let d = libm::fabs(x - y);
        if d.is_nan() {
            return f64::INFINITY;
        }
        if d > acc {
            acc = d;
        }
    }
    acc
}

// Entrywise sum/difference without the finite-entry construction check;
// the caller screens for overflow separately.
fn add_unchecked(a: &Matrix, b: &Matrix) -> Matrix {
    let values: Vec<f64> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| x + y)
        .collect();
    Matrix::from_vec_unchecked(a.rows(), a.cols(), values)
}

fn sub_unchecked(a: &Matrix, b: &Matrix) -> Matrix {
    let values: Vec<f64> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| x - y)
        .collect();
    Matrix::from_vec_unchecked(a.rows(), a.cols(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::penrose_residuals;

    fn mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows)
    }

    fn rank_one() -> Matrix {
        mat(&[&[1.0, 2.0], &[2.0, 4.0]])
    }

    fn rank_one_pinv() -> Matrix {
        rank_one().scale(1.0 / 25.0)
    }

    #[test]
    fn greville_identity() {
        let i2 = Matrix::identity(2);
        let x = pinv_greville(&i2);
        assert!(x.subtract(&i2).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn greville_rank_one() {
        let x = pinv_greville(&rank_one());
        assert!(x.subtract(&rank_one_pinv()).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn greville_zero_column() {
        let g = Matrix::zeros(3, 1);
        let x = pinv_greville(&g);
        assert_eq!(x, Matrix::zeros(1, 3));
    }

    #[test]
    fn greville_satisfies_penrose_on_mixed_rank() {
        let g = mat(&[
            &[1.0, 2.0, 3.0],
            &[4.0, 5.0, 9.0],
            &[7.0, 8.0, 15.0],
            &[1.0, 0.0, 1.0],
        ]); // third column = first + second
        let x = pinv_greville(&g);
        let r = penrose_residuals(&g, &x).unwrap();
        assert!(r.max() < 1e-12, "residuals {r:?}");
    }

    #[test]
    fn gso_orthonormal_columns() {
        let g = mat(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]);
        let x = pinv_gso_qr(&g, &ToleranceConfig::default()).unwrap();
        assert!(x.subtract(&g.transpose()).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn gso_rank_one() {
        let x = pinv_gso_qr(&rank_one(), &ToleranceConfig::default()).unwrap();
        assert!(x.subtract(&rank_one_pinv()).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn gso_zero_matrix() {
        let x = pinv_gso_qr(&Matrix::zeros(2, 2), &ToleranceConfig::default()).unwrap();
        assert_eq!(x, Matrix::zeros(2, 2));
    }

    #[test]
    fn hyperpower_identity_fixpoint() {
        let i2 = Matrix::identity(2);
        let x = pinv_hyperpower(&i2, &IterativeConfig::with_order(2)).unwrap();
        assert!(x.subtract(&i2).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn hyperpower_rank_one() {
        let x = pinv_hyperpower(&rank_one(), &IterativeConfig::with_order(8)).unwrap();
        assert!(x.subtract(&rank_one_pinv()).unwrap().max_abs() < 1e-11);
    }

    #[test]
    fn hyperpower_zero_matrix() {
        let x = pinv_hyperpower(&Matrix::zeros(3, 2), &IterativeConfig::default()).unwrap();
        assert_eq!(x, Matrix::zeros(2, 3));
    }

    #[test]
    fn hyperpower_bad_explicit_scale_diverges() {
        let cfg = IterativeConfig {
            init_scale: InitScale::Explicit(1e6),
            order: 4,
            max_sweeps: 20,
            residual_tol: 1e-12,
        };
        let g = mat(&[&[1.0, 0.5], &[0.2, 2.0], &[0.3, -1.0]]);
        assert!(matches!(
            pinv_hyperpower(&g, &cfg),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn hyperpower_order2_matches_high_order() {
        let g = mat(&[&[2.0, 0.1], &[0.3, 1.5], &[-0.2, 0.7]]);
        let x2 = pinv_hyperpower(&g, &IterativeConfig::with_order(2)).unwrap();
        let x512 = pinv_hyperpower(&g, &IterativeConfig::default()).unwrap();
        assert!(x2.subtract(&x512).unwrap().max_abs() < 1e-9);
    }
}
