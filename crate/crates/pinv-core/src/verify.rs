//! Penrose-condition residuals: the accuracy metric every algorithm is
//! judged by, plus the null-space orthogonality check certifying the
//! minimum-norm property of least-squares solutions.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default per-coefficient residual bound.
pub const DEFAULT_PENROSE_BOUND: f64 = 2e-10;

/// Max-abs entries of the four Penrose residual matrices for a candidate
/// pseudoinverse X of G:
/// r1 = |GXG - G|, r2 = |XGX - X|, r3 = |(GX)' - GX|, r4 = |(XG)' - XG|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenroseReport {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
}

impl PenroseReport {
    pub fn max(&self) -> f64 {
        self.r1.max(self.r2).max(self.r3).max(self.r4)
    }
}

/// Computes the four Penrose residuals with fresh products.
pub fn penrose_residuals(g: &Matrix, x: &Matrix) -> Result<PenroseReport> {
    if x.rows() != g.cols() || x.cols() != g.rows() {
        return Err(Error::ShapeMismatch {
            op: "penrose_residuals",
            lhs: (g.rows(), g.cols()),
            rhs: (x.rows(), x.cols()),
        });
    }
    let gx = g.matmul(x)?;
    let xg = x.matmul(g)?;
    let r1 = gx.matmul(g)?.subtract(g)?.max_abs();
    let r2 = xg.matmul(x)?.subtract(x)?.max_abs();
    let r3 = gx.transpose().subtract(&gx)?.max_abs();
    let r4 = xg.transpose().subtract(&xg)?.max_abs();
    Ok(PenroseReport { r1, r2, r3, r4 })
}

/// True iff all four residuals are within the (inclusive) bound.
pub fn is_valid_pinv(report: &PenroseReport, bound: f64) -> bool {
    assert!(bound > 0.0);
    report.r1 <= bound && report.r2 <= bound && report.r3 <= bound && report.r4 <= bound
}

/// Normalized inner product |w'z| / (|w| |z|) between a solution column w
/// and a null-space vector z of G. Near zero certifies the minimum-norm
/// property.
pub fn nullspace_orthogonality(w: &Matrix, z: &Matrix) -> Result<f64> {
    if w.rows() != z.rows() || w.cols() != 1 || z.cols() != 1 {
        return Err(Error::ShapeMismatch {
            op: "nullspace_orthogonality",
            lhs: (w.rows(), w.cols()),
            rhs: (z.rows(), z.cols()),
        });
    }
    let nw = w.frobenius_norm();
    let nz = z.frobenius_norm();
    if nw == 0.0 || nz == 0.0 {
        return Err(Error::DegenerateInput("zero-norm vector"));
    }
    let dot: f64 = w
        .values()
        .iter()
        .zip(z.values())
        .map(|(&a, &b)| a * b)
        .sum();
    Ok(libm::fabs(dot) / (nw * nz))
}
