//! Dense real matrices in row-major storage.
//!
//! This is the foundation every algorithm in the crate is written against:
//! products, transposes, Gram matrices, norms, and symmetric positive
//! definite inversion. No external BLAS; plain loops arranged so the
//! compiler can vectorize the inner dimension.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};

/// Dense real matrix, row-major: `values[i * cols + j]` is entry (i, j).
///
/// Zero-sized dimensions are permitted; rank-0 factorizations produce
/// matrices with zero columns and products with an empty inner dimension
/// are zero matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data.
    ///
    /// Panics if the length does not match or any entry is non-finite;
    /// both are contract violations, not runtime conditions.
    pub fn from_vec(rows: usize, cols: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), rows * cols, "value length must be rows*cols");
        assert!(values.iter().all(|v| v.is_finite()), "entries must be finite");
        Matrix { rows, cols, values }
    }

    // Skips the finite-entry check; used where overflow is screened for
    // separately (divergence detection in the iterative method).
    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), rows * cols);
        Matrix { rows, cols, values }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut values = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            values.extend_from_slice(row);
        }
        Matrix::from_vec(r, c, values)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            values: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.values[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    /// Column j as a rows x 1 matrix.
    pub fn column(&self, j: usize) -> Matrix {
        assert!(j < self.cols);
        let values = (0..self.rows).map(|i| self.at(i, j)).collect();
        Matrix::from_vec(self.rows, 1, values)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.values[j * self.rows + i] = self.values[i * self.cols + j];
            }
        }
        out
    }

    /// Matrix product. Inner loops run along contiguous rows of both
    /// operands so they vectorize.
    pub fn matmul(&self, b: &Matrix) -> Result<Matrix> {
        if self.cols != b.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                lhs: (self.rows, self.cols),
                rhs: (b.rows, b.cols),
            });
        }
        let (m, n, p) = (self.rows, self.cols, b.cols);
        let mut out = Matrix::zeros(m, p);
        for i in 0..m {
            let a_row = &self.values[i * n..(i + 1) * n];
            let c_row = &mut out.values[i * p..(i + 1) * p];
            for (k, &aik) in a_row.iter().enumerate() {
                let b_row = &b.values[k * p..(k + 1) * p];
                for j in 0..p {
                    c_row[j] += aik * b_row[j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, b: &Matrix) -> Result<Matrix> {
        self.zip_with(b, "add", |x, y| x + y)
    }

    pub fn subtract(&self, b: &Matrix) -> Result<Matrix> {
        self.zip_with(b, "subtract", |x, y| x - y)
    }

    fn zip_with(&self, b: &Matrix, op: &'static str, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if self.rows != b.rows || self.cols != b.cols {
            return Err(Error::ShapeMismatch {
                op,
                lhs: (self.rows, self.cols),
                rhs: (b.rows, b.cols),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| f(x, y))
            .collect();
        Ok(Matrix::from_vec(self.rows, self.cols, values))
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let values = self.values.iter().map(|&v| v * s).collect();
        Matrix::from_vec(self.rows, self.cols, values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, &v| {
            let a = libm::fabs(v);
            if a > acc {
                a
            } else {
                acc
            }
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|&v| v * v).sum())
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut sums = vec![0.0f64; self.cols];
        for i in 0..self.rows {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += libm::fabs(self.at(i, j));
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| libm::fabs(v)).sum())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.values[i * self.cols + j]
    }
}

/// Which Gram matrix to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramSide {
    /// G'G, cols x cols.
    Left,
    /// GG', rows x rows.
    Right,
}

/// Gram matrix G'G or GG'. Only the upper triangle is computed; it is
/// mirrored to the lower one, so the output is exactly symmetric.
pub fn gram(g: &Matrix, side: GramSide) -> Matrix {
    match side {
        GramSide::Left => {
            let n = g.cols();
            let mut a = Matrix::zeros(n, n);
            // Accumulate row outer products; inner loop is contiguous in G.
            for k in 0..g.rows() {
                let row = g.row(k);
                for i in 0..n {
                    let v = row[i];
                    let a_row = &mut a.values[i * n + i..i * n + n];
                    for (off, &gj) in row[i..].iter().enumerate() {
                        a_row[off] += v * gj;
                    }
                }
            }
            mirror_upper(&mut a);
            a
        }
        GramSide::Right => {
            let m = g.rows();
            let mut a = Matrix::zeros(m, m);
            for i in 0..m {
                let ri = g.row(i);
                for j in i..m {
                    let rj = g.row(j);
                    let dot: f64 = ri.iter().zip(rj).map(|(&x, &y)| x * y).sum();
                    a.values[i * m + j] = dot;
                }
            }
            mirror_upper(&mut a);
            a
        }
    }
}

fn mirror_upper(a: &mut Matrix) {
    let n = a.rows();
    for i in 0..n {
        for j in 0..i {
            a.values[i * n + j] = a.values[j * n + i];
        }
    }
}

/// Inverse of a symmetric positive definite matrix via unpivoted Cholesky
/// and two triangular solves per column.
///
/// The caller guarantees SPD input (this is only ever applied to L'L for a
/// full-column-rank L); a non-positive pivot reports that the contract was
/// violated.
pub fn spd_inverse(a: &Matrix) -> Result<Matrix> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    // Lower Cholesky factor, in place over a copy.
    let mut l = a.values.clone();
    for k in 0..n {
        let mut d = l[k * n + k];
        for p in 0..k {
            d -= l[k * n + p] * l[k * n + p];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot: d });
        }
        let d = libm::sqrt(d);
        l[k * n + k] = d;
        for i in (k + 1)..n {
            let mut s = l[i * n + k];
            for p in 0..k {
                s -= l[i * n + p] * l[k * n + p];
            }
            l[i * n + k] = s / d;
        }
    }
    // Solve L L' X = I for all columns at once; the substitutions update
    // whole rows of the workspace so the inner loops stay contiguous.
    let mut inv = Matrix::identity(n);
    // Forward: L Y = I, rows top to bottom.
    for i in 0..n {
        let (above, current) = inv.values.split_at_mut(i * n);
        let row_i = &mut current[..n];
        for p in 0..i {
            let c = l[i * n + p];
            if c != 0.0 {
                let row_p = &above[p * n..p * n + n];
                for (x, &y) in row_i.iter_mut().zip(row_p) {
                    *x -= c * y;
                }
            }
        }
        let d = 1.0 / l[i * n + i];
        for x in row_i.iter_mut() {
            *x *= d;
        }
    }
    // Backward: L' X = Y, rows bottom to top.
    for i in (0..n).rev() {
        let (current, below) = inv.values.split_at_mut((i + 1) * n);
        let row_i = &mut current[i * n..];
        for p in (i + 1)..n {
            let c = l[p * n + i];
            if c != 0.0 {
                let row_p = &below[(p - i - 1) * n..(p - i) * n];
                for (x, &y) in row_i.iter_mut().zip(row_p) {
                    *x -= c * y;
                }
            }
        }
        let d = 1.0 / l[i * n + i];
        for x in row_i.iter_mut() {
            *x *= d;
        }
    }
    Ok(inv)
}
