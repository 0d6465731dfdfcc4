//! Moore-Penrose inverse via full-rank Cholesky factorization, and the
//! minimum-norm least-squares solver built on it.
//!
//! For a tall (or square) G the Gram matrix G'G is factored as LL' and
//! G+ = L (L'L)^-1 (L'L)^-1 L' G'. Wide matrices are handled by factoring
//! GG' instead, which keeps the factored matrix at size min(m, n).

use crate::cholesky::{full_rank_cholesky, ToleranceConfig};
use crate::error::{Error, Result};
use crate::matrix::{gram, spd_inverse, GramSide, Matrix};

/// Details exposed for diagnostics alongside the pseudoinverse.
#[derive(Debug, Clone, Copy)]
pub struct GeninvDiagnostics {
    /// Numerical rank detected by the factorization.
    pub rank: usize,
    /// One-norm condition estimate of L'L, cond1 = |L'L|_1 |(L'L)^-1|_1.
    pub lt_l_condition: f64,
}

/// Moore-Penrose inverse of an arbitrary real matrix.
pub fn pinv_geninv(g: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    pinv_geninv_detailed(g, cfg).map(|(x, _)| x)
}

/// Same as [`pinv_geninv`] but also reports the detected rank and a
/// condition estimate of the inner L'L system.
pub fn pinv_geninv_detailed(
    g: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<(Matrix, GeninvDiagnostics)> {
    let wide = g.rows() < g.cols();
    let a = if wide {
        gram(g, GramSide::Right)
    } else {
        gram(g, GramSide::Left)
    };
    let fact = full_rank_cholesky(&a, cfg)?;
    let l = &fact.l;
    let lt_l = gram(l, GramSide::Left);
    let m = spd_inverse(&lt_l)?;
    let diag = GeninvDiagnostics {
        rank: fact.rank,
        lt_l_condition: if fact.rank == 0 {
            1.0
        } else {
            lt_l.one_norm() * m.one_norm()
        },
    };

    // With K = L M the product L M M L' collapses to the symmetric K K',
    // built at half cost from one triangle; that is A+ and the remaining
    // work is a single product with G'.
    let k = l.matmul(&m)?;
    let p = gram(&k.transpose(), GramSide::Left); // K K' = (GG')+ or (G'G)+
    let x = if wide {
        g.transpose().matmul(&p)? // X = G' (GG')+
    } else {
        p.matmul(&g.transpose())? // X = (G'G)+ G'
    };
    Ok((x, diag))
}

/// Minimum-norm least-squares solution W = G+ F.
///
/// Each column of W minimizes |G w - f_col| and, among the minimizers, has
/// the smallest Euclidean norm.
pub fn solve_min_norm(g: &Matrix, f: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    if g.rows() != f.rows() {
        return Err(Error::ShapeMismatch {
            op: "solve_min_norm",
            lhs: (g.rows(), g.cols()),
            rhs: (f.rows(), f.cols()),
        });
    }
    pinv_geninv(g, cfg)?.matmul(f)
}
