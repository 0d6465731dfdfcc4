//! Deterministic generation of the benchmark matrix family: random
//! rank-deficient rectangular matrices with entries in [-1, 1] and a
//! prescribed rank, reproducible bit-for-bit from a 64-bit seed on any
//! platform.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// xoshiro256++ seeded through splitmix64.
///
/// The algorithm is fixed and documented so that sequences are identical
/// across platforms and reimplementations:
/// - splitmix64(seed) produces the four 64-bit state words;
/// - each output is `rotl(s0 + s3, 23) + s0` followed by the standard
///   xoshiro256 state transition;
/// - uniforms in [-1, 1] are `2 * (x >> 11) * 2^-53 - 1`, i.e. a 53-bit
///   uniform in [0, 1) mapped affinely.
#[derive(Debug, Clone)]
pub struct UniformRng {
    state: [u64; 4],
}

impl UniformRng {
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let mut next_sm = || {
            sm = sm.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = sm;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        };
        UniformRng {
            state: [next_sm(), next_sm(), next_sm(), next_sm()],
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in [-1, 1] with 53 bits of precision.
    pub fn next_uniform(&mut self) -> f64 {
        let u53 = (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
        2.0 * u53 - 1.0
    }
}

/// Infinite deterministic stream of uniforms in [-1, 1].
pub fn uniform_stream(seed: u64) -> impl Iterator<Item = f64> {
    let mut rng = UniformRng::new(seed);
    core::iter::from_fn(move || Some(rng.next_uniform()))
}

/// Size, rank, and seed of one benchmark matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixFamilySpec {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub seed: u64,
}

impl MatrixFamilySpec {
    /// Benchmark defaults for a given column count: m = 2n, rank = 7n/8.
    pub fn benchmark_default(n: usize, seed: u64) -> Self {
        MatrixFamilySpec {
            n,
            m: 2 * n,
            rank: (7 * n / 8).max(1),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 || self.m < 1 {
            return Err(Error::InvalidSpec(format!(
                "dimensions must be positive, got {}x{}",
                self.m, self.n
            )));
        }
        if self.rank < 1 || self.rank > self.m.min(self.n) {
            return Err(Error::InvalidSpec(format!(
                "rank {} out of range 1..={} for a {}x{} matrix",
                self.rank,
                self.m.min(self.n),
                self.m,
                self.n
            )));
        }
        Ok(())
    }
}

/// Generates g = normalize(b * c) with b (m x rank) and c (rank x n) filled
/// row-major from the seeded stream. The product has the prescribed rank
/// almost surely; dividing by max_abs puts the extreme entry at exactly
/// +-1. The factors are returned so callers can build exact null-space
/// vectors (any z with c z = 0 is in the null space of g).
pub fn random_rank_deficient(spec: &MatrixFamilySpec) -> Result<(Matrix, Matrix, Matrix)> {
    spec.validate()?;
    let mut rng = UniformRng::new(spec.seed);
    let b_values: Vec<f64> = (0..spec.m * spec.rank).map(|_| rng.next_uniform()).collect();
    let c_values: Vec<f64> = (0..spec.rank * spec.n).map(|_| rng.next_uniform()).collect();
    let b = Matrix::from_vec(spec.m, spec.rank, b_values);
    let c = Matrix::from_vec(spec.rank, spec.n, c_values);
    let product = b.matmul(&c).expect("factor shapes agree");
    let peak = product.max_abs();
    let g = if peak > 0.0 {
        let values = product.values().iter().map(|&v| v / peak).collect();
        Matrix::from_vec(spec.m, spec.n, values)
    } else {
        product
    };
    Ok((g, b, c))
}
