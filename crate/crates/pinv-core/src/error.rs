use core::fmt;

use alloc::string::String;

/// Error type shared by all matrix operations in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes are incompatible for the requested operation.
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// The input was required to be symmetric (entrywise) and is not.
    NotSymmetric,
    /// A non-positive pivot was met where positive definiteness was assumed,
    /// or the input is detectably not positive semidefinite.
    NotPositiveDefinite { pivot: f64 },
    /// An iteration failed to converge within its sweep budget.
    NoConvergence { sweeps: usize, residual: f64 },
    /// A zero-norm vector was given where a direction is required.
    DegenerateInput(&'static str),
    /// A generator or benchmark specification violates its invariants.
    InvalidSpec(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { op, lhs, rhs } => write!(
                f,
                "{op}: incompatible shapes {}x{} and {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "square matrix required, got {rows}x{cols}")
            }
            Error::NotSymmetric => write!(f, "symmetric matrix required"),
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot:e})")
            }
            Error::NoConvergence { sweeps, residual } => {
                write!(f, "no convergence after {sweeps} sweeps (residual {residual:e})")
            }
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::InvalidSpec(msg) => write!(f, "invalid spec: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
