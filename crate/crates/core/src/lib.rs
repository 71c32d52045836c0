//! Exact Jordan-Chevalley decomposition of upper-triangular rational matrices.
//!
//! A square matrix `A` over a field of characteristic zero splits uniquely as
//! `A = S' + N'` with `S'` diagonalizable, `N'` nilpotent, and `[S', N'] = 0`.
//! This crate computes that splitting without ever leaving the rationals: the
//! nilpotent summand of a triangular input is decomposed into eigenmatrices of
//! the adjoint operator `Y -> [S, Y]`, and nonzero-eigenvalue components are
//! absorbed into the diagonalizable part one at a time until none remain.
//!
//! Module map:
//!
//! * [`ratmat`]: dense matrices over `BigRational` and their basic predicates.
//! * [`poly`]: dense univariate rational polynomials (gcd, division, matrix
//!   evaluation).
//! * [`eigendecomp`]: eigenmatrix decompositions of `ad(S)` and the shift map
//!   that transports them to `ad(S - X)`.
//! * [`neweigm`]: the loop that replays a whole decomposition under a shift.
//! * [`jcd`]: the driver, its termination measure, and pluggable strategies
//!   for choosing which component to absorb next.
//! * [`oracle`]: an independent classical decomposition (squarefree part plus
//!   Newton iteration) used as ground truth in tests and the CLI.
//! * [`liealg`]: exact spans, bracket closures, and solvability checks, plus a
//!   constructive triangularization for solvable inputs.
//! * [`gen`]: seeded random instance generation.

pub mod eigendecomp;
pub mod gen;
pub mod jcd;
pub mod liealg;
pub mod neweigm;
pub mod oracle;
pub mod poly;
pub mod ratmat;

mod rowspace;

use thiserror::Error;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    /// A band index of `n` or more was passed for an `n`-dimensional matrix.
    #[error("band index {k} out of range for dimension {n}")]
    BandOutOfRange { k: usize, n: usize },
    /// A documented precondition of the operation fails for this input.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An internal guarantee failed. Seeing this means a bug in the crate,
    /// not bad input.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// The computation would have to leave the rational numbers.
    #[error("unsupported field extension: {0}")]
    UnsupportedField(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use eigendecomp::{EigPair, EigSeq};
pub use jcd::{GammaVector, JcdResult, JcdTrace};
pub use oracle::RatPoly;
pub use ratmat::{Mat, Rational};
