//! Transport of a whole eigenmatrix decomposition from `ad(S)` to
//! `ad(S - X)`.
//!
//! Each pending pair is shifted by the exponential series, which makes it an
//! eigenmatrix of `ad(S - X)` but disturbs the invariant that the pending
//! matrices sum to `N`; the disturbance is exactly the ladder of residuals
//! `-(mu^-j / j!) ad(X)^j (N_i)`, each again an eigenmatrix of `ad(S)` with
//! eigenvalue `lambda_i + j*mu`. Those residuals become the next round's
//! pending pairs. Every round strictly raises the lowest diagonal band
//! present among the residuals, so at most `n` rounds run.

use num_traits::Zero;

use crate::eigendecomp::{collect, exp_series, juxtapose, EigPair, EigSeq};
use crate::ratmat::{rat, Mat, Rational};
use crate::{Error, Result};

/// Snapshot of one round: the still-pending eigenmatrices of `ad(S)`, the
/// accumulated eigenmatrices of `ad(S - X)`, and the 1-based round number
/// (0 for the degenerate `X = 0` call, which runs no rounds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewEigMState {
    pub eigm_s: EigSeq,
    pub eigm_s_minus_x: EigSeq,
    pub loop_count: usize,
}

/// Eigenmatrix decomposition of `sum(N_seq)` under `ad(S - X)`.
///
/// Preconditions: the input pairs have pairwise-distinct eigenvalues and each
/// satisfies `[S, N_i] = lambda_i N_i`; `X` is either zero (then `mu` is
/// ignored and the result is `collect(N_seq)`) or strictly upper triangular
/// with `[S, X] = mu X` and `mu != 0`.
///
/// The output has pairwise-distinct eigenvalues, no zero matrices, sums to
/// the sum of the input matrices, and each entry satisfies
/// `[S - X, out_i] = lambda_i out_i`.
pub fn new_eig_m(n_seq: &EigSeq, x: &Mat, mu: &Rational, s: &Mat) -> Result<EigSeq> {
    new_eig_m_traced(n_seq, x, mu, s).map(|(out, _)| out)
}

/// As [`new_eig_m`], also returning one [`NewEigMState`] per round (exactly
/// one state for the `X = 0` and empty-input cases).
pub fn new_eig_m_traced(
    n_seq: &EigSeq,
    x: &Mat,
    mu: &Rational,
    s: &Mat,
) -> Result<(EigSeq, Vec<NewEigMState>)> {
    let n = s.dim();
    if x.dim() != n {
        return Err(Error::DimMismatch {
            left: n,
            right: x.dim(),
        });
    }
    for pair in n_seq {
        if pair.matrix.dim() != n {
            return Err(Error::DimMismatch {
                left: n,
                right: pair.matrix.dim(),
            });
        }
        if !pair.is_eigenpair_of(s)? {
            return Err(Error::Precondition(
                "new_eig_m: every input pair must satisfy bracket(S, N_i) = lambda_i*N_i".into(),
            ));
        }
    }
    if !n_seq.eigenvalues_pairwise_distinct() {
        return Err(Error::Precondition(
            "new_eig_m: input eigenvalues must be pairwise distinct".into(),
        ));
    }

    if x.is_zero() {
        let out = collect(n_seq);
        let state = NewEigMState {
            eigm_s: EigSeq::new(),
            eigm_s_minus_x: out.clone(),
            loop_count: 0,
        };
        return Ok((out, vec![state]));
    }

    if mu.is_zero() {
        return Err(Error::Precondition(
            "new_eig_m: mu must be nonzero when X is nonzero".into(),
        ));
    }
    if !x.is_strictly_upper() {
        return Err(Error::Precondition(
            "new_eig_m: X must be strictly upper triangular".into(),
        ));
    }
    if s.bracket(x)? != x.scale(mu) {
        return Err(Error::Precondition(
            "new_eig_m: X must satisfy bracket(S, X) = mu*X".into(),
        ));
    }

    let total = n_seq.sum_matrices(n);
    let mut pending = n_seq.clone();
    let mut acc = EigSeq::new();
    let mut trace = Vec::new();
    loop {
        let loop_count = trace.len() + 1;
        if loop_count > n {
            return Err(Error::Invariant(
                "new_eig_m: residual band index must rise every round".into(),
            ));
        }
        let mut shifted = EigSeq::new();
        let mut residuals = EigSeq::new();
        for pair in &pending {
            debug_assert!(pair.is_eigenpair_of(s).expect("same dimension"));
            shifted.push(EigPair::new(
                exp_series(x, mu, &pair.matrix),
                pair.eigenvalue.clone(),
            ));
            let mut term = pair.matrix.clone();
            let mut coeff = rat(-1);
            let mut eigenvalue = pair.eigenvalue.clone();
            for j in 1..n {
                term = x.bracket(&term)?;
                if term.is_zero() {
                    break;
                }
                coeff /= mu * rat(j as i64);
                eigenvalue += mu;
                residuals.push(EigPair::new(term.scale(&coeff), eigenvalue.clone()));
            }
        }
        acc = collect(&juxtapose(&acc, &shifted));
        let next = collect(&residuals);
        debug_assert_eq!(
            juxtapose(&acc, &next).sum_matrices(n),
            total,
            "sum conservation across rounds"
        );
        trace.push(NewEigMState {
            eigm_s: next.clone(),
            eigm_s_minus_x: acc.clone(),
            loop_count,
        });
        if next.is_empty() {
            return Ok((acc, trace));
        }
        pending = next;
    }
}
