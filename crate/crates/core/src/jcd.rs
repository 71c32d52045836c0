//! The decomposition driver, its lexicographic termination measure, and the
//! pluggable choice of which eigenmatrix to absorb next.
//!
//! Each round moves one nonzero-eigenvalue component `N_i0` of the current
//! splitting from the nilpotent side to the diagonalizable side. The measure
//! counts, per diagonal band, how many nonzero-eigenvalue components touch
//! that band; absorbing a component clears its lowest band without touching
//! lower ones, so the vector of counts strictly decreases lexicographically
//! and the driver stops after at most `n(n-1)^2/2` rounds.

use num_traits::Zero;

use crate::eigendecomp::{decomp, EigSeq};
use crate::neweigm::new_eig_m;
use crate::ratmat::{Mat, Rational};
use crate::{Error, Result};

/// Per-band counts `(c_1, ..., c_{n-1})`, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaVector {
    counts: Vec<usize>,
}

impl GammaVector {
    /// Reads the measure off an eigenmatrix decomposition: `counts[k-1]` is
    /// the number of nonzero-eigenvalue components with a nonzero `k`-band.
    pub(crate) fn from_seq(seq: &EigSeq, n: usize) -> GammaVector {
        let counts = (1..n)
            .map(|k| {
                seq.iter()
                    .filter(|p| !p.eigenvalue.is_zero())
                    .filter(|p| {
                        !p.matrix
                            .diagonal_band(k)
                            .expect("components are strictly upper and k < n")
                            .is_zero()
                    })
                    .count()
            })
            .collect::<Vec<_>>();
        debug_assert!(counts.iter().all(|&c| c <= n * (n - 1) / 2));
        GammaVector { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

/// The measure of `(S, N)`: decomposes `N` under `ad(S)` and counts nonzero
/// bands of nonzero-eigenvalue components. Zero iff `[S, N] = 0`.
pub fn gamma(s: &Mat, n_mat: &Mat) -> Result<GammaVector> {
    let seq = decomp(s, n_mat)?;
    Ok(GammaVector::from_seq(&seq, s.dim()))
}

/// Deterministic choice of the next component to absorb.
///
/// `pick` is only consulted when some eigenvalue is nonzero and must return
/// the index of such a pair; the driver treats anything else as an internal
/// error. The final `(S', N')` does not depend on the strategy (the
/// decomposition is unique); the trace does.
pub trait PickStrategy {
    fn name(&self) -> &'static str;
    fn pick(&self, seq: &EigSeq) -> Option<usize>;
}

/// Picks the first nonzero-eigenvalue pair in sequence order.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstInCollectOrder;

impl PickStrategy for FirstInCollectOrder {
    fn name(&self) -> &'static str {
        "first"
    }

    fn pick(&self, seq: &EigSeq) -> Option<usize> {
        seq.iter().position(|p| !p.eigenvalue.is_zero())
    }
}

/// Picks the nonzero-eigenvalue pair whose lowest nonzero band is smallest,
/// breaking ties by ascending eigenvalue. Default strategy.
#[derive(Debug, Clone, Copy, Default)]
pub struct LowestBandFirst;

impl PickStrategy for LowestBandFirst {
    fn name(&self) -> &'static str {
        "lowest-band"
    }

    fn pick(&self, seq: &EigSeq) -> Option<usize> {
        seq.iter()
            .enumerate()
            .filter(|(_, p)| !p.eigenvalue.is_zero())
            .min_by_key(|(_, p)| {
                (
                    p.matrix.lowest_nonzero_band().unwrap_or(usize::MAX),
                    p.eigenvalue.clone(),
                )
            })
            .map(|(i, _)| i)
    }
}

/// Which routine refreshes the splitting after an absorption.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Via {
    /// Transport the remaining pairs with the shift procedure (default).
    NewEigM,
    /// Recompute the decomposition of the new pair from scratch.
    Decomp,
}

/// One driver round: the state entering the round and, unless the round is
/// terminal, the component chosen for absorption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JcdStep {
    pub s: Mat,
    pub n: Mat,
    pub gamma: GammaVector,
    pub chosen_eigenvalue: Option<Rational>,
    pub chosen_matrix: Option<Mat>,
}

/// Full driver history; the last step is the terminal state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JcdTrace {
    pub steps: Vec<JcdStep>,
}

impl JcdTrace {
    /// Number of absorption rounds (terminal step excluded).
    pub fn loops(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JcdResult {
    pub s_prime: Mat,
    pub n_prime: Mat,
    pub trace: JcdTrace,
}

/// Jordan-Chevalley decomposition of `S + N` via repeated absorption, using
/// the shift procedure to refresh the splitting between rounds.
///
/// Requires `S`, `N` upper triangular, `S` diagonalizable, `N` nilpotent;
/// `[S, N] = 0` is not required. Returns `(S', N')` with
/// `S' + N' = S + N`, `S'` diagonalizable, `N'` nilpotent, `[S', N'] = 0`,
/// and both parts inside the bracket closure of `{S, N}`.
pub fn jc_d(s: &Mat, n_mat: &Mat, pick: &dyn PickStrategy) -> Result<JcdResult> {
    jc_d_via(s, n_mat, pick, Via::NewEigM)
}

/// As [`jc_d`] with an explicit refresh route; both routes return identical
/// results and are cross-checked in tests.
pub fn jc_d_via(s: &Mat, n_mat: &Mat, pick: &dyn PickStrategy, via: Via) -> Result<JcdResult> {
    let dim = s.dim();
    let mut seq = decomp(s, n_mat)?;
    let bound = dim * (dim - 1) * (dim - 1) / 2;
    let mut s_cur = s.clone();
    let mut n_cur = n_mat.clone();
    let mut steps: Vec<JcdStep> = Vec::new();
    let mut prev_gamma: Option<GammaVector> = None;
    loop {
        let g = GammaVector::from_seq(&seq, dim);
        if let Some(prev) = &prev_gamma {
            if g >= *prev {
                return Err(Error::Invariant(
                    "jc_d: gamma failed to decrease strictly".into(),
                ));
            }
        }
        if !seq.has_nonzero_eigenvalue() {
            steps.push(JcdStep {
                s: s_cur.clone(),
                n: n_cur.clone(),
                gamma: g,
                chosen_eigenvalue: None,
                chosen_matrix: None,
            });
            break;
        }
        if steps.len() >= bound {
            return Err(Error::Invariant(format!(
                "jc_d: loop bound {bound} exceeded"
            )));
        }
        let idx = pick
            .pick(&seq)
            .ok_or_else(|| Error::Invariant("jc_d: strategy returned no pick".into()))?;
        let chosen = seq
            .get(idx)
            .cloned()
            .ok_or_else(|| Error::Invariant("jc_d: pick index out of range".into()))?;
        if chosen.eigenvalue.is_zero() {
            return Err(Error::Invariant(
                "jc_d: strategy picked a zero eigenvalue".into(),
            ));
        }
        steps.push(JcdStep {
            s: s_cur.clone(),
            n: n_cur.clone(),
            gamma: g.clone(),
            chosen_eigenvalue: Some(chosen.eigenvalue.clone()),
            chosen_matrix: Some(chosen.matrix.clone()),
        });
        let mut remaining = seq;
        remaining.remove(idx);
        let s_next = s_cur.add(&chosen.matrix)?;
        let n_next = n_cur.sub(&chosen.matrix)?;
        seq = match via {
            Via::NewEigM => {
                new_eig_m(&remaining, &chosen.matrix.neg(), &chosen.eigenvalue, &s_cur)?
            }
            Via::Decomp => decomp(&s_next, &n_next)?,
        };
        s_cur = s_next;
        n_cur = n_next;
        prev_gamma = Some(g);
    }
    debug_assert!(s_cur.bracket(&n_cur)?.is_zero());
    debug_assert_eq!(s_cur.add(&n_cur)?, s.add(n_mat)?);
    Ok(JcdResult {
        s_prime: s_cur,
        n_prime: n_cur,
        trace: JcdTrace { steps },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::chevalley_jcd;
    use crate::ratmat::rat;

    #[test]
    fn gamma_zero_iff_commuting() {
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        assert!(gamma(&s, &Mat::zero(2)).unwrap().is_zero());
        let commuting = Mat::unit(2, 0, 1);
        assert!(gamma(&Mat::identity(2), &commuting).unwrap().is_zero());
        let g = gamma(&s, &Mat::unit(2, 0, 1)).unwrap();
        assert_eq!(g.counts(), &[1]);
        assert!(!g.is_zero());
    }

    #[test]
    fn gamma_orders_lexicographically() {
        let a = GammaVector { counts: vec![1, 0] };
        let b = GammaVector { counts: vec![0, 5] };
        let c = GammaVector { counts: vec![0, 0] };
        assert!(b < a);
        assert!(c < b);
    }

    #[test]
    fn commuting_input_returns_unchanged_with_zero_loops() {
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        let n = Mat::zero(2);
        let r = jc_d(&s, &n, &LowestBandFirst).unwrap();
        assert_eq!(r.s_prime, s);
        assert_eq!(r.n_prime, n);
        assert_eq!(r.trace.loops(), 0);
        assert_eq!(r.trace.steps.len(), 1);
        assert!(r.trace.steps[0].chosen_eigenvalue.is_none());
    }

    #[test]
    fn two_by_two_absorbs_in_one_loop() {
        let s = Mat::from_i64_rows(&[&[0, 1], &[0, 1]]);
        let n = Mat::unit(2, 0, 1);
        let r = jc_d(&s, &n, &LowestBandFirst).unwrap();
        assert_eq!(r.s_prime, Mat::from_i64_rows(&[&[0, 2], &[0, 1]]));
        assert!(r.n_prime.is_zero());
        assert_eq!(r.trace.loops(), 1);
        assert!(r.s_prime.is_diagonalizable());
        // independent classical oracle on A = S + N
        let (os, on) = chevalley_jcd(&s.add(&n).unwrap());
        assert_eq!(os, r.s_prime);
        assert_eq!(on, r.n_prime);
    }

    #[test]
    fn strategies_agree_on_final_parts() {
        let s = Mat::diagonal(&[rat(1), rat(2), rat(4)]);
        let n = Mat::from_i64_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let a = jc_d(&s, &n, &FirstInCollectOrder).unwrap();
        let b = jc_d(&s, &n, &LowestBandFirst).unwrap();
        assert_eq!(a.s_prime, b.s_prime);
        assert_eq!(a.n_prime, b.n_prime);
        // distinct diagonal means A itself is diagonalizable
        assert_eq!(a.s_prime, s.add(&n).unwrap());
        assert!(a.n_prime.is_zero());
    }

    #[test]
    fn trace_gammas_strictly_decrease_and_conserve_sum() {
        let s = Mat::diagonal(&[rat(1), rat(2), rat(4)]);
        let n = Mat::from_i64_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let r = jc_d(&s, &n, &LowestBandFirst).unwrap();
        let total = s.add(&n).unwrap();
        for w in r.trace.steps.windows(2) {
            assert!(w[1].gamma < w[0].gamma);
        }
        for step in &r.trace.steps {
            assert_eq!(step.s.add(&step.n).unwrap(), total);
        }
        assert!(r.trace.loops() <= 3 * 2 * 2 / 2);
    }

    #[test]
    fn via_decomp_matches_via_neweigm() {
        let s = Mat::diagonal(&[rat(1), rat(2), rat(4)]);
        let n = Mat::from_i64_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let a = jc_d_via(&s, &n, &LowestBandFirst, Via::NewEigM).unwrap();
        let b = jc_d_via(&s, &n, &LowestBandFirst, Via::Decomp).unwrap();
        assert_eq!(a.s_prime, b.s_prime);
        assert_eq!(a.n_prime, b.n_prime);
    }

    #[test]
    fn rejects_non_diagonalizable_s() {
        let s = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let err = jc_d(&s, &Mat::zero(2), &LowestBandFirst).unwrap_err();
        assert!(matches!(err, Error::Precondition(msg) if msg.contains("diagonalizable")));
    }
}
