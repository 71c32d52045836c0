//! Eigenmatrix decompositions of the adjoint operator `ad(S): Y -> [S, Y]`.
//!
//! For diagonalizable upper-triangular `S`, `ad(S)` is itself diagonalizable
//! and its spectrum is contained in the set of differences of diagonal
//! entries of `S`. [`decomp`] splits a nilpotent `N` along the eigenspaces of
//! `ad(S)`; [`exp_shift`] transports a single eigenmatrix of `ad(S)` to one
//! of `ad(S - X)` with the same eigenvalue; [`collect`] and [`juxtapose`] are
//! the bookkeeping operators on sequences of pairs.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::poly::RatPoly;
use crate::ratmat::{rat, Mat, Rational};
use crate::{Error, Result};

/// A matrix tagged with its `ad(S)` eigenvalue for some understood `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigPair {
    pub matrix: Mat,
    pub eigenvalue: Rational,
}

impl EigPair {
    pub fn new(matrix: Mat, eigenvalue: Rational) -> EigPair {
        EigPair { matrix, eigenvalue }
    }

    /// Checks `bracket(S, matrix) = eigenvalue * matrix`.
    pub fn is_eigenpair_of(&self, s: &Mat) -> Result<bool> {
        Ok(s.bracket(&self.matrix)? == self.matrix.scale(&self.eigenvalue))
    }
}

/// Ordered finite sequence of eigenpairs; possibly empty, possibly with
/// repeated eigenvalues unless produced by [`collect`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EigSeq {
    pairs: Vec<EigPair>,
}

impl EigSeq {
    pub fn new() -> EigSeq {
        EigSeq { pairs: Vec::new() }
    }

    pub fn from_pairs(pairs: Vec<EigPair>) -> EigSeq {
        EigSeq { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&EigPair> {
        self.pairs.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EigPair> {
        self.pairs.iter()
    }

    pub fn pairs(&self) -> &[EigPair] {
        &self.pairs
    }

    pub fn push(&mut self, pair: EigPair) {
        self.pairs.push(pair);
    }

    pub fn remove(&mut self, i: usize) -> EigPair {
        self.pairs.remove(i)
    }

    /// The matrices of the sequence, in order.
    pub fn matrices(&self) -> impl Iterator<Item = &Mat> {
        self.pairs.iter().map(|p| &p.matrix)
    }

    /// The eigenvalues of the sequence, in order.
    pub fn eigenvalues(&self) -> impl Iterator<Item = &Rational> {
        self.pairs.iter().map(|p| &p.eigenvalue)
    }

    /// The set of distinct eigenvalues.
    pub fn eigenvalue_set(&self) -> BTreeSet<Rational> {
        self.eigenvalues().cloned().collect()
    }

    pub fn eigenvalues_pairwise_distinct(&self) -> bool {
        self.eigenvalue_set().len() == self.pairs.len()
    }

    pub fn has_nonzero_eigenvalue(&self) -> bool {
        self.eigenvalues().any(|l| !l.is_zero())
    }

    /// Sum of all matrices; `n` fixes the dimension of the empty sum.
    pub fn sum_matrices(&self, n: usize) -> Mat {
        self.matrices()
            .fold(Mat::zero(n), |acc, m| acc.add(m).expect("same dimension"))
    }
}

impl IntoIterator for EigSeq {
    type Item = EigPair;
    type IntoIter = std::vec::IntoIter<EigPair>;
    fn into_iter(self) -> Self::IntoIter {
        self.pairs.into_iter()
    }
}

impl<'a> IntoIterator for &'a EigSeq {
    type Item = &'a EigPair;
    type IntoIter = std::slice::Iter<'a, EigPair>;
    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

impl FromIterator<EigPair> for EigSeq {
    fn from_iter<T: IntoIterator<Item = EigPair>>(iter: T) -> EigSeq {
        EigSeq {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// The adjoint operator: `ad_apply(S, Y) = [S, Y]`.
pub fn ad_apply(s: &Mat, y: &Mat) -> Result<Mat> {
    s.bracket(y)
}

/// Splits nilpotent `N` into eigenmatrices of `ad(S)`.
///
/// Candidate eigenvalues are the differences of diagonal entries of `S`; the
/// component at `lambda` is the Lagrange spectral projector
/// `prod_{mu != lambda} (ad(S) - mu) / (lambda - mu)` applied to `N`. Output
/// is ordered by ascending eigenvalue, has pairwise-distinct eigenvalues, no
/// zero matrices, and sums to `N`; every component lies in the span of the
/// iterated images `ad(S)^k(N)`.
///
/// Only differences taken with the row index above the column index (plus
/// zero) are enumerated: `ad(S)` maps each band of a strictly upper
/// triangular matrix into itself and higher bands, so on the invariant
/// subspace containing `N` its spectrum is exactly those values, and the
/// projector product over them already annihilates the rest.
pub fn decomp(s: &Mat, n_mat: &Mat) -> Result<EigSeq> {
    if s.dim() != n_mat.dim() {
        return Err(Error::DimMismatch {
            left: s.dim(),
            right: n_mat.dim(),
        });
    }
    if !s.is_upper_triangular() {
        return Err(Error::Precondition(
            "decomp: S must be upper triangular".into(),
        ));
    }
    if !n_mat.is_upper_triangular() {
        return Err(Error::Precondition(
            "decomp: N must be upper triangular".into(),
        ));
    }
    if !s.is_diagonalizable() {
        return Err(Error::Precondition(
            "decomp: S must be diagonalizable".into(),
        ));
    }
    if !n_mat.is_nilpotent() {
        return Err(Error::Precondition("decomp: N must be nilpotent".into()));
    }
    if n_mat.is_zero() {
        return Ok(EigSeq::new());
    }

    let diag: Vec<Rational> = s.diag_entries().cloned().collect();
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    candidates.insert(Rational::zero());
    for (i, a) in diag.iter().enumerate() {
        for b in diag.iter().skip(i + 1) {
            candidates.insert(a - b);
        }
    }
    let degree = candidates.len();

    let mut krylov = Vec::with_capacity(degree);
    krylov.push(n_mat.clone());
    for _ in 1..degree {
        let next = s.bracket(krylov.last().expect("nonempty"))?;
        krylov.push(next);
    }

    let full: Vec<Rational> = candidates.iter().cloned().collect();
    let product = RatPoly::from_roots(&full);
    let mut out = EigSeq::new();
    for lambda in &candidates {
        let linear = RatPoly::from_coeffs(vec![-lambda.clone(), Rational::one()]);
        let (numerator, rem) = product.div_rem(&linear)?;
        debug_assert!(rem.is_zero(), "candidate root must divide the product");
        let denom = numerator.eval(lambda);
        debug_assert!(!denom.is_zero(), "distinct candidates");
        let mut component = Mat::zero(s.dim());
        for (t, image) in krylov.iter().enumerate() {
            let c = numerator.coeff(t);
            if !c.is_zero() {
                component = component.add(&image.scale(&c))?;
            }
        }
        component = component.scale(&denom.recip());
        if !component.is_zero() {
            out.push(EigPair::new(component, lambda.clone()));
        }
    }
    debug_assert_eq!(out.sum_matrices(s.dim()), *n_mat);
    Ok(out)
}

/// Truncated exponential series `sum_{j=0}^{n-1} (mu^-j / j!) ad(x)^j (m)`,
/// with early exit once a bracket power vanishes.
pub(crate) fn exp_series(x: &Mat, mu: &Rational, m: &Mat) -> Mat {
    let n = m.dim();
    let mut sum = m.clone();
    let mut term = m.clone();
    let mut coeff = Rational::one();
    for j in 1..n {
        term = x.bracket(&term).expect("same dimension");
        if term.is_zero() {
            break;
        }
        coeff /= mu * rat(j as i64);
        sum = sum.add(&term.scale(&coeff)).expect("same dimension");
    }
    sum
}

/// Transports an eigenmatrix of `ad(S)` to one of `ad(S - X)`.
///
/// Requires `mu != 0`, `X` strictly upper triangular, `[S, X] = mu X`, and
/// `[S, M] = lambda M` for the input pair `(M, lambda)`. The result carries
/// the same eigenvalue and satisfies `[S - X, out] = lambda * out`; its bands
/// below the lowest nonzero band of `X` coincide with those of `M`.
pub fn exp_shift(x: &Mat, mu: &Rational, n_pair: &EigPair, s: &Mat) -> Result<EigPair> {
    if x.dim() != s.dim() || n_pair.matrix.dim() != s.dim() {
        return Err(Error::DimMismatch {
            left: s.dim(),
            right: if x.dim() != s.dim() {
                x.dim()
            } else {
                n_pair.matrix.dim()
            },
        });
    }
    if mu.is_zero() {
        return Err(Error::Precondition("exp_shift: mu must be nonzero".into()));
    }
    if !x.is_strictly_upper() {
        return Err(Error::Precondition(
            "exp_shift: X must be strictly upper triangular".into(),
        ));
    }
    if s.bracket(x)? != x.scale(mu) {
        return Err(Error::Precondition(
            "exp_shift: X must satisfy bracket(S, X) = mu*X".into(),
        ));
    }
    if !n_pair.is_eigenpair_of(s)? {
        return Err(Error::Precondition(
            "exp_shift: (M, lambda) must satisfy bracket(S, M) = lambda*M".into(),
        ));
    }
    Ok(EigPair::new(
        exp_series(x, mu, &n_pair.matrix),
        n_pair.eigenvalue.clone(),
    ))
}

/// Groups pairs by exact eigenvalue, sums each group, drops zero sums.
/// Output is ordered by ascending eigenvalue.
pub fn collect(seq: &EigSeq) -> EigSeq {
    let mut groups: BTreeMap<Rational, Mat> = BTreeMap::new();
    for pair in seq {
        match groups.get_mut(&pair.eigenvalue) {
            Some(acc) => {
                *acc = acc.add(&pair.matrix).expect("same dimension");
            }
            None => {
                groups.insert(pair.eigenvalue.clone(), pair.matrix.clone());
            }
        }
    }
    groups
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(l, m)| EigPair::new(m, l))
        .collect()
}

/// Concatenation of two sequences, order preserved.
pub fn juxtapose(a: &EigSeq, b: &EigSeq) -> EigSeq {
    a.iter().chain(b.iter()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag124() -> Mat {
        Mat::diagonal(&[rat(1), rat(2), rat(4)])
    }

    #[test]
    fn ad_apply_basics() {
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        assert!(ad_apply(&s, &s).unwrap().is_zero());
        assert!(ad_apply(&Mat::identity(2), &Mat::unit(2, 0, 1))
            .unwrap()
            .is_zero());
        assert_eq!(
            ad_apply(&s, &Mat::unit(2, 0, 1)).unwrap(),
            Mat::unit(2, 0, 1).neg()
        );
    }

    #[test]
    fn decomp_commuting_nonzero_gives_single_zero_pair() {
        let s = Mat::identity(2);
        let n = Mat::unit(2, 0, 1);
        let seq = decomp(&s, &n).unwrap();
        assert_eq!(seq.pairs(), &[EigPair::new(n, rat(0))]);
    }

    #[test]
    fn decomp_of_zero_is_empty() {
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        assert!(decomp(&s, &Mat::zero(2)).unwrap().is_empty());
    }

    #[test]
    fn decomp_two_by_two() {
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        let e12 = Mat::unit(2, 0, 1);
        let seq = decomp(&s, &e12).unwrap();
        assert_eq!(seq.pairs(), &[EigPair::new(e12, rat(-1))]);
    }

    #[test]
    fn decomp_three_by_three_full_band() {
        let s = diag124();
        let n = Mat::from_i64_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let seq = decomp(&s, &n).unwrap();
        let expected = [
            EigPair::new(Mat::unit(3, 0, 2), rat(-3)),
            EigPair::new(Mat::unit(3, 1, 2), rat(-2)),
            EigPair::new(Mat::unit(3, 0, 1), rat(-1)),
        ];
        assert_eq!(seq.pairs(), &expected);
        assert_eq!(seq.sum_matrices(3), n);
        for pair in &seq {
            assert!(pair.is_eigenpair_of(&s).unwrap());
        }
    }

    #[test]
    fn decomp_groups_repeated_differences() {
        let s = Mat::diagonal(&[rat(1), rat(2), rat(3)]);
        let n = Mat::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let seq = decomp(&s, &n).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.get(0).unwrap().eigenvalue, rat(-1));
        assert_eq!(seq.get(0).unwrap().matrix, n);
    }

    #[test]
    fn decomp_rejects_bad_inputs() {
        let bad_s = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let n = Mat::unit(2, 0, 1);
        assert!(matches!(
            decomp(&bad_s, &n).unwrap_err(),
            Error::Precondition(msg) if msg.contains("diagonalizable")
        ));
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        let bad_n = Mat::from_i64_rows(&[&[0, 1], &[0, 1]]);
        assert!(matches!(
            decomp(&s, &bad_n).unwrap_err(),
            Error::Precondition(msg) if msg.contains("nilpotent")
        ));
        let lower = Mat::from_i64_rows(&[&[0, 0], &[1, 0]]);
        assert!(matches!(
            decomp(&lower, &n).unwrap_err(),
            Error::Precondition(msg) if msg.contains("upper triangular")
        ));
    }

    #[test]
    fn exp_shift_with_commuting_x_is_identity() {
        // [E13, E23] = 0, so the series truncates at j = 0.
        let s = diag124();
        let x = Mat::unit(3, 0, 2);
        let pair = EigPair::new(Mat::unit(3, 1, 2), rat(-2));
        let out = exp_shift(&x, &rat(-3), &pair, &s).unwrap();
        assert_eq!(out, pair);
    }

    #[test]
    fn exp_shift_three_by_three() {
        // X = E12 has mu = -1; shifting (E23, -2) gives E23 - E13 since
        // (-1)^-1 [E12, E23] = -E13 and the j = 2 term vanishes.
        let s = diag124();
        let x = Mat::unit(3, 0, 1);
        let pair = EigPair::new(Mat::unit(3, 1, 2), rat(-2));
        let out = exp_shift(&x, &rat(-1), &pair, &s).unwrap();
        let expected = Mat::unit(3, 1, 2).sub(&Mat::unit(3, 0, 2)).unwrap();
        assert_eq!(out, EigPair::new(expected.clone(), rat(-2)));
        // eigen-identity for ad(S - X)
        let shifted = s.sub(&x).unwrap();
        assert_eq!(
            shifted.bracket(&expected).unwrap(),
            expected.scale(&rat(-2))
        );
    }

    #[test]
    fn exp_shift_preserves_bands_below_x() {
        let s = diag124();
        let x = Mat::unit(3, 0, 1); // lowest nonzero band of X is 1
        let pair = EigPair::new(Mat::unit(3, 1, 2), rat(-2));
        let out = exp_shift(&x, &rat(-1), &pair, &s).unwrap();
        assert_eq!(
            out.matrix.diagonal_band(1).unwrap(),
            pair.matrix.diagonal_band(1).unwrap()
        );
    }

    #[test]
    fn exp_shift_rejects_bad_inputs() {
        let s = diag124();
        let pair = EigPair::new(Mat::unit(3, 1, 2), rat(-2));
        let x = Mat::unit(3, 0, 1);
        assert!(matches!(
            exp_shift(&x, &rat(0), &pair, &s).unwrap_err(),
            Error::Precondition(msg) if msg.contains("mu")
        ));
        assert!(matches!(
            exp_shift(&Mat::identity(3), &rat(-1), &pair, &s).unwrap_err(),
            Error::Precondition(msg) if msg.contains("strictly upper")
        ));
        // X = 0 is not a mu-eigenmatrix for mu != 0 in the checked sense used
        // here (the bracket identity holds trivially), so callers route
        // around it; the identity check itself accepts it.
        assert!(matches!(
            exp_shift(&x, &rat(5), &pair, &s).unwrap_err(),
            Error::Precondition(msg) if msg.contains("bracket(S, X)")
        ));
        let bad_pair = EigPair::new(Mat::unit(3, 1, 2), rat(7));
        assert!(matches!(
            exp_shift(&x, &rat(-1), &bad_pair, &s).unwrap_err(),
            Error::Precondition(msg) if msg.contains("lambda")
        ));
    }

    #[test]
    fn collect_cancels_and_orders() {
        let m = Mat::unit(2, 0, 1);
        let cancel = EigSeq::from_pairs(vec![
            EigPair::new(m.clone(), rat(1)),
            EigPair::new(m.neg(), rat(1)),
        ]);
        assert!(collect(&cancel).is_empty());

        let a = Mat::unit(3, 0, 1);
        let b = Mat::unit(3, 0, 2);
        let c = Mat::unit(3, 1, 2);
        let seq = EigSeq::from_pairs(vec![
            EigPair::new(a.clone(), rat(2)),
            EigPair::new(b.clone(), rat(2)),
            EigPair::new(c.clone(), rat(0)),
        ]);
        let got = collect(&seq);
        assert_eq!(
            got.pairs(),
            &[
                EigPair::new(c, rat(0)),
                EigPair::new(a.add(&b).unwrap(), rat(2)),
            ]
        );
        assert_eq!(collect(&got), got, "idempotent");
        assert_eq!(got.sum_matrices(3), seq.sum_matrices(3));
        assert!(collect(&EigSeq::new()).is_empty());
    }

    #[test]
    fn juxtapose_concatenates() {
        let a = EigSeq::from_pairs(vec![EigPair::new(Mat::unit(2, 0, 1), rat(1))]);
        let b = EigSeq::from_pairs(vec![EigPair::new(Mat::identity(2), rat(2))]);
        assert_eq!(juxtapose(&EigSeq::new(), &b), b);
        assert_eq!(juxtapose(&a, &EigSeq::new()), a);
        let ab = juxtapose(&a, &b);
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.get(0), a.get(0));
        assert_eq!(ab.get(1), b.get(0));
    }
}
