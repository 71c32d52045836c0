//! Dense square matrices over arbitrary-precision rationals.
//!
//! All arithmetic is exact. Operations that can fail on mismatched inputs
//! return [`crate::Result`]; everything else is total.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::RatPoly;
use crate::rowspace::DependencyFinder;
use crate::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics if `q == 0`; intended for literals.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Square matrix with row-major [`Rational`] entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    entries: Vec<Rational>,
}

impl Mat {
    /// The `n x n` zero matrix. Panics if `n == 0`.
    pub fn zero(n: usize) -> Mat {
        assert!(n > 0, "dimension must be positive");
        Mat {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    /// The `n x n` identity matrix. Panics if `n == 0`.
    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds an `n x n` matrix entrywise. Panics if `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Mat {
        assert!(n > 0, "dimension must be positive");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Mat { n, entries }
    }

    /// Builds a matrix from rows, which must be square and nonempty.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Mat> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Precondition("matrix must be nonempty".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimMismatch {
                    left: n,
                    right: row.len(),
                });
            }
        }
        Ok(Mat {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-literal constructor for tests and docs. Panics on ragged rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Mat {
        let n = rows.len();
        assert!(n > 0, "dimension must be positive");
        Mat::from_fn(n, |i, j| {
            assert_eq!(rows[i].len(), n, "row {i} has wrong length");
            rat(rows[i][j])
        })
    }

    /// Diagonal matrix with the given entries. Panics if empty.
    pub fn diagonal(diag: &[Rational]) -> Mat {
        assert!(!diag.is_empty(), "dimension must be positive");
        Mat::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// The matrix unit `E_ij` (1 at row `i`, column `j`, zero elsewhere).
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        assert!(i < n && j < n, "unit index out of range");
        let mut m = Mat::zero(n);
        m.entries[i * n + j] = Rational::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.n && j < self.n, "index out of range");
        &self.entries[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.n && j < self.n, "index out of range");
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn diag_entries(&self) -> impl Iterator<Item = &Rational> {
        (0..self.n).map(|i| &self.entries[i * self.n + i])
    }

    fn check_dim(&self, rhs: &Mat) -> Result<()> {
        if self.n == rhs.n {
            Ok(())
        } else {
            Err(Error::DimMismatch {
                left: self.n,
                right: rhs.n,
            })
        }
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        self.check_dim(rhs)?;
        Ok(Mat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        self.check_dim(rhs)?;
        Ok(Mat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(Mat { n, entries })
    }

    pub fn scale(&self, c: &Rational) -> Mat {
        Mat {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat {
            n: self.n,
            entries: self.entries.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Commutator `[self, rhs] = self*rhs - rhs*self`.
    pub fn bracket(&self, rhs: &Mat) -> Result<Mat> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    pub fn pow(&self, k: usize) -> Mat {
        let mut acc = Mat::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> Rational {
        self.diag_entries().sum()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.at(i, j).is_zero()))
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.at(i, j).is_zero()))
    }

    /// Extracts the `k`-th diagonal band of an upper-triangular matrix;
    /// `k = 0` is the main diagonal, `k <= n-1`. The bands of an
    /// upper-triangular matrix sum back to it.
    pub fn diagonal_band(&self, k: usize) -> Result<DiagonalBand> {
        if k >= self.n {
            return Err(Error::BandOutOfRange { k, n: self.n });
        }
        if !self.is_upper_triangular() {
            return Err(Error::Precondition(
                "diagonal_band: matrix must be upper triangular".into(),
            ));
        }
        let band = Mat::from_fn(self.n, |i, j| {
            if j == i + k {
                self.at(i, j).clone()
            } else {
                Rational::zero()
            }
        });
        Ok(DiagonalBand { k, band })
    }

    /// Least `k` whose diagonal band is nonzero (`0` is the main diagonal);
    /// `None` when the diagonal and everything above it vanish.
    pub fn lowest_nonzero_band(&self) -> Option<usize> {
        (0..self.n).find(|&k| (0..self.n - k).any(|i| !self.at(i, i + k).is_zero()))
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let lead = a.at(col, col).clone();
            for j in 0..n {
                let v = a.at(col, j) / &lead;
                a.set(col, j, v);
                let w = inv.at(col, j) / &lead;
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.at(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    a.set(r, j, v);
                    let w = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    /// True iff some power (equivalently the `n`-th) vanishes.
    pub fn is_nilpotent(&self) -> bool {
        if self.is_upper_triangular() {
            // A triangular spectrum sits on the diagonal, so nilpotency is
            // exactly a zero diagonal.
            return self.diag_entries().all(|d| d.is_zero());
        }
        let mut p = self.clone();
        for _ in 0..self.n {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self).expect("same dimension");
        }
        p.is_zero()
    }

    /// Monic minimal polynomial, found as the first linear dependency among
    /// the flattened powers `I, A, A^2, ...`.
    pub fn minimal_polynomial(&self) -> RatPoly {
        let mut finder = DependencyFinder::new(self.n * self.n);
        let mut power = Mat::identity(self.n);
        for _ in 0..=self.n {
            if let Some(combo) = finder.offer(&power.entries) {
                let k = combo.len();
                let mut coeffs = vec![Rational::zero(); k + 1];
                for (i, c) in combo.into_iter().enumerate() {
                    coeffs[i] = -c;
                }
                coeffs[k] = Rational::one();
                return RatPoly::from_coeffs(coeffs);
            }
            power = power.mul(self).expect("same dimension");
        }
        unreachable!("powers of an n x n matrix are dependent by degree n")
    }

    /// True iff the minimal polynomial is squarefree.
    pub fn is_diagonalizable(&self) -> bool {
        if self.is_upper_triangular() {
            // The eigenvalues of a triangular matrix are its diagonal, so
            // diagonalizability is equivalent to annihilation by the
            // squarefree product over the distinct diagonal values. With a
            // repetition-free diagonal that product is the characteristic
            // polynomial, which always annihilates.
            let distinct: BTreeSet<Rational> = self.diag_entries().cloned().collect();
            if distinct.len() == self.n {
                return true;
            }
            let mut p = Mat::identity(self.n);
            for d in &distinct {
                if p.is_zero() {
                    break;
                }
                let shifted = Mat::from_fn(self.n, |i, j| {
                    if i == j {
                        self.at(i, j) - d
                    } else {
                        self.at(i, j).clone()
                    }
                });
                p = p.mul(&shifted).expect("same dimension");
            }
            return p.is_zero();
        }
        let m = self.minimal_polynomial();
        let g = RatPoly::gcd(&m, &m.derivative());
        g.degree() == Some(0)
    }

    pub(crate) fn flatten(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub(crate) fn from_flat(n: usize, entries: Vec<Rational>) -> Mat {
        assert_eq!(entries.len(), n * n, "flat entry count mismatch");
        Mat { n, entries }
    }

    /// Largest absolute value among the entries (infinity-style bound).
    pub(crate) fn max_abs_row_sum(&self) -> Rational {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j).abs()).sum::<Rational>())
            .max()
            .expect("nonempty matrix")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}", self)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// One superdiagonal of a matrix, tagged with its band index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalBand {
    k: usize,
    band: Mat,
}

impl DiagonalBand {
    pub fn index(&self) -> usize {
        self.k
    }

    /// The band as a full matrix, zero off the `k`-th superdiagonal.
    pub fn matrix(&self) -> &Mat {
        &self.band
    }

    pub fn into_matrix(self) -> Mat {
        self.band
    }

    pub fn is_zero(&self) -> bool {
        self.band.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_reduce() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-3, -6), ratio(1, 2));
        assert_eq!(rat(5), ratio(5, 1));
    }

    #[test]
    fn bracket_of_diagonal_and_unit() {
        let s = Mat::diagonal(&[rat(1), rat(2)]);
        let e12 = Mat::unit(2, 0, 1);
        // [diag(1,2), E12] = (1-2) E12
        assert_eq!(s.bracket(&e12).unwrap(), e12.neg());
    }

    #[test]
    fn mul_and_pow_agree() {
        let a = Mat::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.pow(2), a.mul(&a).unwrap());
        assert_eq!(a.pow(0), Mat::identity(2));
    }

    #[test]
    fn dim_mismatch_is_reported() {
        let a = Mat::identity(2);
        let b = Mat::identity(3);
        assert_eq!(
            a.add(&b).unwrap_err(),
            Error::DimMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn triangularity_predicates() {
        let u = Mat::from_i64_rows(&[&[1, 2], &[0, 3]]);
        let s = Mat::from_i64_rows(&[&[0, 2], &[0, 0]]);
        let l = Mat::from_i64_rows(&[&[0, 0], &[1, 0]]);
        assert!(u.is_upper_triangular() && !u.is_strictly_upper());
        assert!(s.is_upper_triangular() && s.is_strictly_upper());
        assert!(!l.is_upper_triangular());
    }

    #[test]
    fn diagonal_band_extraction() {
        let a = Mat::from_i64_rows(&[&[1, 2, 3], &[0, 4, 5], &[0, 0, 6]]);
        let b0 = a.diagonal_band(0).unwrap();
        assert_eq!(b0.index(), 0);
        assert_eq!(b0.matrix(), &Mat::diagonal(&[rat(1), rat(4), rat(6)]));
        let b1 = a.diagonal_band(1).unwrap();
        assert_eq!(b1.index(), 1);
        assert_eq!(
            b1.matrix(),
            &Mat::from_i64_rows(&[&[0, 2, 0], &[0, 0, 5], &[0, 0, 0]])
        );
        let b2 = a.diagonal_band(2).unwrap();
        assert_eq!(
            b2.matrix(),
            &Mat::from_i64_rows(&[&[0, 0, 3], &[0, 0, 0], &[0, 0, 0]])
        );
        assert!(b2.matrix().diagonal_band(1).unwrap().is_zero());
        assert_eq!(
            a.diagonal_band(3).unwrap_err(),
            Error::BandOutOfRange { k: 3, n: 3 }
        );
        // The bands jointly reconstruct an upper-triangular matrix.
        let sum = (0..3).fold(Mat::zero(3), |acc, k| {
            acc.add(a.diagonal_band(k).unwrap().matrix()).unwrap()
        });
        assert_eq!(sum, a);
    }

    #[test]
    fn diagonal_band_of_identity_and_shifted_units() {
        let id = Mat::identity(3);
        assert_eq!(id.diagonal_band(0).unwrap().matrix(), &id);
        assert!(id.diagonal_band(1).unwrap().is_zero());
        let m = Mat::unit(3, 0, 2).add(&Mat::unit(3, 0, 1)).unwrap();
        assert_eq!(m.diagonal_band(2).unwrap().matrix(), &Mat::unit(3, 0, 2));
    }

    #[test]
    fn diagonal_band_requires_upper_triangular() {
        let lower = Mat::from_i64_rows(&[&[1, 0], &[5, 2]]);
        assert!(matches!(
            lower.diagonal_band(0).unwrap_err(),
            Error::Precondition(_)
        ));
    }

    #[test]
    fn lowest_nonzero_band_scans_upward() {
        let a = Mat::from_i64_rows(&[&[0, 0, 7], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(a.lowest_nonzero_band(), Some(2));
        assert_eq!(Mat::zero(3).lowest_nonzero_band(), None);
        assert_eq!(Mat::unit(3, 0, 1).lowest_nonzero_band(), Some(1));
        assert_eq!(Mat::identity(2).lowest_nonzero_band(), Some(0));
    }

    #[test]
    fn minimal_polynomial_of_distinct_diagonal() {
        let a = Mat::diagonal(&[rat(1), rat(2)]);
        // (x-1)(x-2) = x^2 - 3x + 2
        assert_eq!(
            a.minimal_polynomial(),
            RatPoly::from_i64_coeffs(&[2, -3, 1])
        );
    }

    #[test]
    fn minimal_polynomial_of_jordan_block() {
        let j = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        // (x-1)^2
        assert_eq!(
            j.minimal_polynomial(),
            RatPoly::from_i64_coeffs(&[1, -2, 1])
        );
        let scalar = Mat::diagonal(&[rat(3), rat(3)]);
        assert_eq!(
            scalar.minimal_polynomial(),
            RatPoly::from_i64_coeffs(&[-3, 1])
        );
    }

    #[test]
    fn diagonalizability_by_squarefree_minimal_polynomial() {
        assert!(Mat::diagonal(&[rat(1), rat(2)]).is_diagonalizable());
        assert!(Mat::from_i64_rows(&[&[0, 1], &[0, 1]]).is_diagonalizable());
        assert!(!Mat::from_i64_rows(&[&[1, 1], &[0, 1]]).is_diagonalizable());
        assert!(Mat::zero(2).is_diagonalizable());
    }

    #[test]
    fn diagonalizability_with_repeated_triangular_spectrum() {
        // Repeated eigenvalue 1, but the off-diagonal coupling only ties
        // distinct eigenvalues together, so the matrix is still semisimple.
        let ok = Mat::from_i64_rows(&[&[1, 0, 5], &[0, 1, 0], &[0, 0, 2]]);
        assert!(ok.is_diagonalizable());
        let bad = Mat::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert!(!bad.is_diagonalizable());
    }

    #[test]
    fn diagonalizability_of_non_triangular_input() {
        // Falls back on the minimal-polynomial route.
        assert!(Mat::from_i64_rows(&[&[0, 1], &[1, 0]]).is_diagonalizable());
        assert!(!Mat::from_i64_rows(&[&[1, -1], &[1, -1]]).is_diagonalizable());
    }

    #[test]
    fn nilpotency() {
        assert!(Mat::unit(3, 0, 2).is_nilpotent());
        assert!(Mat::zero(2).is_nilpotent());
        assert!(!Mat::from_i64_rows(&[&[0, 1], &[0, 1]]).is_nilpotent());
        // nilpotent but not triangular
        let a = Mat::from_i64_rows(&[&[1, -1], &[1, -1]]);
        assert!(a.is_nilpotent());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Mat::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(2));
        assert!(Mat::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn display_is_compact() {
        let a = Mat::from_rows(vec![vec![rat(1), ratio(-1, 2)], vec![rat(0), rat(3)]]).unwrap();
        assert_eq!(a.to_string(), "[1 -1/2; 0 3]");
    }
}
