//! Internal exact row-space helpers shared by `ratmat` and `liealg`.

use num_traits::{One, Zero};

use crate::ratmat::Rational;

fn first_nonzero(v: &[Rational]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

/// Incrementally maintained reduced row echelon basis.
///
/// Rows are pivot-normalized, mutually reduced, and kept sorted by pivot
/// column, so two `Rref` values describe the same row space iff their `rows`
/// slices are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rref {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(width: usize) -> Self {
        Rref {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Residual of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj -= &f * rj;
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts `v`; returns `true` iff it enlarged the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = first_nonzero(&w) else {
            return false;
        };
        let lead = w[p].clone();
        for wj in w.iter_mut() {
            *wj /= &lead;
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (rj, wj) in row.iter_mut().zip(&w) {
                *rj -= &f * wj;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }
}

/// Canonical basis of the joint kernel of the given row constraints: all `v`
/// with `row . v = 0` for every row.
pub(crate) fn kernel_basis(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let mut rref = Rref::new(width);
    for row in rows {
        rref.insert(row);
    }
    let pivots: Vec<usize> = rref.pivots.clone();
    let mut basis = Vec::new();
    for free in 0..width {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::one();
        for (row, &p) in rref.rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Offers vectors one at a time and reports the first linear dependency.
///
/// Each stored row remembers how it combines the vectors offered so far, so a
/// dependent offer can be rewritten as an exact combination of its
/// predecessors.
pub(crate) struct DependencyFinder {
    width: usize,
    offered: usize,
    rows: Vec<DepRow>,
}

struct DepRow {
    vec: Vec<Rational>,
    pivot: usize,
    combo: Vec<Rational>,
}

impl DependencyFinder {
    pub fn new(width: usize) -> Self {
        DependencyFinder {
            width,
            offered: 0,
            rows: Vec::new(),
        }
    }

    /// Offers the next vector. `Some(c)` means `v = sum c[i] * offered[i]`
    /// over the previously offered vectors; `None` means `v` was independent
    /// and has been retained.
    pub fn offer(&mut self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let k = self.offered;
        self.offered += 1;
        let mut w = v.to_vec();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        // Rows are reduced in insertion order; every stored row is already
        // zero at the pivots of its predecessors, so no fill-in reappears.
        for row in &self.rows {
            let f = w[row.pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (wj, rj) in w.iter_mut().zip(&row.vec) {
                *wj -= &f * rj;
            }
            for (cj, rj) in combo.iter_mut().zip(&row.combo) {
                *cj -= &f * rj;
            }
        }
        let Some(pivot) = first_nonzero(&w) else {
            combo.truncate(k);
            for c in combo.iter_mut() {
                let neg = -c.clone();
                *c = neg;
            }
            return Some(combo);
        };
        let lead = w[pivot].clone();
        for wj in w.iter_mut() {
            *wj /= &lead;
        }
        for cj in combo.iter_mut() {
            *cj /= &lead;
        }
        self.rows.push(DepRow {
            vec: w,
            pivot,
            combo,
        });
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat;

    fn rv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_canonical_under_insertion_order() {
        let mut a = Rref::new(3);
        a.insert(&rv(&[1, 2, 3]));
        a.insert(&rv(&[0, 1, 1]));
        let mut b = Rref::new(3);
        b.insert(&rv(&[2, 5, 7]));
        b.insert(&rv(&[1, 2, 3]));
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn rref_detects_membership() {
        let mut s = Rref::new(3);
        s.insert(&rv(&[1, 0, 2]));
        s.insert(&rv(&[0, 1, 1]));
        assert!(s.contains(&rv(&[2, 3, 7])));
        assert!(!s.contains(&rv(&[0, 0, 1])));
        assert!(!s.insert(&rv(&[1, 1, 3])));
    }

    #[test]
    fn dependency_finder_reports_exact_combination() {
        let mut f = DependencyFinder::new(3);
        assert!(f.offer(&rv(&[1, 1, 0])).is_none());
        assert!(f.offer(&rv(&[0, 2, 1])).is_none());
        // 3*(1,1,0) - (0,2,1) = (3,1,-1)
        let c = f.offer(&rv(&[3, 1, -1])).expect("dependent");
        assert_eq!(c, rv(&[3, -1]));
    }

    #[test]
    fn dependency_finder_zero_vector_is_empty_combo_of_nothing() {
        let mut f = DependencyFinder::new(2);
        let c = f.offer(&rv(&[0, 0])).expect("zero is dependent");
        assert!(c.is_empty());
    }

    #[test]
    fn kernel_basis_solves_homogeneous_system() {
        // x + 2y + 3z = 0 has a 2-dimensional kernel
        let rows = vec![rv(&[1, 2, 3])];
        let basis = kernel_basis(&rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot: Rational = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        // full-rank system has trivial kernel
        let full = vec![rv(&[1, 0]), rv(&[0, 1])];
        assert!(kernel_basis(&full, 2).is_empty());
        // no constraints: whole space
        assert_eq!(kernel_basis(&[], 2).len(), 2);
    }
}
