//! Subspaces of matrices with exact linear algebra: spans, bracket closures,
//! derived series, and a constructive triangularization for solvable
//! algebras whose common eigenvalues stay rational.
//!
//! Subspaces keep their basis in reduced echelon form under the
//! flatten-to-vector map, so equality of values is equality of subspaces and
//! membership is a reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ratmat::{Mat, Rational};
use crate::rowspace::{kernel_basis, DependencyFinder, Rref};
use crate::{Error, Result};

/// Linear subspace of `n x n` rational matrices in canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatSubspace {
    n: usize,
    rref: Rref,
}

impl MatSubspace {
    /// The zero subspace of `n x n` matrices. Panics if `n == 0`.
    pub fn zero(n: usize) -> MatSubspace {
        assert!(n > 0, "ambient dimension must be positive");
        MatSubspace {
            n,
            rref: Rref::new(n * n),
        }
    }

    /// Ambient matrix dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Dimension of the subspace itself.
    pub fn dimension(&self) -> usize {
        self.rref.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    /// The canonical echelon basis.
    pub fn basis(&self) -> Vec<Mat> {
        self.rref
            .rows()
            .iter()
            .map(|row| Mat::from_flat(self.n, row.clone()))
            .collect()
    }

    /// Exact membership test.
    pub fn contains(&self, m: &Mat) -> Result<bool> {
        if m.dim() != self.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: m.dim(),
            });
        }
        Ok(self.rref.contains(&m.flatten()))
    }

    fn insert(&mut self, m: &Mat) -> bool {
        self.rref.insert(&m.flatten())
    }

    /// True iff the bracket of any two basis elements stays inside.
    pub fn is_bracket_closed(&self) -> Result<bool> {
        let basis = self.basis();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[..i] {
                if !self.contains(&a.bracket(b)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Canonical span of the given matrices inside `n x n` ambient space.
pub fn span(n: usize, mats: &[Mat]) -> Result<MatSubspace> {
    let mut space = MatSubspace::zero(n);
    for m in mats {
        if m.dim() != n {
            return Err(Error::DimMismatch {
                left: n,
                right: m.dim(),
            });
        }
        space.insert(m);
    }
    Ok(space)
}

/// Smallest bracket-closed subspace containing the generators.
pub fn lie_closure(n: usize, gens: &[Mat]) -> Result<MatSubspace> {
    let mut space = MatSubspace::zero(n);
    let mut members: Vec<Mat> = Vec::new();
    for g in gens {
        if g.dim() != n {
            return Err(Error::DimMismatch {
                left: n,
                right: g.dim(),
            });
        }
        if space.insert(g) {
            members.push(g.clone());
        }
    }
    // Pair (i, j) is processed once the later of the two joins; brackets of
    // spanning elements suffice by bilinearity.
    let mut i = 0;
    while i < members.len() {
        for j in 0..i {
            let b = members[i].bracket(&members[j])?;
            if !b.is_zero() && space.insert(&b) {
                members.push(b);
            }
        }
        i += 1;
    }
    Ok(space)
}

/// Span of brackets of basis pairs: `[V, V]`.
fn derived_subspace(v: &MatSubspace) -> Result<MatSubspace> {
    let basis = v.basis();
    let mut out = MatSubspace::zero(v.n);
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[..i] {
            out.insert(&a.bracket(b)?);
        }
    }
    Ok(out)
}

/// `V, [V,V], [[V,V],[V,V]], ...` until the series stabilizes; the zero
/// subspace is included when reached. Requires `V` bracket-closed.
pub fn derived_series(v: &MatSubspace) -> Result<Vec<MatSubspace>> {
    if !v.is_bracket_closed()? {
        return Err(Error::Precondition(
            "derived_series: subspace must be closed under bracket".into(),
        ));
    }
    let mut series = vec![v.clone()];
    loop {
        let next = derived_subspace(series.last().expect("nonempty"))?;
        if next == *series.last().expect("nonempty") {
            break;
        }
        let reached_zero = next.is_zero();
        series.push(next);
        if reached_zero {
            break;
        }
    }
    Ok(series)
}

/// True iff the derived series reaches zero.
pub fn is_solvable(v: &MatSubspace) -> Result<bool> {
    Ok(derived_series(v)?.last().expect("nonempty").is_zero())
}

/// Block-diagonal `M + M + ... + M` (`copies` blocks): a faithful
/// representation preserving brackets and triangularity. Panics if
/// `copies == 0`.
pub fn direct_sum_rep(m: &Mat, copies: usize) -> Mat {
    assert!(copies >= 1, "copies must be positive");
    let n = m.dim();
    Mat::from_fn(n * copies, |i, j| {
        if i / n == j / n {
            m.at(i % n, j % n).clone()
        } else {
            Rational::zero()
        }
    })
}

fn mat_vec(m: &Mat, v: &[Rational]) -> Vec<Rational> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j) * &v[j]).sum())
        .collect()
}

/// Finds `P` invertible with `P^-1 g P` upper triangular for every `g` in
/// the bracket closure of the generators; returns `P` and the conjugated
/// generators in input order.
///
/// Builds a full invariant flag one vector at a time: each round finds a
/// common eigenvector of the generators' action on the current quotient and
/// lifts it. Requires a solvable closure; fails with an unsupported-field
/// error when a needed eigenvalue is irrational. Intended for desk-scale
/// inputs (the rational root search scans a bounded integer range).
pub fn triangularize(gens: &[Mat]) -> Result<(Mat, Vec<Mat>)> {
    let first = gens.first().ok_or_else(|| {
        Error::Precondition("triangularize: at least one generator is required".into())
    })?;
    let n = first.dim();
    let closure = lie_closure(n, gens)?;
    if !is_solvable(&closure)? {
        return Err(Error::Precondition(
            "triangularize: generators must span a solvable algebra".into(),
        ));
    }

    let mut flag: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..n {
        let basis_mat = complete_basis(n, &flag);
        let basis_inv = basis_mat.inverse().expect("completion is invertible");
        let k = flag.len();
        let m = n - k;
        let mut quotients = Vec::with_capacity(gens.len());
        for g in gens {
            let conj = basis_inv.mul(g)?.mul(&basis_mat)?;
            for i in k..n {
                for j in 0..k {
                    if !conj.at(i, j).is_zero() {
                        return Err(Error::Invariant(
                            "triangularize: flag must stay invariant".into(),
                        ));
                    }
                }
            }
            quotients.push(Mat::from_fn(m, |i, j| conj.at(k + i, k + j).clone()));
        }
        let u = common_eigenvector(m, &quotients)?;
        let mut coords = vec![Rational::zero(); n];
        coords[k..].clone_from_slice(&u);
        flag.push(mat_vec(&basis_mat, &coords));
    }

    let p = Mat::from_fn(n, |i, j| flag[j][i].clone());
    let p_inv = p.inverse().expect("flag spans the space");
    let conjugated: Vec<Mat> = gens
        .iter()
        .map(|g| p_inv.mul(g).and_then(|m| m.mul(&p)))
        .collect::<Result<_>>()?;
    for c in &conjugated {
        if !c.is_upper_triangular() {
            return Err(Error::Invariant(
                "triangularize: conjugated generator must be upper triangular".into(),
            ));
        }
    }
    Ok((p, conjugated))
}

/// Invertible matrix whose first columns are the flag, completed greedily
/// with standard basis vectors.
fn complete_basis(n: usize, flag: &[Vec<Rational>]) -> Mat {
    let mut rref = Rref::new(n);
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for f in flag {
        let grew = rref.insert(f);
        debug_assert!(grew, "flag vectors are independent");
        cols.push(f.clone());
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        if rref.insert(&e) {
            cols.push(e);
        }
    }
    debug_assert_eq!(cols.len(), n);
    Mat::from_fn(n, |i, j| cols[j][i].clone())
}

/// Nonzero `v` with `g v` proportional to `v` for every generator.
fn common_eigenvector(m: usize, mats: &[Mat]) -> Result<Vec<Rational>> {
    let algebra = lie_closure(m, mats)?;
    eigenvector_for_algebra(&algebra)
}

/// Classical inductive argument: split a solvable algebra as a codimension-1
/// ideal `K` plus one element `z`, take the joint eigenspace of `K` through
/// a recursively found eigenvector, and diagonalize `z` on it.
fn eigenvector_for_algebra(alg: &MatSubspace) -> Result<Vec<Rational>> {
    let m = alg.ambient_dim();
    if alg.dimension() == 0 {
        let mut e = vec![Rational::zero(); m];
        e[0] = Rational::one();
        return Ok(e);
    }
    let dim = alg.dimension();
    let derived = derived_subspace(alg)?;
    if derived.dimension() >= dim {
        return Err(Error::Invariant(
            "eigenvector search needs a proper derived subalgebra".into(),
        ));
    }
    // any codimension-1 subspace containing [alg, alg] is an ideal
    let mut k_space = derived;
    for b in alg.basis() {
        if k_space.dimension() == dim - 1 {
            break;
        }
        k_space.insert(&b);
    }
    let z = alg
        .basis()
        .into_iter()
        .find(|b| !k_space.contains(b).expect("same ambient"))
        .ok_or_else(|| Error::Invariant("codimension-1 ideal must miss a basis element".into()))?;

    let v0 = eigenvector_for_algebra(&k_space)?;
    let pos = v0
        .iter()
        .position(|c| !c.is_zero())
        .expect("eigenvector is nonzero");

    // joint eigenspace of K for the functional read off v0
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    for y in k_space.basis() {
        let image = mat_vec(&y, &v0);
        let lambda = &image[pos] / &v0[pos];
        debug_assert!(
            image.iter().zip(&v0).all(|(a, b)| *a == b * &lambda),
            "recursive eigenvector must be an exact eigenvector"
        );
        for i in 0..m {
            let mut row: Vec<Rational> = (0..m).map(|j| y.at(i, j).clone()).collect();
            row[i] -= &lambda;
            constraints.push(row);
        }
    }
    let joint = kernel_basis(&constraints, m);
    if joint.is_empty() {
        return Err(Error::Invariant(
            "joint eigenspace must contain the recursive eigenvector".into(),
        ));
    }

    let restricted = restriction_matrix(&z, &joint).ok_or_else(|| {
        Error::Invariant("joint eigenspace must be invariant under the complement".into())
    })?;
    let mu = smallest_rational_eigenvalue(&restricted)?;
    let d = joint.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut row: Vec<Rational> = (0..d).map(|j| restricted.at(i, j).clone()).collect();
        row[i] -= &mu;
        rows.push(row);
    }
    let w = kernel_basis(&rows, d)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant("eigenvalue must have an eigenvector".into()))?;

    let mut v = vec![Rational::zero(); m];
    for (c, basis_vec) in w.iter().zip(&joint) {
        for (vi, bi) in v.iter_mut().zip(basis_vec) {
            *vi += c * bi;
        }
    }
    Ok(v)
}

/// Matrix of `z` restricted to the span of `basis`, or `None` if the span is
/// not invariant.
fn restriction_matrix(z: &Mat, basis: &[Vec<Rational>]) -> Option<Mat> {
    let m = z.dim();
    let d = basis.len();
    let mut finder = DependencyFinder::new(m);
    for v in basis {
        let dep = finder.offer(v);
        debug_assert!(dep.is_none(), "restriction basis is independent");
    }
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for v in basis {
        let image = mat_vec(z, v);
        let combo = finder.offer(&image)?;
        debug_assert!(combo[d..].iter().all(Zero::is_zero));
        cols.push(combo[..d].to_vec());
    }
    Some(Mat::from_fn(d, |i, j| cols[j][i].clone()))
}

fn int_pow(base: &BigInt, exp: usize) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Smallest rational eigenvalue of `r`, or an unsupported-field error if the
/// minimal polynomial has no rational root.
///
/// Denominators of rational roots divide the coefficient lcm `l`, and all
/// eigenvalues are bounded by the max absolute row sum, so scanning integer
/// candidates for the monic integer polynomial `l^d p(y/l)` is complete.
fn smallest_rational_eigenvalue(r: &Mat) -> Result<Rational> {
    let p = r.minimal_polynomial();
    let d = p.degree().expect("minimal polynomial is nonzero");
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q: Vec<BigInt> = (0..=d)
        .map(|k| {
            let c = p.coeff(k) * Rational::from_integer(int_pow(&l, d - k));
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    let q0 = q[0].clone();
    let ybound = (r.max_abs_row_sum() * Rational::from_integer(l.clone()))
        .ceil()
        .to_integer();
    let mut y = -ybound.clone();
    while y <= ybound {
        let candidate = if y.is_zero() {
            q0.is_zero()
        } else {
            (&q0 % &y).is_zero()
        };
        if candidate {
            let mut acc = BigInt::zero();
            for c in q.iter().rev() {
                acc = acc * &y + c;
            }
            if acc.is_zero() {
                return Ok(Rational::new(y, l));
            }
        }
        y += 1;
    }
    Err(Error::UnsupportedField(format!(
        "no rational eigenvalue: {p} has no rational root"
    )))
}
