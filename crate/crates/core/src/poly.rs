//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order of degree with no trailing
//! zeros; the zero polynomial has an empty coefficient vector and degree
//! `None`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ratmat::{rat, Mat, Rational};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> RatPoly {
        RatPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> RatPoly {
        RatPoly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> RatPoly {
        RatPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Monic product of `x - r` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> RatPoly {
        let mut p = RatPoly::one();
        for r in roots {
            let linear = RatPoly::from_coeffs(vec![-r.clone(), Rational::one()]);
            p = p.mul(&linear);
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    /// Scales to leading coefficient 1; `None` for the zero polynomial.
    pub fn monic(&self) -> Option<RatPoly> {
        let lead = self.leading()?;
        Some(self.scale(&lead.recip()))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, a: &Mat) -> Mat {
        let n = a.dim();
        let mut acc = Mat::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).expect("same dimension");
            acc = acc.add(&Mat::identity(n).scale(c)).expect("same dimension");
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if div.is_zero() {
            return Err(Error::Precondition(
                "division by the zero polynomial".into(),
            ));
        }
        let d = div.coeffs.len();
        let lead = div.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, b) in div.coeffs.iter().enumerate() {
                let v = &rem[k + i] - &(&c * b);
                rem[k + i] = v;
            }
            quot[k] = c;
        }
        Ok((RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let (_, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        r0.monic().unwrap_or_else(RatPoly::zero)
    }

    /// Extended Euclid: returns monic `g` and `(u, v)` with `u*a + v*b = g`.
    pub fn xgcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let mut r0 = a.clone();
        let mut s0 = RatPoly::one();
        let mut t0 = RatPoly::zero();
        let mut r1 = b.clone();
        let mut s1 = RatPoly::zero();
        let mut t1 = RatPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            s0 = s1;
            t0 = t1;
            r1 = r;
            s1 = s;
            t1 = t;
        }
        match r0.leading() {
            Some(lead) => {
                let inv = lead.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (RatPoly::zero(), RatPoly::zero(), RatPoly::zero()),
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lead = first;
            first = false;
            if !lead {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let mag = if lead { c.clone() } else { c.abs() };
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
