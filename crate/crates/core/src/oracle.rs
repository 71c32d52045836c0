//! Independent classical decomposition used as ground truth.
//!
//! `chevalley_jcd` never touches the eigenmatrix machinery: it takes the
//! squarefree part `p` of the minimal polynomial and runs the Newton step
//! `x -> x - p(x) q(x)`, where `q` inverts `p'` modulo the minimal
//! polynomial. Every iterate is a polynomial in the input, `p(x_k)` squares
//! into a shrinking nilpotent ideal each round, and `p` is squarefree, so the
//! limit is reached after logarithmically many steps and is diagonalizable.

pub use crate::poly::RatPoly;

use crate::ratmat::Mat;
use crate::{Error, Result};

/// `m / gcd(m, m')`: the monic squarefree polynomial with the same roots.
pub fn squarefree_part(m: &RatPoly) -> Result<RatPoly> {
    if m.is_zero() {
        return Err(Error::Precondition(
            "squarefree_part: polynomial must be nonzero".into(),
        ));
    }
    let g = RatPoly::gcd(m, &m.derivative());
    let (q, r) = m.div_rem(&g)?;
    debug_assert!(r.is_zero(), "gcd divides m");
    Ok(q.monic()
        .expect("quotient of nonzero by divisor is nonzero"))
}

/// Classical Jordan-Chevalley decomposition of any square rational matrix.
///
/// Returns `(S', N')` with `S' + N' = A`, `S'` diagonalizable, `N'`
/// nilpotent, `[S', N'] = 0`, and `S'` a polynomial in `A`.
pub fn chevalley_jcd(a: &Mat) -> (Mat, Mat) {
    let m = a.minimal_polynomial();
    let p = squarefree_part(&m).expect("minimal polynomial is nonzero");
    // q * p' = 1 (mod m); gcd(p', m) = 1 holds in characteristic zero
    let (g, q, _) = RatPoly::xgcd(&p.derivative(), &m);
    assert_eq!(g, RatPoly::one(), "p' must be invertible modulo m");
    let mut x = a.clone();
    // p(x_k) lives in an ideal that squares each round and p(A)^n = 0, so
    // ceil(log2 n) rounds suffice; the cap is defensive.
    let cap = usize::BITS as usize - a.dim().leading_zeros() as usize + 2;
    for _ in 0..cap {
        let px = p.eval_mat(&x);
        if px.is_zero() {
            let nilpotent = a.sub(&x).expect("same dimension");
            return (x, nilpotent);
        }
        let step = px.mul(&q.eval_mat(&x)).expect("same dimension");
        x = x.sub(&step).expect("same dimension");
    }
    unreachable!("Newton iteration converges within the logarithmic cap")
}
