use crate::arith::{is_prime, isqrt, pow_mod};
use crate::error::{Error, Result};

/// `p = x² + y²` with `0 < x <= y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoSquares {
    pub p: u64,
    pub x: u64,
    pub y: u64,
}

/// Cornacchia's algorithm for `x² + y² = p`, `p ≡ 1 (mod 4)` prime.
///
/// A square root `r` of −1 comes from `c^{(p−1)/4}` for the least quadratic
/// non-residue `c`; the Euclidean remainder sequence of `(p, r)` is then run
/// until the remainder drops below `√p`.
pub fn cornacchia(p: u64) -> Result<TwoSquares> {
    if !is_prime(p) {
        return Err(Error::BadParameter(format!("{p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(Error::NoRepresentation(p));
    }
    let c = (2..p)
        .find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)
        .expect("a non-residue exists mod an odd prime");
    let r = pow_mod(c, (p - 1) / 4, p);
    let (mut a, mut b) = (p, r.max(p - r));
    let bound = isqrt(p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let x = b;
    let y2 = p - x * x;
    let y = isqrt(y2);
    if y * y != y2 {
        return Err(Error::CrossCheck(format!("Cornacchia descent failed for {p}")));
    }
    Ok(TwoSquares { p, x: x.min(y), y: x.max(y) })
}
