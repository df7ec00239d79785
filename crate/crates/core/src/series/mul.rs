//! Truncated polynomial multiplication kernels.
//!
//! [`mul_schoolbook`] is the reference convolution. [`mul_kronecker`] packs
//! each operand into one big integer (Kronecker substitution with balanced
//! signed digits), multiplies once, and unpacks; the big multiplication then
//! runs through the bignum library's Karatsuba/Toom-3 code. Both produce
//! identical output.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

/// Below this many (trimmed) terms the schoolbook product is used.
pub const KRONECKER_MIN_TERMS: usize = 24;

/// Operands with at most this many nonzero terms stay on the sparse path.
const SPARSE_NONZEROS: usize = 12;

/// First `n` coefficients of `a·b`, choosing the kernel by size.
pub fn mul_truncated(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let a = trim(&a[..a.len().min(n)]);
    let b = trim(&b[..b.len().min(n)]);
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero(); n];
    }
    let nnz = |x: &[BigInt]| x.iter().filter(|c| !c.is_zero()).count();
    if a.len().min(b.len()) < KRONECKER_MIN_TERMS || nnz(a).min(nnz(b)) <= SPARSE_NONZEROS {
        mul_schoolbook(a, b, n)
    } else {
        mul_kronecker(a, b, n)
    }
}

fn trim(a: &[BigInt]) -> &[BigInt] {
    let end = a.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    &a[..end]
}

pub fn mul_schoolbook(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub fn mul_kronecker(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero(); n];
    }
    let max_bits = |x: &[BigInt]| x.iter().map(BigInt::bits).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    // every product coefficient is bounded by terms · max|a| · max|b|
    let slot_bits = max_bits(a) + max_bits(b) + (64 - terms.leading_zeros() as u64) + 2;
    let words = slot_bits.div_ceil(32) as usize;

    let pa = pack(a, words);
    let product = if std::ptr::eq(a, b) { &pa * &pa } else { &pa * &pack(b, words) };
    unpack(&product, words, n)
}

fn pack(a: &[BigInt], words: usize) -> BigInt {
    let mut pos = vec![0u32; a.len() * words];
    let mut neg: Vec<u32> = Vec::new();
    for (i, c) in a.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let dst = match sign {
            Sign::NoSign => continue,
            Sign::Plus => &mut pos,
            Sign::Minus => {
                if neg.is_empty() {
                    neg = vec![0u32; a.len() * words];
                }
                &mut neg
            }
        };
        dst[i * words..i * words + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

/// Decodes the balanced base-`2^(32·words)` digits of `r`.
fn unpack(r: &BigInt, words: usize, n: usize) -> Vec<BigInt> {
    let (sign, digits) = r.to_u32_digits();
    let bits = 32 * words;
    let half = BigInt::one() << (bits - 1);
    let full = BigInt::one() << bits;
    let mut out = Vec::with_capacity(n);
    let mut borrow = false;
    for i in 0..n {
        let lo = (i * words).min(digits.len());
        let hi = ((i + 1) * words).min(digits.len());
        let mut v = BigInt::from(BigUint::from_slice(&digits[lo..hi]));
        if borrow {
            v += 1;
        }
        borrow = v >= half;
        if borrow {
            v -= &full;
        }
        out.push(if sign == Sign::Minus { -v } else { v });
    }
    out
}
