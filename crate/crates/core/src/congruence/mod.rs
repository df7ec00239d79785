//! Three-term congruences, coefficient transfer along a change of variable,
//! and the per-statement verifiers.

mod two_squares;
mod verify;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Status, VerificationReport};
use crate::sequences::{Sequence, SequenceTable};
use crate::series::PowerSeries;

pub use two_squares::{cornacchia, TwoSquares};
pub use verify::{
    verify_cor1, verify_cor2, verify_example, verify_intro_apery, verify_theorem1, verify_theorem2,
    verify_transfer_bridges, Bounds, Cor1Relation, Terms, Theorem2Part,
};

/// `(−1/p)` for an odd prime.
pub fn legendre_minus_one(p: u64) -> Result<i64> {
    if p.is_multiple_of(2) {
        return Err(Error::BadParameter(format!("(-1/p) needs odd p, got {p}")));
    }
    Ok(if p % 4 == 1 { 1 } else { -1 })
}

/// Prime coefficient of the CM form `f₁`: `2x⁴ − 12x²y² + 2y⁴` when
/// `p = x² + y²`, and 0 when `p ≡ 3 (mod 4)`.
pub fn cm_b1(p: u64) -> Result<BigInt> {
    if p == 2 || !is_prime(p) {
        return Err(Error::BadParameter(format!("cm_b1 needs an odd prime, got {p}")));
    }
    if p % 4 == 3 {
        return Ok(BigInt::zero());
    }
    let t = cornacchia(p)?;
    let (x2, y2) = (BigInt::from(t.x * t.x), BigInt::from(t.y * t.y));
    Ok(2 * &x2 * &x2 - 12 * &x2 * &y2 + 2 * &y2 * &y2)
}

/// Maps `n = m·p^k` to a sequence index `(n + shift) / divisor`.
///
/// `b_{mp^k} = A₃(mp^k − 1)` is `shift = −1`; the Apéry family's
/// `B((mp^k − 1)/2)` is `shift = −1, divisor = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRule {
    pub shift: i64,
    pub divisor: u64,
}

impl IndexRule {
    pub const IDENTITY: IndexRule = IndexRule { shift: 0, divisor: 1 };
    pub const MINUS_ONE: IndexRule = IndexRule { shift: -1, divisor: 1 };
    pub const HALF_MINUS_ONE: IndexRule = IndexRule { shift: -1, divisor: 2 };

    /// `None` when `m·p^k` is not an integer or the mapped index is negative
    /// or fractional.
    pub fn apply(&self, m: u64, p: u64, k: i64) -> Option<usize> {
        let (m, p) = (m as i128, p as i128);
        let n = if k >= 0 {
            m * p.checked_pow(k as u32)?
        } else {
            let d = p.checked_pow((-k) as u32)?;
            if m % d != 0 {
                return None;
            }
            m / d
        };
        let num = n + self.shift as i128;
        let div = self.divisor as i128;
        (num >= 0 && num % div == 0).then(|| (num / div) as usize)
    }
}

/// One evaluation of `s(i₀) − α·s(i₁) + β·s(i₂)` against `p^s`, where
/// `i_j = rule(m·p^{r−j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermInstance {
    pub p: u64,
    pub m: u64,
    pub r: u32,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub mod_exponent: u32,
    pub indices: [Option<usize>; 3],
    pub values: [BigInt; 3],
    pub lhs: BigInt,
    /// Some index was out of domain and contributed 0.
    pub truncated: bool,
    pub status: Status,
}

impl ThreeTermInstance {
    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.mod_exponent)
    }

    pub fn to_record(&self, label: &str) -> CheckRecord {
        let idx: Vec<String> = self
            .indices
            .iter()
            .map(|i| i.map_or_else(|| "-".to_owned(), |i| i.to_string()))
            .collect();
        let mut desc = format!(
            "{label} p={} m={} r={}: indices ({}) mod p^{}",
            self.p,
            self.m,
            self.r,
            idx.join(", "),
            self.mod_exponent
        );
        if self.truncated {
            desc.push_str(" [truncated-term]");
        }
        let mut witness = self.values.to_vec();
        witness.push(self.lhs.clone());
        CheckRecord::modular(desc, self.status == Status::Pass, witness, self.modulus())
    }
}

#[allow(clippy::too_many_arguments)]
pub fn three_term_check(
    seq: &dyn Sequence,
    alpha: &BigInt,
    beta: &BigInt,
    p: u64,
    m: u64,
    r: u32,
    mod_exponent: u32,
    rule: IndexRule,
) -> Result<ThreeTermInstance> {
    if m == 0 || r == 0 {
        return Err(Error::BadParameter("three-term check needs m, r >= 1".into()));
    }
    let mut indices = [None; 3];
    let mut values = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for j in 0..3 {
        indices[j] = rule.apply(m, p, r as i64 - j as i64);
        if let Some(i) = indices[j] {
            values[j] = seq.value_at(i)?;
        }
    }
    let lhs = &values[0] - alpha * &values[1] + beta * &values[2];
    let modulus = BigInt::from(p).pow(mod_exponent);
    let ok = lhs.mod_floor(&modulus).is_zero();
    Ok(ThreeTermInstance {
        p,
        m,
        r,
        alpha: alpha.clone(),
        beta: beta.clone(),
        mod_exponent,
        indices,
        values,
        lhs,
        truncated: indices.iter().any(Option::is_none),
        status: Status::from_bool(ok),
    })
}

/// Pulls the differential `ω = Σ_{n≥1} bₙ t^{n−1} dt` back along `t = t(q)`
/// and returns `c₁..c_len` with `ω(t(q)) = Σ cₙ q^{n−1} dq`.
///
/// `b` is read as `bₙ = b.value_at(n)`; `t` must have valuation exactly 1 and
/// at least `len + 1` known coefficients.
pub fn transfer_coefficients(b: &dyn Sequence, t: &PowerSeries, len: usize) -> Result<SequenceTable> {
    transfer_scaled(b, t, &BigInt::one(), len)
}

/// As [`transfer_coefficients`], for a differential written in the rescaled
/// variable `t/λ`: `ω = Σ bₙ (t/λ)^{n−1} dt`. The division `t/λ` must be exact.
pub fn transfer_scaled(b: &dyn Sequence, t: &PowerSeries, scale: &BigInt, len: usize) -> Result<SequenceTable> {
    if len == 0 {
        return Err(Error::InvalidPrecision(0));
    }
    if t.valuation() != Some(1) {
        return Err(Error::BadParameter("transfer needs t = A₁q + … with A₁ ≠ 0".into()));
    }
    if t.prec() < len + 1 {
        return Err(Error::PrecisionExceeded { index: len, prec: t.prec() });
    }
    if scale.is_zero() {
        return Err(Error::BadParameter("zero scale".into()));
    }
    let t = t.truncate(len + 1);
    let mut u = Vec::with_capacity(len + 1);
    for c in t.coeffs() {
        let (quo, rem) = c.div_rem(scale);
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!("{c} / {scale}")));
        }
        u.push(quo);
    }
    let u = PowerSeries::new(u, len + 1)?;
    let b_series = PowerSeries::new((1..=len).map(|n| b.value_at(n)).collect::<Result<_>>()?, len)?;
    let c = b_series.compose(&u)?.mul(&t.derivative()?)?;
    Ok(SequenceTable::new(format!("transfer[{}]", b.label()), 1, c.into_coeffs()))
}

/// Hecke relation `a(pn) = a(p)a(n) − χ(p)p^{k−1}a(n/p)` for `1 <= n <= range`,
/// with `a(n/p) = 0` when `p ∤ n`.
pub fn hecke_check(
    coeffs: &dyn Sequence,
    p: u64,
    weight: u32,
    chi_p: i64,
    range: u64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("hecke[{}]", coeffs.label()))
        .with_param("p", p)
        .with_param("weight", weight)
        .with_param("chi_p", chi_p)
        .with_param("range", range);
    let a_p = coeffs.value_at(p as usize)?;
    let char_term = BigInt::from(chi_p) * BigInt::from(p).pow(weight - 1);
    for n in 1..=range {
        let lhs = coeffs.value_at((p * n) as usize)?;
        let a_n = coeffs.value_at(n as usize)?;
        let a_np = if n % p == 0 { coeffs.value_at((n / p) as usize)? } else { BigInt::zero() };
        let rhs = &a_p * &a_n - &char_term * &a_np;
        report.push(CheckRecord::exact(
            format!("p={p} n={n}: a({}) = a(p)a(n) - chi p^{} a(n/p)", p * n, weight - 1),
            lhs == rhs,
            vec![lhs, rhs],
        ));
    }
    Ok(report)
}
