use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// `Π_{n≥1} (1 − qⁿ)` via Euler's pentagonal number theorem.
pub fn euler_product(prec: usize) -> PowerSeries {
    let mut coeffs = vec![BigInt::from(0); prec];
    coeffs[0] = BigInt::from(1);
    for k in 1usize.. {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let a = k * (3 * k - 1) / 2;
        if a >= prec {
            break;
        }
        coeffs[a] += sign;
        let b = k * (3 * k + 1) / 2;
        if b < prec {
            coeffs[b] += sign;
        }
    }
    PowerSeries::new(coeffs, prec).expect("positive precision")
}

/// A finite product `Π_s η(sτ/2)^{e_s}`.
///
/// With `q = e^{πiτ}`, the factor `η(sτ/2)` is `q^{s/24} Π_{n≥1} (1 − q^{sn})`,
/// so `s = 1, 2, 4` are `η(τ/2), η(τ), η(2τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: BTreeMap<u32, i64>,
}

impl EtaQuotient {
    pub fn new(factors: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (s, e) in factors {
            *map.entry(s).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Self { factors: map }
    }

    /// `l(τ) = η(2τ)¹⁶ η(τ/2)⁸ / η(τ)²⁴`
    pub fn lambda() -> Self {
        Self::new([(4, 16), (1, 8), (2, -24)])
    }

    /// `1 − 16 l(τ) = η(τ/2)¹⁶ η(2τ)⁸ / η(τ)²⁴`
    pub fn one_minus_16l() -> Self {
        Self::new([(1, 16), (4, 8), (2, -24)])
    }

    /// `θ(τ) = η(τ)¹⁰ / (η(τ/2)⁴ η(2τ)⁴)`
    pub fn theta() -> Self {
        Self::new([(2, 10), (1, -4), (4, -4)])
    }

    pub fn factors(&self) -> &BTreeMap<u32, i64> {
        &self.factors
    }

    /// `24 ×` the exponent of the leading `q` power.
    pub fn leading_exponent_24(&self) -> i64 {
        self.factors.iter().map(|(&s, &e)| s as i64 * e).sum()
    }

    pub fn expand(&self, prec: usize) -> Result<PowerSeries> {
        if prec == 0 {
            return Err(Error::InvalidPrecision(0));
        }
        if self.factors.contains_key(&0) {
            return Err(Error::NotExpandable("scale 0".into()));
        }
        let lead = self.leading_exponent_24();
        if lead < 0 || lead % 24 != 0 {
            return Err(Error::NotExpandable(format!("leading exponent {lead}/24")));
        }
        let offset = (lead / 24) as usize;
        if offset >= prec {
            return Ok(PowerSeries::zero(prec));
        }
        let inner = prec - offset;
        let base = euler_product(inner);
        let mut num = PowerSeries::one(inner);
        let mut den = PowerSeries::one(inner);
        for (&s, &e) in &self.factors {
            let factor = base.dilate(s as usize).pow(e.unsigned_abs() as u32)?;
            if e > 0 {
                num = num.mul(&factor)?;
            } else {
                den = den.mul(&factor)?;
            }
        }
        let body = num.mul(&den.inverse()?)?;
        let mut coeffs = vec![BigInt::from(0); offset];
        coeffs.extend(body.into_coeffs());
        PowerSeries::new(coeffs, prec)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(s, e)| format!("eta({s}τ/2)^{e}")).collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}
