use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{common_modulus, PowerSeries};
use crate::error::{Error, Result};

impl PowerSeries {
    /// `f(t(q))` for an inner series with zero constant term.
    ///
    /// Blocked Horner evaluation: with `k ≈ √N` and `T = t^k`,
    /// `f = Σ_j P_j(t)·T^j` where each `P_j` has degree below `k`; the outer
    /// Horner loop runs in `T`, the inner blocks are plain linear combinations
    /// of the cached powers `t^0..t^{k-1}`.
    pub fn compose(&self, t: &PowerSeries) -> Result<PowerSeries> {
        let modulus = common_modulus(self, t)?;
        let t0_zero = match &modulus {
            Some(m) => t.coeffs[0].mod_floor(m).is_zero(),
            None => t.coeffs[0].is_zero(),
        };
        if !t0_zero {
            return Err(Error::CompositionDiverges);
        }
        let n = self.prec().min(t.prec());
        let t = PowerSeries::from_parts(t.coeffs[..n].to_vec(), modulus.clone());
        let f = &self.coeffs[..n];

        let k = (n as f64).sqrt().ceil().max(1.0) as usize;
        let mut powers = Vec::with_capacity(k + 1);
        let mut unit = vec![BigInt::zero(); n];
        unit[0] = BigInt::from(1);
        powers.push(PowerSeries::from_parts(unit, modulus.clone()));
        for i in 1..=k {
            let next = powers[i - 1].mul(&t)?;
            powers.push(next);
        }
        let giant = &powers[k];

        let blocks = n.div_ceil(k);
        let mut acc: Option<PowerSeries> = None;
        for j in (0..blocks).rev() {
            let mut block = vec![BigInt::zero(); n];
            for (i, c) in f.iter().enumerate().skip(j * k).take(k) {
                if c.is_zero() {
                    continue;
                }
                // t^i has valuation >= i
                let pw = &powers[i - j * k];
                for (e, tc) in pw.coeffs.iter().enumerate().skip(i - j * k) {
                    if !tc.is_zero() {
                        block[e] += c * tc;
                    }
                }
            }
            let block = PowerSeries::from_parts(block, modulus.clone());
            acc = Some(match acc {
                None => block,
                Some(a) => &a.mul(giant)? + &block,
            });
        }
        Ok(acc.expect("at least one block"))
    }
}
