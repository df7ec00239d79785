use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PowerSeries;
use crate::error::{Error, Result};

/// Inverse of `c` in the coefficient ring: `±1` over ℤ, any unit mod `M`.
fn unit_inverse(c: &BigInt, modulus: Option<&BigInt>) -> Option<BigInt> {
    match modulus {
        None => (c.abs().is_one()).then(|| c.clone()),
        Some(m) => {
            let e = c.extended_gcd(m);
            e.gcd.is_one().then(|| e.x.mod_floor(m))
        }
    }
}

impl PowerSeries {
    fn constant_like(&self, c: BigInt, prec: usize) -> PowerSeries {
        let mut coeffs = vec![BigInt::zero(); prec];
        coeffs[0] = c;
        PowerSeries::from_parts(coeffs, self.modulus.clone())
    }

    /// `f^k` by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, k: u32) -> Result<PowerSeries> {
        let mut result = self.constant_like(BigInt::one(), self.prec());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplicative inverse by order-doubling Newton iteration
    /// `g ← g·(2 − f·g)`.
    pub fn inverse(&self) -> Result<PowerSeries> {
        let n = self.prec();
        let g0 = unit_inverse(&self.coeffs[0], self.modulus())
            .ok_or_else(|| Error::NotInvertible(self.coeffs[0].to_string()))?;
        let mut g = self.constant_like(g0, 1);
        let two = self.constant_like(BigInt::from(2), n);
        let mut k = 1;
        while k < n {
            let m = (2 * k).min(n);
            let g_m = g.pad_to(m);
            let fg = self.truncate(m).mul(&g_m)?;
            g = g_m.mul(&(&two.truncate(m) - &fg))?;
            k = m;
        }
        let check = self.mul(&g)?;
        if check != self.constant_like(BigInt::one(), n) {
            return Err(Error::CrossCheck("f · inverse(f) != 1".into()));
        }
        Ok(g)
    }

    /// Square root of a series with constant term 1, by Newton iteration
    /// `s ← s + (f − s²)/(2s)`. Fails if a coefficient leaves the integers.
    pub fn sqrt_unit(&self) -> Result<PowerSeries> {
        let n = self.prec();
        if !self.coeffs[0].is_one() {
            return Err(Error::BadLeadingTerm(self.coeffs[0].to_string()));
        }
        let half = match self.modulus() {
            None => None,
            Some(m) if m.is_odd() => Some((m + 1u32) / 2u32),
            Some(m) => {
                return Err(Error::BadParameter(format!("square root modulo even modulus {m}")))
            }
        };
        let mut s = self.constant_like(BigInt::one(), 1);
        let mut k = 1;
        while k < n {
            let m = (2 * k).min(n);
            let s_m = s.pad_to(m);
            let err = &self.truncate(m) - &s_m.mul(&s_m)?;
            let twice_delta = err.mul(&s_m.inverse()?)?;
            let delta: Vec<BigInt> = match &half {
                Some(h) => twice_delta.coeffs.iter().map(|c| c * h).collect(),
                None => twice_delta
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if c.is_even() { Ok(c / 2) } else { Err(Error::NotIntegralSqrt(i)) })
                    .collect::<Result<_>>()?,
            };
            s = &s_m + &PowerSeries::from_parts(delta, self.modulus.clone());
            k = m;
        }
        if s.mul(&s)? != *self {
            return Err(Error::CrossCheck("sqrt(f)^2 != f".into()));
        }
        Ok(s)
    }

    /// Compositional inverse of a series `t = u·q + O(q²)` with `u` a unit,
    /// by Newton iteration `g ← g − (t∘g − q)/(t′∘g)`.
    pub fn revert(&self) -> Result<PowerSeries> {
        let n = self.prec();
        if n < 2 {
            return Err(Error::NotRevertible("precision below 2".into()));
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotRevertible("nonzero constant term".into()));
        }
        let u_inv = unit_inverse(&self.coeffs[1], self.modulus()).ok_or_else(|| {
            Error::NotRevertible(format!("linear coefficient {} is not a unit", self.coeffs[1]))
        })?;
        let dt = self.derivative()?;
        let mut g = self.constant_like(BigInt::zero(), 2);
        g.coeffs[1] = u_inv;
        let mut k = 2;
        while k < n {
            let m = (2 * k).min(n);
            let g_m = g.pad_to(m);
            // residual t(g) − q has valuation >= k
            let mut resid = self.truncate(m).compose(&g_m)?;
            resid.coeffs[1] -= 1;
            debug_assert!(resid.coeffs[..k].iter().all(|c| resid.modulus.as_ref().map_or(c.is_zero(), |md| c.mod_floor(md).is_zero())));
            let tail = PowerSeries::from_parts(resid.coeffs[k..].to_vec(), resid.modulus.clone());
            let denom = dt.truncate(m - k).compose(&g_m.truncate(m - k))?;
            let corr = tail.mul(&denom.inverse()?)?.pad_to(m - k);
            let mut coeffs = g_m.coeffs.clone();
            for (i, c) in corr.coeffs.iter().enumerate() {
                coeffs[k + i] -= c;
            }
            g = PowerSeries::from_parts(coeffs, self.modulus.clone());
            k = m;
        }
        let back = self.compose(&g)?;
        if back != self.constant_like(BigInt::zero(), n).plus_q() {
            return Err(Error::CrossCheck("t(revert(t)) != q".into()));
        }
        Ok(g)
    }

    fn plus_q(mut self) -> PowerSeries {
        if self.prec() > 1 {
            self.coeffs[1] += 1;
            self.normalize();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], prec: usize) -> PowerSeries {
        PowerSeries::from_i64s(c, prec).unwrap()
    }

    #[test]
    fn pow_small_cases() {
        assert_eq!(s(&[1, 1], 4).pow(2).unwrap(), s(&[1, 2, 1], 4));
        assert_eq!(s(&[1, 4, 4, 0, 4], 5).pow(0).unwrap(), PowerSeries::one(5));
        assert_eq!(s(&[0, 1], 6).pow(3).unwrap(), PowerSeries::monomial(3, 6));
    }

    #[test]
    fn inverse_of_geometric() {
        assert_eq!(s(&[1, -1], 5).inverse().unwrap(), s(&[1, 1, 1, 1, 1], 5));
        assert_eq!(PowerSeries::one(3).inverse().unwrap(), PowerSeries::one(3));
        assert_eq!(s(&[-1, 1], 3).inverse().unwrap(), s(&[-1, -1, -1], 3));
        assert!(matches!(s(&[2, 1], 3).inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn inverse_mod_m() {
        let f = s(&[2, 1], 6).reduce_mod(&7.into()).unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(f.mul(&g).unwrap(), PowerSeries::one(6).reduce_mod(&7.into()).unwrap());
        let h = s(&[7, 1], 3).reduce_mod(&7.into()).unwrap();
        assert!(h.inverse().is_err());
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(PowerSeries::one(4).sqrt_unit().unwrap(), PowerSeries::one(4));
        assert_eq!(s(&[1, -2, 1], 6).sqrt_unit().unwrap(), s(&[1, -1], 6));
        assert!(matches!(s(&[4, 1], 3).sqrt_unit(), Err(Error::BadLeadingTerm(_))));
        assert!(matches!(s(&[1, 1], 3).sqrt_unit(), Err(Error::NotIntegralSqrt(1))));
        // 1 + 4q is 1 + 2q − 2q² + 4q³ − … squared
        assert_eq!(s(&[1, 4], 4).sqrt_unit().unwrap(), s(&[1, 2, -2, 4], 4));
    }

    #[test]
    fn sqrt_mod_odd() {
        let f = s(&[1, 1], 5).reduce_mod(&9.into()).unwrap();
        let r = f.sqrt_unit().unwrap();
        assert_eq!(r.mul(&r).unwrap(), f);
        assert!(s(&[1, 1], 3).reduce_mod(&4.into()).unwrap().sqrt_unit().is_err());
    }

    #[test]
    fn revert_cases() {
        assert_eq!(PowerSeries::monomial(1, 6).revert().unwrap(), PowerSeries::monomial(1, 6));
        // q/(1-q) reverts to q/(1+q)
        let t = s(&[0, 1, 1, 1, 1, 1, 1], 7);
        assert_eq!(t.revert().unwrap(), s(&[0, 1, -1, 1, -1, 1, -1], 7));
        assert!(s(&[1, 1], 3).revert().is_err());
        assert!(s(&[0, 2, 1], 3).revert().is_err());
        assert!(s(&[0, 0, 1], 3).revert().is_err());
    }

    #[test]
    fn revert_mod_m_with_unit_linear_term() {
        let t = s(&[0, 3, 1, 4, 1, 5], 6).reduce_mod(&25.into()).unwrap();
        let g = t.revert().unwrap();
        assert_eq!(t.compose(&g).unwrap(), PowerSeries::monomial(1, 6).reduce_mod(&25.into()).unwrap());
    }
}
