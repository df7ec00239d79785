//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`PowerSeries`] knows its coefficients for exponents `0..prec`; every
//! binary operation returns a result whose precision is the smaller of the
//! two inputs. A series may additionally carry a modulus `M`, in which case
//! all coefficients are kept as canonical residues in `[0, M)`.

mod compose;
pub mod mul;
mod newton;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
    modulus: Option<BigInt>,
}

impl PowerSeries {
    /// Builds a series from a coefficient prefix, zero-padded to `prec`.
    pub fn new(mut coeffs: Vec<BigInt>, prec: usize) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidPrecision(prec));
        }
        if coeffs.len() > prec {
            return Err(Error::BadParameter(format!(
                "{} coefficients given for precision {prec}",
                coeffs.len()
            )));
        }
        coeffs.resize(prec, BigInt::zero());
        Ok(Self { coeffs, modulus: None })
    }

    pub fn from_i64s(coeffs: &[i64], prec: usize) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), prec)
    }

    /// The zero series `O(q^prec)`. Panics if `prec == 0`.
    pub fn zero(prec: usize) -> Self {
        assert!(prec > 0, "precision must be positive");
        Self { coeffs: vec![BigInt::zero(); prec], modulus: None }
    }

    pub fn one(prec: usize) -> Self {
        Self::monomial(0, prec)
    }

    /// `q^exp + O(q^prec)`; the zero series when `exp >= prec`.
    pub fn monomial(exp: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if exp < prec {
            s.coeffs[exp] = BigInt::one();
        }
        s
    }

    pub(crate) fn from_parts(coeffs: Vec<BigInt>, modulus: Option<BigInt>) -> Self {
        debug_assert!(!coeffs.is_empty());
        let mut s = Self { coeffs, modulus };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(m) = &self.modulus {
            for c in &mut self.coeffs {
                if c.is_negative() || &*c >= m {
                    *c = c.mod_floor(m);
                }
            }
        }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&BigInt> {
        self.coeffs
            .get(n)
            .ok_or(Error::PrecisionExceeded { index: n, prec: self.prec() })
    }

    /// Index of the first nonzero coefficient, `None` for `O(q^prec)`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First exponent below the shared precision where the two series differ.
    pub fn first_mismatch(&self, other: &PowerSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Drops coefficients at and above `prec` (no-op if already shorter).
    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec > 0, "precision must be positive");
        let n = prec.min(self.prec());
        Self { coeffs: self.coeffs[..n].to_vec(), modulus: self.modulus.clone() }
    }

    /// Zero-extends to `prec`. Only valid where the caller knows the missing
    /// coefficients are irrelevant (Newton steps).
    pub(crate) fn pad_to(&self, prec: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.resize(prec.max(s.prec()), BigInt::zero());
        s
    }

    /// Multiplies by `q^k`, keeping the precision.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.prec();
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate().take(n.saturating_sub(k)) {
            coeffs[i + k] = c.clone();
        }
        Self { coeffs, modulus: self.modulus.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_parts(self.coeffs.iter().map(|x| x * c).collect(), self.modulus.clone())
    }

    /// `a·f + b·g` to the shared precision.
    pub fn linear_combine(a: &BigInt, f: &PowerSeries, b: &BigInt, g: &PowerSeries) -> Result<Self> {
        let modulus = common_modulus(f, g)?;
        let n = f.prec().min(g.prec());
        let coeffs = f.coeffs[..n]
            .iter()
            .zip(&g.coeffs[..n])
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self::from_parts(coeffs, modulus))
    }

    /// Cauchy product truncated to the shared precision.
    pub fn mul(&self, other: &PowerSeries) -> Result<Self> {
        let modulus = common_modulus(self, other)?;
        let n = self.prec().min(other.prec());
        Ok(Self::from_parts(mul::mul_truncated(&self.coeffs, &other.coeffs, n), modulus))
    }

    /// Canonical residues modulo `m` (which must be at least 2).
    pub fn reduce_mod(&self, m: &BigInt) -> Result<Self> {
        if *m < BigInt::from(2) {
            return Err(Error::BadParameter(format!("modulus {m} must be >= 2")));
        }
        if let Some(old) = &self.modulus {
            if !old.is_multiple_of(m) {
                return Err(Error::ModulusMismatch(old.to_string(), m.to_string()));
            }
        }
        Ok(Self::from_parts(self.coeffs.clone(), Some(m.clone())))
    }

    /// `D = q d/dq`: the coefficient of `qⁿ` becomes `n·fₙ`.
    pub fn d_operator(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigInt::from(n))
            .collect();
        Self::from_parts(coeffs, self.modulus.clone())
    }

    /// Plain derivative `d/dq`; loses one order of precision.
    pub fn derivative(&self) -> Result<Self> {
        if self.prec() < 2 {
            return Err(Error::InvalidPrecision(0));
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigInt::from(n + 1))
            .collect();
        Ok(Self::from_parts(coeffs, self.modulus.clone()))
    }

    /// The substitution `q ↦ -q`, i.e. `τ ↦ τ + 1` for `q = e^{πiτ}`.
    pub fn sign_flip(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self::from_parts(coeffs, self.modulus.clone())
    }

    /// The substitution `q ↦ q^s`, keeping the precision.
    pub fn dilate(&self, s: usize) -> Self {
        assert!(s > 0);
        let n = self.prec();
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(s) {
                Some(j) if j < n => coeffs[j] = c.clone(),
                _ => break,
            }
        }
        Self { coeffs, modulus: self.modulus.clone() }
    }
}

/// Moduli of two operands must agree; an exact operand adopts the other's.
fn common_modulus(a: &PowerSeries, b: &PowerSeries) -> Result<Option<BigInt>> {
    match (&a.modulus, &b.modulus) {
        (Some(x), Some(y)) if x != y => Err(Error::ModulusMismatch(x.to_string(), y.to_string())),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x.clone())),
        (None, None) => Ok(None),
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    /// Panics on a modulus mismatch; see [`PowerSeries::linear_combine`].
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::linear_combine(&BigInt::one(), self, &BigInt::one(), rhs)
            .expect("modulus mismatch in series addition")
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::linear_combine(&BigInt::one(), self, &-BigInt::one(), rhs)
            .expect("modulus mismatch in series subtraction")
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    /// Panics on a modulus mismatch; see [`PowerSeries::mul`].
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs).expect("modulus mismatch in series product")
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for PowerSeries {
    /// `1 + 4*q + 4*q^2 + O(q^4)`, integers printed in full.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.prec())?;
        if let Some(m) = &self.modulus {
            write!(f, " (mod {m})")?;
        }
        Ok(())
    }
}
