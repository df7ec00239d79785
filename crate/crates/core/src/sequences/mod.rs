//! Integer sequences attached to the central-binomial series
//! `F(t) = Σ C(2n,n)² tⁿ`, which satisfies `θ = F(l)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Index-addressable integer data consumed by the congruence checks.
pub trait Sequence {
    fn label(&self) -> &str;

    /// Value at `index`. Indices below the first valid one read as zero;
    /// indices that were never computed are an error.
    fn value_at(&self, index: usize) -> Result<BigInt>;
}

/// A contiguous run of exact sequence values starting at `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: String,
    pub offset: usize,
    pub values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn new(name: impl Into<String>, offset: usize, values: Vec<BigInt>) -> Self {
        Self { name: name.into(), offset, values }
    }

    /// Coefficients of a series as a table indexed from 0.
    pub fn from_series(name: impl Into<String>, s: &PowerSeries) -> Self {
        Self::new(name, 0, s.coeffs().to_vec())
    }

    /// One past the last index held.
    pub fn end(&self) -> usize {
        self.offset + self.values.len()
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        index.checked_sub(self.offset).and_then(|i| self.values.get(i))
    }

    /// The table re-indexed so that `new(i) = old(i − by)`.
    pub fn shifted(&self, by: usize) -> Self {
        Self::new(format!("{}(n-{by})", self.name), self.offset + by, self.values.clone())
    }

    /// The series `Σ value(i) tⁱ` to precision `end()`.
    pub fn to_series(&self) -> Result<PowerSeries> {
        let mut coeffs = vec![BigInt::zero(); self.offset];
        coeffs.extend(self.values.iter().cloned());
        PowerSeries::new(coeffs, self.end().max(1))
    }
}

impl Sequence for SequenceTable {
    fn label(&self) -> &str {
        &self.name
    }

    fn value_at(&self, index: usize) -> Result<BigInt> {
        if index < self.offset {
            return Ok(BigInt::zero());
        }
        self.get(index)
            .cloned()
            .ok_or(Error::PrecisionExceeded { index, prec: self.end() })
    }
}

/// Values known only at selected indices; possibly residues modulo `modulus`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseSequence {
    pub name: String,
    pub values: BTreeMap<usize, BigInt>,
    pub modulus: Option<BigInt>,
}

impl Sequence for SparseSequence {
    fn label(&self) -> &str {
        &self.name
    }

    fn value_at(&self, index: usize) -> Result<BigInt> {
        self.values.get(&index).cloned().ok_or(Error::PrecisionExceeded {
            index,
            prec: self.values.keys().next_back().map_or(0, |k| k + 1),
        })
    }
}

/// `C(n, k)` by the exact multiplicative recurrence along a Pascal row.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `C(2n, n)`, `n = 0..len`.
pub fn central_binomials(len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigInt::one();
    for n in 0..len as u64 {
        if n > 0 {
            c = c * (2 * n) * (2 * n - 1) / (n * n);
        }
        out.push(c.clone());
    }
    out
}

pub fn central_binomial_sq(n: u64) -> BigInt {
    let c = binomial(2 * n, n);
    &c * &c
}

/// `F(t) = Σ C(2n,n)² tⁿ` to precision `prec`.
pub fn hypergeometric_series(prec: usize) -> Result<PowerSeries> {
    let coeffs = central_binomials(prec).into_iter().map(|c| &c * &c).collect();
    PowerSeries::new(coeffs, prec)
}

/// `F(t) mod m` to precision `prec`, raised to `power`.
pub fn hypergeometric_power_mod(power: u32, prec: usize, m: &BigInt) -> Result<PowerSeries> {
    let mut coeffs = Vec::with_capacity(prec);
    let mut c = BigInt::one();
    for n in 0..prec as u64 {
        if n > 0 {
            c = c * (2 * n) * (2 * n - 1) / (n * n);
        }
        coeffs.push((&c * &c).mod_floor(m));
    }
    PowerSeries::new(coeffs, prec.max(1))?.reduce_mod(m)?.pow(power)
}

/// `A_k(n) = Σ_{i₁+…+i_k=n} Π C(2i_j, i_j)²`, the coefficients of `F^k`.
pub fn a_k_table(k: u32, len: usize) -> Result<SequenceTable> {
    if k == 0 {
        return Err(Error::BadParameter("A_k needs k >= 1".into()));
    }
    let f = hypergeometric_series(len.max(1))?.pow(k)?;
    Ok(SequenceTable::new(format!("A{k}"), 0, f.coeffs()[..len].to_vec()))
}

/// `B_n` and `C_n`: coefficients of `(1−16t)^⌊(n−1)/2⌋ t^{2n−1} F^{6n−1}` and
/// `(1−16t)^⌊(n−1)/2⌋ t^{2n−2} F^{6n−3}`.
pub fn b_c_tables(n: u32, len: usize) -> Result<(SequenceTable, SequenceTable)> {
    if n == 0 {
        return Err(Error::BadParameter("B_n, C_n need n >= 1".into()));
    }
    let prec = len.max(1);
    let f = hypergeometric_series(prec)?;
    let damp = PowerSeries::from_i64s(&[1, -16], prec.max(2))?.truncate(prec).pow((n - 1) / 2)?;
    let c_series = damp.mul(&f.pow(6 * n - 3)?)?.shift_up(2 * n as usize - 2);
    let b_series = damp.mul(&f.pow(6 * n - 1)?)?.shift_up(2 * n as usize - 1);
    Ok((
        SequenceTable::new(format!("B{n}"), 0, b_series.coeffs()[..len].to_vec()),
        SequenceTable::new(format!("C{n}"), 0, c_series.coeffs()[..len].to_vec()),
    ))
}

/// `D₃(n) = A₃(n−1) − 16·A₃(n−2)` with `A₃` zero at negative indices.
pub fn d3_table(len: usize) -> Result<SequenceTable> {
    let a3 = a_k_table(3, len.saturating_sub(1))?;
    let at = |i: Option<usize>| i.and_then(|i| a3.get(i).cloned()).unwrap_or_default();
    let values = (0..len)
        .map(|n| at(n.checked_sub(1)) - 16 * at(n.checked_sub(2)))
        .collect();
    Ok(SequenceTable::new("D3", 0, values))
}

/// Apéry numbers `B(n) = Σ_k C(n+k,k)·C(n,k)²` from the defining sum.
pub fn apery_b_table(len: usize) -> SequenceTable {
    let values = (0..len as u64)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let c = binomial(n, k);
                    binomial(n + k, k) * &c * &c
                })
                .sum()
        })
        .collect();
    SequenceTable::new("aperyB", 0, values)
}

/// Exact Apéry numbers at the requested indices, streamed through
/// `n²uₙ = (11n² − 11n + 3)u_{n−1} + (n−1)²u_{n−2}`.
pub fn apery_values_at(indices: &BTreeSet<usize>) -> SparseSequence {
    let mut values = BTreeMap::new();
    let Some(&last) = indices.iter().next_back() else {
        return SparseSequence { name: "aperyB".into(), ..Default::default() };
    };
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for n in 0..=last {
        if n > 0 {
            let m = n as u64;
            let a = BigInt::from(11 * m * m - 11 * m + 3);
            let b = BigInt::from((m - 1) * (m - 1));
            let next: BigInt = (a * &cur + b * &prev) / (m * m);
            prev = std::mem::replace(&mut cur, next);
        }
        if indices.contains(&n) {
            values.insert(n, cur.clone());
        }
    }
    SparseSequence { name: "aperyB".into(), values, modulus: None }
}

/// `σ₃(k) = Σ_{d | k} d³`
pub fn sigma3(k: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            s += BigInt::from(d).pow(3);
            let e = k / d;
            if e != d {
                s += BigInt::from(e).pow(3);
            }
        }
        d += 1;
    }
    s
}

/// `σ₃(k/2)`, read as 0 for odd `k`.
pub fn sigma3_half(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        sigma3(k / 2)
    } else {
        BigInt::zero()
    }
}

/// CLI-visible sequence names: `A:<k>`, `B:<n>`, `C:<n>`, `D3`, `aperyB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    A(u32),
    B(u32),
    C(u32),
    D3,
    AperyB,
}

impl SequenceSpec {
    pub fn table(&self, len: usize) -> Result<SequenceTable> {
        match *self {
            SequenceSpec::A(k) => a_k_table(k, len),
            SequenceSpec::B(n) => b_c_tables(n, len).map(|t| t.0),
            SequenceSpec::C(n) => b_c_tables(n, len).map(|t| t.1),
            SequenceSpec::D3 => d3_table(len),
            SequenceSpec::AperyB => Ok(apery_b_table(len)),
        }
    }

    pub fn cache_key(&self) -> (&'static str, Option<u32>) {
        match *self {
            SequenceSpec::A(k) => ("A", Some(k)),
            SequenceSpec::B(n) => ("B", Some(n)),
            SequenceSpec::C(n) => ("C", Some(n)),
            SequenceSpec::D3 => ("D3", None),
            SequenceSpec::AperyB => ("aperyB", None),
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSequence(s.to_owned());
        match s {
            "D3" => return Ok(SequenceSpec::D3),
            "aperyB" => return Ok(SequenceSpec::AperyB),
            _ => {}
        }
        let (family, n) = s.split_once(':').ok_or_else(unknown)?;
        let n: u32 = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        match family {
            "A" => Ok(SequenceSpec::A(n)),
            "B" => Ok(SequenceSpec::B(n)),
            "C" => Ok(SequenceSpec::C(n)),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cache_key() {
            (name, Some(n)) => write!(f, "{name}:{n}"),
            (name, None) => f.write_str(name),
        }
    }
}
