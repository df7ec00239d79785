//! One verifier per congruence family. Each returns a report whose records
//! are ordered by prime, then `m`, then `r`, independent of thread count.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{
    cm_b1, cornacchia, legendre_minus_one, three_term_check, transfer_coefficients, transfer_scaled, IndexRule,
};
use crate::arith::{pow_mod, primes_in};
use crate::error::{Error, Result};
use crate::forms::{FormContext, FormSpec};
use crate::report::{CheckRecord, VerificationReport};
use crate::sequences::{
    a_k_table, apery_values_at, b_c_tables, binomial, d3_table, hypergeometric_power_mod, Sequence,
    SequenceTable, SparseSequence,
};

/// Series precision for a family: derived from its bounds, or fixed by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terms {
    Auto,
    Fixed(usize),
}

impl Terms {
    pub fn resolve(self, needed: usize) -> usize {
        match self {
            Terms::Auto => needed.max(1),
            Terms::Fixed(n) => n,
        }
    }
}

/// Inclusive range of primes (or of `n` for the `n³` family).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub min: u64,
    pub max: u64,
}

impl Bounds {
    pub fn new(min: u64, max: u64) -> Self {
        Self { min, max }
    }

    pub fn upto(max: u64) -> Self {
        Self { min: 2, max }
    }

    fn odd_primes(&self) -> Vec<u64> {
        primes_in(self.min.max(3), self.max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem2Part {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cor1Relation {
    Eq1,
    Eq2,
    Eq3,
    Eq4,
}

impl Cor1Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Cor1Relation::Eq1 => "eq1",
            Cor1Relation::Eq2 => "eq2",
            Cor1Relation::Eq3 => "eq3",
            Cor1Relation::Eq4 => "eq4",
        }
    }
}

/// Residue of `(−1)^e` that a prime must have mod 4: 1 for even `e`, 3 for odd.
fn sign_class(e: u32) -> u64 {
    if e.is_multiple_of(2) {
        1
    } else {
        3
    }
}

fn table_value(t: &dyn Sequence, i: u64) -> Result<BigInt> {
    t.value_at(i as usize)
}

/// `h_n` vanishes at every prime `p ≡ (−1)^{n+1} (mod 4)`.
pub fn verify_theorem1(n: u32, primes: Bounds, terms: Terms) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::BadParameter("theorem1 needs n >= 1".into()));
    }
    let prec = terms.resolve(primes.max as usize + 1);
    let h = SequenceTable::from_series(format!("h{n}"), &FormContext::new(prec)?.build(FormSpec::H(n))?);
    let class = sign_class(n + 1);
    let mut report = VerificationReport::new("theorem1")
        .with_param("n", n)
        .with_param("prime_min", primes.min)
        .with_param("prime_max", primes.max)
        .with_param("terms", prec);
    for p in primes.odd_primes().into_iter().filter(|p| p % 4 == class) {
        let a = table_value(&h, p)?;
        report.push(CheckRecord::exact(format!("n={n} p={p}: a_{n}(p) = 0"), a.is_zero(), vec![p.into(), a]));
    }
    // the coefficients vanish on the whole residue class, not only at primes
    let bad = h.values.iter().enumerate().find(|(i, c)| *i as u64 % 4 == class && !c.is_zero());
    report.push(CheckRecord::exact(
        format!("n={n}: a_{n}(k) = 0 for every k = {class} (mod 4), k < {prec}"),
        bad.is_none(),
        bad.map_or_else(|| vec![BigInt::from(prec)], |(i, c)| vec![BigInt::from(i), c.clone()]),
    ));
    Ok(report)
}

pub fn verify_theorem2(part: Theorem2Part, bounds: Bounds, n: Option<u32>, terms: Terms) -> Result<VerificationReport> {
    let prec = terms.resolve(bounds.max as usize + 1);
    let ctx = FormContext::new(prec)?;
    let base = VerificationReport::new(match part {
        Theorem2Part::A => "theorem2a",
        Theorem2Part::B => "theorem2b",
        Theorem2Part::C => "theorem2c",
    })
    .with_param("min", bounds.min)
    .with_param("max", bounds.max)
    .with_param("terms", prec);
    match part {
        Theorem2Part::A => {
            let f1 = SequenceTable::from_series("f1", &ctx.build(FormSpec::F1)?);
            let mut report = base;
            for p in bounds.odd_primes() {
                let (b, cm) = (table_value(&f1, p)?, cm_b1(p)?);
                let rule = if p % 4 == 1 { "2x^4 - 12x^2y^2 + 2y^4" } else { "0" };
                report.push(CheckRecord::exact(format!("p={p}: b1(p) = {rule}"), b == cm, vec![p.into(), b, cm]));
            }
            Ok(report)
        }
        Theorem2Part::B => {
            let f1 = SequenceTable::from_series("f1", &ctx.build(FormSpec::F1)?);
            let g1 = SequenceTable::from_series("g1", &ctx.build(FormSpec::G1)?);
            let mut report = base;
            for k in bounds.min.max(3)..=bounds.max {
                let diff: BigInt = table_value(&f1, k)? - 108 * table_value(&g1, k)?;
                let modulus = BigInt::from(k).pow(3);
                let ok = diff.mod_floor(&modulus).is_zero();
                report.push(CheckRecord::modular(
                    format!("n={k}: b1(n) - 108 c1(n) = 0 mod n^3"),
                    ok,
                    vec![k.into(), diff],
                    modulus,
                ));
            }
            Ok(report)
        }
        Theorem2Part::C => {
            let n = n.ok_or_else(|| Error::BadParameter("theorem2c needs --n".into()))?;
            if n < 2 {
                return Err(Error::BadParameter(format!("theorem2c needs n >= 2, got {n}")));
            }
            let f = SequenceTable::from_series(format!("f{n}"), &ctx.build(FormSpec::F(n))?);
            let class = sign_class(n);
            let mut report = base.with_param("n", n);
            for p in bounds.odd_primes().into_iter().filter(|p| p % 4 == class) {
                let b = table_value(&f, p)?;
                report.push(CheckRecord::exact(format!("n={n} p={p}: b_{n}(p) = 0"), b.is_zero(), vec![p.into(), b]));
            }
            let bad = f.values.iter().enumerate().find(|(i, c)| *i as u64 % 4 == class && !c.is_zero());
            report.push(CheckRecord::exact(
                format!("n={n}: b_{n}(k) = 0 for every k = {class} (mod 4), k < {prec}"),
                bad.is_none(),
                bad.map_or_else(|| vec![BigInt::from(prec)], |(i, c)| vec![BigInt::from(i), c.clone()]),
            ));
            Ok(report)
        }
    }
}

/// `b₁(p)` from the closed formula, checked against the `f₁` expansion.
fn alpha_cross_checked(primes: &[u64], terms: Terms) -> Result<BTreeMap<u64, BigInt>> {
    let Some(&pmax) = primes.last() else {
        return Ok(BTreeMap::new());
    };
    let prec = terms.resolve(pmax as usize + 1).max(pmax as usize + 1);
    let f1 = SequenceTable::from_series("f1", &FormContext::new(prec)?.build(FormSpec::F1)?);
    let mut out = BTreeMap::new();
    for &p in primes {
        let (closed, expanded) = (cm_b1(p)?, table_value(&f1, p)?);
        if closed != expanded {
            return Err(Error::CrossCheck(format!("b1({p}): formula {closed}, expansion {expanded}")));
        }
        out.insert(p, closed);
    }
    Ok(out)
}

/// `A₃` (or `D₃`) residues mod `p^{r_max}` at every index a three-term scan
/// over `m <= m_max`, `1 <= r <= r_max` reads.
fn cor1_residues(rel: Cor1Relation, p: u64, m_max: u64, r_max: u32, terms: Terms) -> Result<SparseSequence> {
    let modulus = BigInt::from(p).pow(r_max);
    let needed = (m_max * p.pow(r_max)) as usize;
    let len = terms.resolve(needed);
    let mut wanted = BTreeSet::new();
    for m in 1..=m_max {
        for r in 1..=r_max as i64 {
            for k in [r, r - 1, r - 2] {
                if let Some(i) = IndexRule::MINUS_ONE.apply(m, p, k) {
                    wanted.insert(i);
                }
            }
        }
    }
    let a3 = hypergeometric_power_mod(3, len, &modulus)?;
    let a3_at = |i: usize| -> Result<BigInt> {
        if i >= a3.prec() {
            return Err(Error::PrecisionExceeded { index: i, prec: a3.prec() });
        }
        Ok(a3.coeffs()[i].clone())
    };
    let mut values = BTreeMap::new();
    for i in wanted {
        let v = match rel {
            Cor1Relation::Eq4 => {
                let back1 = i.checked_sub(1).map(a3_at).transpose()?.unwrap_or_default();
                let back2 = i.checked_sub(2).map(a3_at).transpose()?.unwrap_or_default();
                let d: BigInt = back1 - 16 * back2;
                d.mod_floor(&modulus)
            }
            _ => a3_at(i)?,
        };
        values.insert(i, v);
    }
    let name = if rel == Cor1Relation::Eq4 { "D3" } else { "A3" };
    Ok(SparseSequence { name: format!("{name} mod {modulus}"), values, modulus: Some(modulus) })
}

pub fn verify_cor1(rel: Cor1Relation, primes: Bounds, m_max: u64, r_max: u32, terms: Terms) -> Result<VerificationReport> {
    if primes.min <= 3 {
        return Err(Error::BadParameter(format!("cor1 needs primes p > 3, got prime-min {}", primes.min)));
    }
    let ps = primes_in(primes.min, primes.max);
    let alpha = alpha_cross_checked(&ps, Terms::Auto)?;
    let mut report = VerificationReport::new(format!("cor1.{}", rel.name()))
        .with_param("prime_min", primes.min)
        .with_param("prime_max", primes.max);
    match rel {
        Cor1Relation::Eq1 | Cor1Relation::Eq2 => {
            let len = terms.resolve(primes.max as usize);
            let table = if rel == Cor1Relation::Eq1 { a_k_table(3, len)? } else { d3_table(len)? };
            report = report.with_param("terms", len);
            for p in ps {
                let pb = BigInt::from(p);
                let value = table_value(&table, p - 1)?.mod_floor(&pb);
                let rhs = if p % 4 == 1 {
                    let t = cornacchia(p)?;
                    let x4 = BigInt::from(pow_mod(t.x, 4, p));
                    let y4 = BigInt::from(pow_mod(t.y, 4, p));
                    let (lx, ly): (BigInt, BigInt) = (16 * &x4 % &pb, 16 * &y4 % &pb);
                    report.push(CheckRecord::modular(
                        format!("p={p}: 16x^4 = 16y^4 for p = {}^2 + {}^2", t.x, t.y),
                        lx == ly,
                        vec![pb.clone(), lx, ly],
                        pb.clone(),
                    ));
                    if rel == Cor1Relation::Eq1 {
                        (BigInt::from(16) * x4).mod_floor(&pb)
                    } else {
                        let inv27 = BigInt::from(pow_mod(27, p - 2, p));
                        (BigInt::from(4) * inv27 * x4).mod_floor(&pb)
                    }
                } else {
                    BigInt::zero()
                };
                let (name, form) = match rel {
                    Cor1Relation::Eq1 => ("A3", "16x^4"),
                    _ => ("D3", "(4/27)x^4"),
                };
                let form = if p % 4 == 1 { form } else { "0" };
                report.push(CheckRecord::modular(
                    format!("p={p}: {name}(p-1) = {form} mod p"),
                    value == rhs,
                    vec![pb.clone(), value, rhs],
                    pb,
                ));
            }
        }
        Cor1Relation::Eq3 | Cor1Relation::Eq4 => {
            if m_max == 0 || r_max == 0 {
                return Err(Error::BadParameter("cor1 needs m-max, r-max >= 1".into()));
            }
            report = report.with_param("m_max", m_max).with_param("r_max", r_max);
            let per_prime: Vec<Result<Vec<CheckRecord>>> = ps
                .par_iter()
                .map(|&p| {
                    let seq = cor1_residues(rel, p, m_max, r_max, terms)?;
                    let leg = legendre_minus_one(p)?;
                    let beta = BigInt::from(leg) * BigInt::from(p).pow(4);
                    let mut out = Vec::new();
                    for m in 1..=m_max {
                        for r in 1..=r_max {
                            let s = match rel {
                                Cor1Relation::Eq3 => r,
                                _ => (r as i64 - (leg + 1) / 2) as u32,
                            };
                            let inst = three_term_check(&seq, &alpha[&p], &beta, p, m, r, s, IndexRule::MINUS_ONE)?;
                            out.push(inst.to_record(rel.name()));
                        }
                    }
                    Ok(out)
                })
                .collect();
            for recs in per_prime {
                for rec in recs? {
                    report.push(rec);
                }
            }
        }
    }
    Ok(report)
}

/// `B_n(p−1) ≡ 0` for `p ≡ (−1)^{n+1}` and `C_n(p−1) ≡ 0` for `p ≡ (−1)^n` (mod 4).
pub fn verify_cor2(n: u32, primes: Bounds, terms: Terms) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::BadParameter("cor2 needs n >= 1".into()));
    }
    let len = terms.resolve(primes.max as usize);
    let (b, c) = b_c_tables(n, len)?;
    let mut report = VerificationReport::new("cor2")
        .with_param("n", n)
        .with_param("prime_min", primes.min)
        .with_param("prime_max", primes.max)
        .with_param("terms", len);
    for p in primes.odd_primes() {
        let (table, name) = if p % 4 == sign_class(n + 1) { (&b, "B") } else { (&c, "C") };
        let pb = BigInt::from(p);
        let v = table_value(table, p - 1)?;
        let ok = v.mod_floor(&pb).is_zero();
        report.push(CheckRecord::modular(format!("n={n} p={p}: {name}_{n}(p-1) = 0 mod p"), ok, vec![pb.clone(), v], pb));
    }
    Ok(report)
}

/// `A₂(p−1) ≡ C(p−1,(p−1)/2)⁴ ≡ 1 (mod p)` and the Eisenstein coefficient at `p` is `≡ 1`.
pub fn verify_example(primes: Bounds, terms: Terms) -> Result<VerificationReport> {
    let len = terms.resolve(primes.max as usize + 1);
    let a2 = a_k_table(2, len)?;
    let eis = SequenceTable::from_series("eis1", &FormContext::new(len)?.build(FormSpec::Eisenstein1)?);
    let mut report = VerificationReport::new("example")
        .with_param("prime_min", primes.min)
        .with_param("prime_max", primes.max)
        .with_param("terms", len);
    for p in primes.odd_primes() {
        let pb = BigInt::from(p);
        let one = BigInt::one();
        let a = table_value(&a2, p - 1)?.mod_floor(&pb);
        report.push(CheckRecord::modular(format!("p={p}: A2(p-1) = 1 mod p"), a == one, vec![pb.clone(), a], pb.clone()));
        let c = binomial(p - 1, (p - 1) / 2).pow(4).mod_floor(&pb);
        report.push(CheckRecord::modular(
            format!("p={p}: C(p-1,(p-1)/2)^4 = 1 mod p"),
            c == one,
            vec![pb.clone(), c],
            pb.clone(),
        ));
        let e = table_value(&eis, p)?.mod_floor(&pb);
        report.push(CheckRecord::modular(
            format!("p={p}: Eisenstein coefficient of q^p = 1 mod p"),
            e == one,
            vec![pb.clone(), e],
            pb,
        ));
    }
    Ok(report)
}

/// The Apéry three-term congruence with `a(p)` read as the coefficient of
/// `q^{2p}` in `η(4τ)⁶`.
pub fn verify_intro_apery(primes: Bounds, m_max: u64, r_max: u32) -> Result<VerificationReport> {
    if m_max == 0 || m_max.is_multiple_of(2) {
        return Err(Error::BadParameter(format!("intro-apery needs odd m-max, got {m_max}")));
    }
    if r_max == 0 {
        return Err(Error::BadParameter("intro-apery needs r-max >= 1".into()));
    }
    let ps = primes.odd_primes();
    let eta = FormContext::new(2 * primes.max as usize + 1)?.build(FormSpec::AperyEta)?;
    let mut wanted = BTreeSet::new();
    for &p in &ps {
        for m in (1..=m_max).step_by(2) {
            for r in 1..=r_max as i64 {
                for k in [r, r - 1, r - 2] {
                    if let Some(i) = IndexRule::HALF_MINUS_ONE.apply(m, p, k) {
                        wanted.insert(i);
                    }
                }
            }
        }
    }
    let apery = apery_values_at(&wanted);
    let mut report = VerificationReport::new("intro-apery")
        .with_param("prime_min", primes.min)
        .with_param("prime_max", primes.max)
        .with_param("m_max", m_max)
        .with_param("r_max", r_max)
        .with_param("a(n)", "coefficient of q^(2n) in eta(4tau)^6");
    for p in ps {
        let alpha = eta.coeff(2 * p as usize)?.clone();
        let sign = if p % 4 == 1 { 1 } else { -1 };
        let beta = BigInt::from(sign * (p * p) as i64);
        for m in (1..=m_max).step_by(2) {
            for r in 1..=r_max {
                let inst = three_term_check(&apery, &alpha, &beta, p, m, r, r, IndexRule::HALF_MINUS_ONE)?;
                report.push(inst.to_record("B((mp^r-1)/2)"));
            }
        }
    }
    Ok(report)
}

/// The coefficient bridges between hypergeometric sequences and forms, the
/// `c_p ≡ b_p (mod p)` lemma on each bridge, and the three-term relation on
/// both sides of the `A₃ ↔ f₁` bridge.
pub fn verify_transfer_bridges(len: usize, prime_bound: u64) -> Result<VerificationReport> {
    if len < 8 {
        return Err(Error::BadParameter(format!("transfer checks need at least 8 terms (got {len})")));
    }
    let ctx = FormContext::new(len + 1)?;
    let l = ctx.lambda();
    let mut report = VerificationReport::new("transfer").with_param("terms", len).with_param("prime_max", prime_bound);
    let mut pairs: Vec<(String, SequenceTable, SequenceTable, SequenceTable)> = Vec::new();
    for n in 1..=4u32 {
        let (bn, cn) = b_c_tables(n, len)?;
        let h = SequenceTable::from_series(format!("h{n}"), &ctx.build(FormSpec::H(n))?);
        let f = SequenceTable::from_series(format!("f{n}"), &ctx.build(if n == 1 { FormSpec::F1 } else { FormSpec::F(n) })?);
        let b = bn.shifted(1);
        pairs.push((format!("B{n} -> h{n}"), transfer_coefficients(&b, l, len)?, h, b));
        let c = cn.shifted(1);
        pairs.push((format!("C{n} -> f{n}"), transfer_coefficients(&c, l, len)?, f, c));
    }
    let d3 = d3_table(len)?.shifted(1);
    let g1 = SequenceTable::from_series("g1", &ctx.build(FormSpec::G1)?);
    pairs.push(("D3 -> g1".into(), transfer_coefficients(&d3, l, len)?, g1, d3));

    let sixteen = BigInt::from(16);
    let a3 = a_k_table(3, len)?.shifted(1);
    let scaled = transfer_scaled(&a3, &l.scale(&sixteen), &sixteen, len)?;
    let f1 = ctx.build(FormSpec::F1)?;
    let f1x16 = SequenceTable::from_series("16 f1", &f1.scale(&sixteen));
    pairs.push(("A3 -> 16 f1 along 16l".into(), scaled, f1x16, a3.clone()));

    for (label, c, form, b) in &pairs {
        let mismatch = (1..=len).find(|&i| c.value_at(i).ok() != form.value_at(i).ok());
        report.push(match mismatch {
            None => CheckRecord::exact(format!("{label}: transferred coefficients equal the form, n <= {len}"), true, vec![len.into()]),
            Some(i) => CheckRecord::exact(
                format!("{label}: transferred coefficients equal the form, n <= {len}"),
                false,
                vec![i.into(), c.value_at(i)?, form.value_at(i)?],
            ),
        });
        // the lemma needs the linear coefficient to be 1; the scaled bridge has 16
        if label.contains("16l") {
            continue;
        }
        for p in primes_in(2, prime_bound.min(len as u64)) {
            let pb = BigInt::from(p);
            let (cp, bp) = (c.value_at(p as usize)?, b.value_at(p as usize)?);
            let ok = (&cp - &bp).mod_floor(&pb).is_zero();
            report.push(CheckRecord::modular(format!("{label}: c_{p} = b_{p} mod {p}"), ok, vec![cp, bp], pb));
        }
    }

    // both sides of A₃ ↔ f₁ satisfy the three-term relation where indices fit
    let f1_table = SequenceTable::from_series("f1", &f1);
    for p in primes_in(5, prime_bound.min(len as u64)) {
        let alpha = cm_b1(p)?;
        let beta = BigInt::from(legendre_minus_one(p)?) * BigInt::from(p).pow(4);
        for r in 1..=2u32 {
            for m in 1..=5u64 {
                if m * p.pow(r) > len as u64 {
                    continue;
                }
                let form_side = three_term_check(&f1_table, &alpha, &beta, p, m, r, r, IndexRule::IDENTITY)?;
                report.push(form_side.to_record("f1"));
                let seq_side = three_term_check(&a3, &alpha, &beta, p, m, r, r, IndexRule::IDENTITY)?;
                report.push(seq_side.to_record("A3(n-1)"));
            }
        }
    }
    Ok(report)
}
