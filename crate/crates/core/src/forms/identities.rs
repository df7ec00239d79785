//! Coefficient-level checks of the q-expansion identities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{euler_product, theta_by_squares, EtaQuotient, FormContext, FormSpec};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, VerificationReport};
use crate::sequences::{central_binomial_sq, hypergeometric_series, sigma3, sigma3_half};
use crate::series::PowerSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `θ = Σ C(2n,n)² lⁿ`
    Eq1,
    /// `η(τ/2+1/2)/η(τ/2) = η(τ)³/(η(τ/2)²η(2τ))`
    Lemma2,
    /// `θ(τ+1)/θ(τ) = (1−16l)^{1/2}`
    Lemma3,
    /// `−D⁴(θ⁻³)/12 = (1−16l)lθ⁵ − 108(1−16l)²l²θ⁵`
    Lemma4,
    /// `D(l) = l(1−16l)θ²`
    Lemma5,
    /// `l(1−16l)θ⁴ = Σ (−1)^k (σ₃(k/2) − σ₃(k)) q^k`
    Eisenstein,
    /// `Ψ = η(2τ)¹²`
    PsiEta,
    /// `ν = η(2τ)²⁴`
    NuEta,
    /// The hypergeometric ODE on `Σ C(2n,n)² tⁿ`.
    PicardFuchs,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Eq1,
        Identity::Lemma2,
        Identity::Lemma3,
        Identity::Lemma4,
        Identity::Lemma5,
        Identity::Eisenstein,
        Identity::PsiEta,
        Identity::NuEta,
        Identity::PicardFuchs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Eq1 => "eq1",
            Identity::Lemma2 => "lemma2",
            Identity::Lemma3 => "lemma3",
            Identity::Lemma4 => "lemma4",
            Identity::Lemma5 => "lemma5",
            Identity::Eisenstein => "eisenstein",
            Identity::PsiEta => "psi-eta",
            Identity::NuEta => "nu-eta",
            Identity::PicardFuchs => "picard-fuchs",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-");
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == norm)
            .ok_or_else(|| Error::UnknownFamily(format!("identity.{s}")))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Equality of two expansions to their shared precision. The witness is the
/// precision on success, or `[exponent, lhs, rhs]` at the first mismatch.
fn series_check(desc: impl Into<String>, lhs: &PowerSeries, rhs: &PowerSeries) -> CheckRecord {
    let n = lhs.prec().min(rhs.prec());
    match lhs.first_mismatch(rhs) {
        None => CheckRecord::exact(desc, true, vec![BigInt::from(n)]),
        Some(e) => CheckRecord::exact(
            desc,
            false,
            vec![BigInt::from(e), lhs.coeffs()[e].clone(), rhs.coeffs()[e].clone()],
        ),
    }
}

/// Coefficients vanish off the residue class `r (mod 4)`.
fn support_check(desc: impl Into<String>, s: &PowerSeries, r: usize) -> CheckRecord {
    let bad = s
        .coeffs()
        .iter()
        .enumerate()
        .find(|(i, c)| i % 4 != r && !c.is_zero());
    match bad {
        None => CheckRecord::exact(desc, true, vec![BigInt::from(s.prec())]),
        Some((i, c)) => CheckRecord::exact(desc, false, vec![BigInt::from(i), c.clone()]),
    }
}

/// Runs one identity check with every series expanded to `prec` terms.
pub fn verify_identity(id: Identity, prec: usize) -> Result<VerificationReport> {
    if prec < 8 {
        return Err(Error::BadParameter(format!("identity checks need at least 8 terms (got {prec})")));
    }
    let ctx = FormContext::new(prec)?;
    let mut report = VerificationReport::new(format!("identity.{id}")).with_param("terms", prec);
    match id {
        Identity::Eq1 => {
            let f = hypergeometric_series(prec)?;
            let lhs = f.compose(ctx.lambda())?;
            report.push(series_check("sum C(2n,n)^2 l^n = theta (lattice count)", &lhs, &theta_by_squares(prec)));
            report.push(series_check(
                "theta (lattice count) = eta(tau)^10 / (eta(tau/2)^4 eta(2tau)^4)",
                &theta_by_squares(prec),
                &EtaQuotient::theta().expand(prec)?,
            ));
        }
        Identity::Lemma2 => {
            // Cross-multiplied and with the constant phase e^{πi/24} of
            // η(τ/2+1/2) removed, the identity reads
            // P(−q)·P(q)·P(q⁴) = P(q²)³ for P(q) = Π(1 − qⁿ).
            let e1 = euler_product(prec);
            let lhs = e1.sign_flip().mul(&e1)?.mul(&e1.dilate(4))?;
            let rhs = e1.dilate(2).pow(3)?;
            report.push(series_check("P(-q) P(q) P(q^4) = P(q^2)^3", &lhs, &rhs));
        }
        Identity::Lemma3 => {
            let lhs = ctx.theta().sign_flip();
            let rhs = ctx.theta().mul(&ctx.one_minus_16l().sqrt_unit()?)?;
            report.push(series_check("theta(tau+1) = theta(tau) sqrt(1-16l)", &lhs, &rhs));
        }
        Identity::Lemma4 => {
            let theta = ctx.theta();
            let mut lhs = theta.pow(3)?.inverse()?;
            for _ in 0..4 {
                lhs = lhs.d_operator();
            }
            let first = ctx.build(FormSpec::F1)?;
            let second = ctx.build(FormSpec::G1)?;
            // both sides multiplied by −12
            let rhs = PowerSeries::linear_combine(&BigInt::from(-12), &first, &BigInt::from(1296), &second)?;
            report.push(series_check(
                "D^4(theta^-3) = -12 (1-16l) l theta^5 + 1296 (1-16l)^2 l^2 theta^5",
                &lhs,
                &rhs,
            ));
        }
        Identity::Lemma5 => {
            let lhs = ctx.lambda().d_operator();
            let rhs = ctx.lambda().mul(ctx.one_minus_16l())?.mul(&ctx.theta().pow(2)?)?;
            report.push(series_check("D(l) = l (1-16l) theta^2", &lhs, &rhs));
        }
        Identity::Eisenstein => {
            let lhs = ctx.build(FormSpec::Eisenstein1)?;
            let rhs: Vec<BigInt> = (0..prec as u64)
                .map(|k| {
                    if k == 0 {
                        return BigInt::zero();
                    }
                    let v = sigma3_half(k) - sigma3(k);
                    if k % 2 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            let rhs = PowerSeries::new(rhs, prec)?;
            report.push(series_check("l (1-16l) theta^4 = sum (-1)^k (sigma3(k/2) - sigma3(k)) q^k", &lhs, &rhs));
        }
        Identity::PsiEta => {
            let psi = ctx.build(FormSpec::Psi)?;
            let eta = EtaQuotient::new([(4, 12)]).expand(prec)?;
            report.push(series_check("sqrt(1-16l) l^2 theta^6 = eta(2tau)^12 [derived oracle]", &psi, &eta));
            report.push(support_check("Psi supported on exponents = 2 (mod 4)", &psi, 2));
            if prec > 4 {
                let a2 = psi.coeffs()[4].clone();
                report.push(CheckRecord::exact("Psi: a(2) = 0 (coefficient of q^4)", a2.is_zero(), vec![a2]));
            }
            if prec > 18 {
                let (a3, a9) = (psi.coeffs()[6].clone(), psi.coeffs()[18].clone());
                let expect = &a3 * &a3 - BigInt::from(243);
                report.push(CheckRecord::exact("Psi: a(9) = a(3)^2 - 3^5", a9 == expect, vec![a3, a9]));
            }
        }
        Identity::NuEta => {
            let nu = ctx.build(FormSpec::Nu)?;
            let eta = EtaQuotient::new([(4, 24)]).expand(prec)?;
            report.push(series_check("theta^12 (1-16l) l^4 = eta(2tau)^24 [derived oracle]", &nu, &eta));
            report.push(support_check("nu supported on exponents = 0 (mod 4)", &nu, 0));
        }
        Identity::PicardFuchs => {
            // (n+1)² a_{n+1} = 4(2n+1)² a_n
            let bad = (0..prec as u64 - 1).find(|&n| {
                BigInt::from((n + 1) * (n + 1)) * central_binomial_sq(n + 1)
                    != BigInt::from(4 * (2 * n + 1) * (2 * n + 1)) * central_binomial_sq(n)
            });
            report.push(match bad {
                None => CheckRecord::exact("(n+1)^2 a(n+1) = 4 (2n+1)^2 a(n), a(n) = C(2n,n)^2", true, vec![BigInt::from(prec - 1)]),
                Some(n) => CheckRecord::exact("(n+1)^2 a(n+1) = 4 (2n+1)^2 a(n), a(n) = C(2n,n)^2", false, vec![BigInt::from(n)]),
            });
            // With t = 16x the ODE becomes x(16x−1)G'' + (32x−1)G' + 4G = 0.
            let g = hypergeometric_series(prec)?;
            let g1 = g.derivative()?;
            let g2 = g1.derivative()?;
            let lhs = &(&PowerSeries::from_i64s(&[0, -1, 16], prec)?.mul(&g2)?
                + &PowerSeries::from_i64s(&[-1, 32], prec)?.mul(&g1)?)
                + &g.scale(&BigInt::from(4));
            report.push(series_check(
                "x(16x-1) G'' + (32x-1) G' + 4G = 0 for G = sum C(2n,n)^2 x^n",
                &lhs,
                &PowerSeries::zero(lhs.prec()),
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold_at_40_terms() {
        for id in Identity::ALL {
            let r = verify_identity(id, 40).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn lemma5_prefix() {
        let ctx = FormContext::new(5).unwrap();
        let d = ctx.lambda().d_operator();
        assert_eq!(d, PowerSeries::from_i64s(&[0, 1, -16, 132, -768], 5).unwrap());
    }

    #[test]
    fn eisenstein_prefix() {
        let e = FormContext::new(5).unwrap().build(FormSpec::Eisenstein1).unwrap();
        assert_eq!(e.coeffs()[2], BigInt::from(-8));
        assert_eq!(e.coeffs()[4], BigInt::from(-64));
    }

    #[test]
    fn small_precision_rejected() {
        assert!(verify_identity(Identity::Lemma5, 7).is_err());
    }

    #[test]
    fn names_roundtrip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert_eq!("psi_eta".parse::<Identity>().unwrap(), Identity::PsiEta);
        assert!("lemma9".parse::<Identity>().is_err());
    }

    #[test]
    fn mismatch_witness() {
        let a = PowerSeries::from_i64s(&[1, 2, 3], 3).unwrap();
        let b = PowerSeries::from_i64s(&[1, 2, 4], 3).unwrap();
        let r = series_check("x", &a, &b);
        assert_eq!(r.witness, vec![BigInt::from(2), BigInt::from(3), BigInt::from(4)]);
    }
}
