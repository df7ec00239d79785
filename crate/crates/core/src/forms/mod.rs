//! q-expansions of the forms built from `θ`, `l` and `1 − 16l`.
//!
//! The three basic functions come from their defining expansions: `θ` as the
//! square of `Σ_{n∈ℤ} q^{n²}`, `l` and `1 − 16l` as eta quotients. Every other
//! form is a product of powers of these.

mod dimension;
mod eta;
mod identities;

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::PowerSeries;

pub use dimension::dim_cusp_forms;
pub use eta::{euler_product, EtaQuotient};
pub use identities::{verify_identity, Identity};

/// The named forms. `H(n)` is `h_n` (n ≥ 1) and `F(n)` is `f_n` (n ≥ 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormSpec {
    Theta,
    Lambda,
    OneMinus16L,
    F1,
    G1,
    Psi,
    Nu,
    H(u32),
    F(u32),
    Eisenstein1,
    AperyEta,
}

impl FormSpec {
    /// First index of the `Σ aₙ qⁿ` sum the form is usually written with;
    /// used by the CSV export.
    pub fn start_index(&self) -> usize {
        match self {
            FormSpec::Theta | FormSpec::OneMinus16L => 0,
            _ => 1,
        }
    }

    /// `(name, n)` as stored in the series cache.
    pub fn cache_key(&self) -> (&'static str, Option<u32>) {
        match *self {
            FormSpec::Theta => ("theta", None),
            FormSpec::Lambda => ("lambda", None),
            FormSpec::OneMinus16L => ("one16l", None),
            FormSpec::F1 => ("f1", None),
            FormSpec::G1 => ("g1", None),
            FormSpec::Psi => ("psi", None),
            FormSpec::Nu => ("nu", None),
            FormSpec::H(n) => ("h", Some(n)),
            FormSpec::F(n) => ("f", Some(n)),
            FormSpec::Eisenstein1 => ("eis1", None),
            FormSpec::AperyEta => ("apery-eta", None),
        }
    }

    pub fn from_cache_key(name: &str, n: Option<u32>) -> Result<Self> {
        match n {
            Some(n) => format!("{name}:{n}").parse(),
            None => name.parse(),
        }
    }
}

impl FromStr for FormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownForm(s.to_owned());
        if let Some((family, n)) = s.split_once(':') {
            let n: u32 = n.parse().map_err(|_| unknown())?;
            return match family {
                "h" if n >= 1 => Ok(FormSpec::H(n)),
                "f" if n >= 2 => Ok(FormSpec::F(n)),
                _ => Err(unknown()),
            };
        }
        Ok(match s {
            "theta" => FormSpec::Theta,
            "lambda" | "l" => FormSpec::Lambda,
            "one16l" | "one_minus_16l" => FormSpec::OneMinus16L,
            "f1" => FormSpec::F1,
            "g1" => FormSpec::G1,
            "psi" => FormSpec::Psi,
            "nu" => FormSpec::Nu,
            "eis1" | "eisenstein1" => FormSpec::Eisenstein1,
            "apery-eta" | "apery_eta" => FormSpec::AperyEta,
            _ => return Err(unknown()),
        })
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cache_key() {
            (name, Some(n)) => write!(f, "{name}:{n}"),
            (name, None) => f.write_str(name),
        }
    }
}

/// `Σ_{n∈ℤ} q^{n²}`
pub fn jacobi_theta(prec: usize) -> PowerSeries {
    let mut coeffs = vec![BigInt::from(0); prec];
    coeffs[0] = BigInt::from(1);
    for n in 1usize.. {
        if n * n >= prec {
            break;
        }
        coeffs[n * n] = BigInt::from(2);
    }
    PowerSeries::new(coeffs, prec).expect("positive precision")
}

/// `Σ r₂(n) qⁿ`, counting lattice points `(a, b)` with `a² + b² = n` directly.
pub fn theta_by_squares(prec: usize) -> PowerSeries {
    let mut counts = vec![0i64; prec];
    let r = crate::arith::isqrt(prec as u64) as i64 + 1;
    for a in -r..=r {
        for b in -r..=r {
            let n = (a * a + b * b) as usize;
            if n < prec {
                counts[n] += 1;
            }
        }
    }
    PowerSeries::from_i64s(&counts, prec).expect("positive precision")
}

/// Builds forms at one precision, sharing `θ`, `l` and `f₁` between them.
pub struct FormContext {
    prec: usize,
    theta: OnceCell<PowerSeries>,
    lambda: OnceCell<PowerSeries>,
    one_minus_16l: OnceCell<PowerSeries>,
    f1: OnceCell<PowerSeries>,
}

impl FormContext {
    pub fn new(prec: usize) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidPrecision(0));
        }
        Ok(Self {
            prec,
            theta: OnceCell::new(),
            lambda: OnceCell::new(),
            one_minus_16l: OnceCell::new(),
            f1: OnceCell::new(),
        })
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn theta(&self) -> &PowerSeries {
        self.theta.get_or_init(|| {
            let t = jacobi_theta(self.prec);
            &t * &t
        })
    }

    pub fn lambda(&self) -> &PowerSeries {
        self.lambda
            .get_or_init(|| EtaQuotient::lambda().expand(self.prec).expect("l is a valid eta quotient"))
    }

    /// `1 − 16l`, from `l`.
    pub fn one_minus_16l(&self) -> &PowerSeries {
        self.one_minus_16l.get_or_init(|| {
            PowerSeries::linear_combine(
                &BigInt::from(1),
                &PowerSeries::one(self.prec),
                &BigInt::from(-16),
                self.lambda(),
            )
            .expect("exact operands")
        })
    }

    fn f1(&self) -> Result<&PowerSeries> {
        if let Some(f) = self.f1.get() {
            return Ok(f);
        }
        let f = self.lambda().mul(self.one_minus_16l())?.mul(&self.theta().pow(5)?)?;
        Ok(self.f1.get_or_init(|| f))
    }

    /// `θ^a (1−16l)^b l^c`
    fn monomial(&self, a: u32, b: u32, c: u32) -> Result<PowerSeries> {
        self.theta()
            .pow(a)?
            .mul(&self.one_minus_16l().pow(b)?)?
            .mul(&self.lambda().pow(c)?)
    }

    pub fn build(&self, spec: FormSpec) -> Result<PowerSeries> {
        match spec {
            FormSpec::Theta => Ok(self.theta().clone()),
            FormSpec::Lambda => Ok(self.lambda().clone()),
            FormSpec::OneMinus16L => EtaQuotient::one_minus_16l().expand(self.prec),
            FormSpec::F1 => self.f1().cloned(),
            FormSpec::G1 => self.monomial(5, 2, 2),
            FormSpec::Psi => {
                let root = self.one_minus_16l().sqrt_unit()?;
                root.mul(&self.monomial(6, 0, 2)?)
            }
            FormSpec::Nu => self.monomial(12, 1, 4),
            FormSpec::H(n) => {
                if n == 0 {
                    return Err(Error::UnknownForm("h:0".into()));
                }
                self.monomial(6 * n + 1, n.div_ceil(2), 2 * n)
            }
            FormSpec::F(n) => {
                if n < 2 {
                    return Err(Error::UnknownForm(format!("f:{n}")));
                }
                self.monomial(6 * n - 6, (n - 1) / 2, 2 * n - 2)?.mul(self.f1()?)
            }
            FormSpec::Eisenstein1 => self.monomial(4, 1, 1),
            FormSpec::AperyEta => EtaQuotient::new([(8, 6)]).expand(self.prec),
        }
    }
}

/// The named q-expansion to precision `prec`.
pub fn build_form(spec: FormSpec, prec: usize) -> Result<PowerSeries> {
    FormContext::new(prec)?.build(spec)
}
