//! Named verification families with their default bounds.

use std::fmt;
use std::str::FromStr;

use crate::congruence::{
    verify_cor1, verify_cor2, verify_example, verify_intro_apery, verify_theorem1, verify_theorem2,
    verify_transfer_bridges, Bounds, Cor1Relation, Terms, Theorem2Part,
};
use crate::error::{Error, Result};
use crate::forms::{verify_identity, Identity};
use crate::report::VerificationReport;

pub const DEFAULT_IDENTITY_TERMS: usize = 200;
pub const DEFAULT_PRIME_MAX: u64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Identity(Identity),
    Theorem1,
    Theorem2(Theorem2Part),
    Cor1(Cor1Relation),
    Cor2,
    Example,
    IntroApery,
    Transfer,
    All,
}

impl Family {
    /// Every concrete family, in the order `all` runs them.
    pub fn concrete() -> Vec<Family> {
        let mut out: Vec<Family> = Identity::ALL.into_iter().map(Family::Identity).collect();
        out.extend([
            Family::Theorem1,
            Family::Theorem2(Theorem2Part::A),
            Family::Theorem2(Theorem2Part::B),
            Family::Theorem2(Theorem2Part::C),
            Family::Cor1(Cor1Relation::Eq3),
            Family::Cor1(Cor1Relation::Eq4),
            Family::Cor1(Cor1Relation::Eq1),
            Family::Cor1(Cor1Relation::Eq2),
            Family::Cor2,
            Family::Example,
            Family::IntroApery,
            Family::Transfer,
        ]);
        out
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = s.strip_prefix("identity.") {
            return id.parse().map(Family::Identity);
        }
        Ok(match s {
            "theorem1" => Family::Theorem1,
            "theorem2a" => Family::Theorem2(Theorem2Part::A),
            "theorem2b" => Family::Theorem2(Theorem2Part::B),
            "theorem2c" => Family::Theorem2(Theorem2Part::C),
            "cor1.eq1" => Family::Cor1(Cor1Relation::Eq1),
            "cor1.eq2" => Family::Cor1(Cor1Relation::Eq2),
            "cor1.eq3" => Family::Cor1(Cor1Relation::Eq3),
            "cor1.eq4" => Family::Cor1(Cor1Relation::Eq4),
            "cor2" => Family::Cor2,
            "example" => Family::Example,
            "intro-apery" => Family::IntroApery,
            "transfer" => Family::Transfer,
            "all" => Family::All,
            _ => return Err(Error::UnknownFamily(s.to_owned())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Identity(id) => write!(f, "identity.{id}"),
            Family::Theorem1 => f.write_str("theorem1"),
            Family::Theorem2(Theorem2Part::A) => f.write_str("theorem2a"),
            Family::Theorem2(Theorem2Part::B) => f.write_str("theorem2b"),
            Family::Theorem2(Theorem2Part::C) => f.write_str("theorem2c"),
            Family::Cor1(rel) => write!(f, "cor1.{}", rel.name()),
            Family::Cor2 => f.write_str("cor2"),
            Family::Example => f.write_str("example"),
            Family::IntroApery => f.write_str("intro-apery"),
            Family::Transfer => f.write_str("transfer"),
            Family::All => f.write_str("all"),
        }
    }
}

/// Overrides for a family's defaults; `None` keeps the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyOptions {
    pub prime_min: Option<u64>,
    pub prime_max: Option<u64>,
    pub n: Option<u32>,
    pub m_max: Option<u64>,
    pub r_max: Option<u32>,
    pub terms: Terms,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        Self { prime_min: None, prime_max: None, n: None, m_max: None, r_max: None, terms: Terms::Auto }
    }
}

impl FamilyOptions {
    fn bounds(&self, min: u64, max: u64) -> Bounds {
        Bounds::new(self.prime_min.unwrap_or(min), self.prime_max.unwrap_or(max))
    }

    fn ns(&self, default: std::ops::RangeInclusive<u32>) -> Vec<u32> {
        self.n.map_or_else(|| default.collect(), |n| vec![n])
    }
}

/// Runs `family`, or every concrete family for `All`. Families that loop
/// over `n` without an explicit `--n` yield one report per `n`.
pub fn run_family(family: Family, opts: &FamilyOptions) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    match family {
        Family::All => {
            for f in Family::concrete() {
                out.extend(run_family(f, opts)?);
            }
        }
        Family::Identity(id) => {
            out.push(verify_identity(id, opts.terms.resolve(DEFAULT_IDENTITY_TERMS))?);
        }
        Family::Theorem1 => {
            for n in opts.ns(1..=4) {
                out.push(verify_theorem1(n, opts.bounds(2, DEFAULT_PRIME_MAX), opts.terms)?);
            }
        }
        Family::Theorem2(Theorem2Part::C) => {
            for n in opts.ns(2..=4) {
                out.push(verify_theorem2(Theorem2Part::C, opts.bounds(2, DEFAULT_PRIME_MAX), Some(n), opts.terms)?);
            }
        }
        Family::Theorem2(part) => {
            out.push(verify_theorem2(part, opts.bounds(2, DEFAULT_PRIME_MAX), opts.n, opts.terms)?);
        }
        Family::Cor1(rel @ (Cor1Relation::Eq3 | Cor1Relation::Eq4)) => {
            out.push(verify_cor1(
                rel,
                opts.bounds(5, 50),
                opts.m_max.unwrap_or(5),
                opts.r_max.unwrap_or(2),
                opts.terms,
            )?);
        }
        Family::Cor1(rel) => {
            out.push(verify_cor1(rel, opts.bounds(5, DEFAULT_PRIME_MAX), 1, 1, opts.terms)?);
        }
        Family::Cor2 => {
            for n in opts.ns(1..=4) {
                out.push(verify_cor2(n, opts.bounds(2, DEFAULT_PRIME_MAX), opts.terms)?);
            }
        }
        Family::Example => out.push(verify_example(opts.bounds(2, DEFAULT_PRIME_MAX), opts.terms)?),
        Family::IntroApery => out.push(verify_intro_apery(
            opts.bounds(3, 100),
            opts.m_max.unwrap_or(3),
            opts.r_max.unwrap_or(2),
        )?),
        Family::Transfer => out.push(verify_transfer_bridges(
            opts.terms.resolve(DEFAULT_IDENTITY_TERMS),
            opts.prime_max.unwrap_or(100),
        )?),
    }
    Ok(out)
}
