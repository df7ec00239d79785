//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails (the report
//! is still printed), 2 for usage and parameter errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::Value;

use crate::arith::primes_in;
use crate::cache::{self, CachedSeries};
use crate::congruence::{cornacchia, hecke_check, legendre_minus_one, Terms};
use crate::error::{Error, Result};
use crate::families::{run_family, Family, FamilyOptions};
use crate::forms::{build_form, FormSpec};
use crate::report::VerificationReport;
use crate::sequences::{SequenceSpec, SequenceTable};
use crate::series::PowerSeries;

#[derive(Parser, Debug)]
#[command(name = "modcong", version, about = "Exact q-expansions and congruence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the expansion of a form or the values of a sequence.
    Expand(ExpandArgs),
    /// Run a verification family.
    Verify(VerifyArgs),
    /// Check Hecke multiplicativity of a form's coefficients.
    Hecke(HeckeArgs),
    /// Write an odd prime p = 1 (mod 4) as a sum of two squares.
    Cornacchia { p: u64 },
    /// Manage the series cache.
    Cache(CacheArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "target")]
struct Target {
    /// theta, lambda, one16l, f1, g1, psi, nu, h:<n>, f:<n>, eis1, apery-eta
    #[arg(long)]
    form: Option<String>,
    /// A:<k>, B:<n>, C:<n>, D3, aperyB
    #[arg(long)]
    seq: Option<String>,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long)]
    terms: usize,
    /// Reduce coefficients modulo M.
    #[arg(long = "mod")]
    modulus: Option<BigInt>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Clone, Copy, Debug)]
struct TermsArg(Terms);

impl FromStr for TermsArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(TermsArg(Terms::Auto));
        }
        s.parse::<usize>()
            .map(|n| TermsArg(Terms::Fixed(n)))
            .map_err(|_| format!("expected a term count or `auto`, got `{s}`"))
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    family: String,
    #[arg(long)]
    prime_min: Option<u64>,
    #[arg(long)]
    prime_max: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long, default_value = "auto")]
    terms: TermsArg,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct HeckeArgs {
    /// f1 (weight 5, character (-1/p)) or psi (weight 6, read in q^2).
    #[arg(long, default_value = "f1")]
    form: String,
    #[arg(long, default_value_t = 50)]
    prime_max: u64,
    #[arg(long, default_value_t = 20)]
    range: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Expand a form or sequence and store it.
    Write {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Print a stored entry as JSON.
    Read {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Delete every stored entry.
    Clear {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Parses `args` (program name first), runs the command and writes its
/// output to `out`. Errors go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

enum Expanded {
    Form(FormSpec, PowerSeries),
    Seq(SequenceSpec, SequenceTable),
}

fn expand_target(target: &Target, terms: usize) -> Result<Expanded> {
    if terms == 0 {
        return Err(Error::InvalidPrecision(0));
    }
    match (&target.form, &target.seq) {
        (Some(f), _) => {
            let spec: FormSpec = f.parse()?;
            Ok(Expanded::Form(spec, build_form(spec, terms)?))
        }
        (_, Some(s)) => {
            let spec: SequenceSpec = s.parse()?;
            Ok(Expanded::Seq(spec, spec.table(terms)?))
        }
        _ => Err(Error::BadParameter("one of --form or --seq is required".into())),
    }
}

fn target_key(target: &Target) -> Result<(&'static str, Option<u32>)> {
    match (&target.form, &target.seq) {
        (Some(f), _) => Ok(f.parse::<FormSpec>()?.cache_key()),
        (_, Some(s)) => Ok(s.parse::<SequenceSpec>()?.cache_key()),
        _ => Err(Error::BadParameter("one of --form or --seq is required".into())),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Expand(args) => {
            let expanded = expand_target(&args.target, args.terms)?;
            let (key, start, series) = match &expanded {
                Expanded::Form(spec, s) => (spec.cache_key(), spec.start_index(), s.clone()),
                Expanded::Seq(spec, t) => (spec.cache_key(), 0, t.to_series()?.truncate(args.terms)),
            };
            let series = match &args.modulus {
                Some(m) => series.reduce_mod(m)?,
                None => series,
            };
            match args.format {
                Format::Text => writeln!(out, "{series}")?,
                Format::Csv => {
                    let vals: Vec<String> =
                        series.coeffs().iter().skip(start).map(ToString::to_string).collect();
                    writeln!(out, "{}", vals.join(","))?;
                }
                Format::Json => {
                    let mut v = CachedSeries::new(key.0, key.1, &series).to_json_value();
                    if let Some(m) = series.modulus() {
                        v["modulus"] = Value::String(m.to_string());
                    }
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let family: Family = args.family.parse()?;
            let opts = FamilyOptions {
                prime_min: args.prime_min,
                prime_max: args.prime_max,
                n: args.n,
                m_max: args.m_max,
                r_max: args.r_max,
                terms: args.terms.0,
            };
            let reports = run_family(family, &opts)?;
            emit_reports(&reports, args.format, out)
        }
        Command::Hecke(args) => {
            let spec: FormSpec = args.form.parse()?;
            let need = (args.prime_max * args.range) as usize + 1;
            let (table, weight, step) = match spec {
                FormSpec::F1 => (build_form(spec, need)?, 5, 1),
                FormSpec::Psi => (build_form(spec, 2 * need)?, 6, 2),
                other => return Err(Error::BadParameter(format!("no Hecke data for {other}; use f1 or psi"))),
            };
            let coeffs: Vec<BigInt> = table.coeffs().iter().step_by(step).cloned().collect();
            let table = SequenceTable::new(spec.to_string(), 0, coeffs);
            let mut reports = Vec::new();
            for p in primes_in(2, args.prime_max) {
                let chi = match (spec, p) {
                    (_, 2) => 0,
                    (FormSpec::F1, p) => legendre_minus_one(p)?,
                    _ => 1,
                };
                reports.push(hecke_check(&table, p, weight, chi, args.range)?);
            }
            emit_reports(&reports, args.format, out)
        }
        Command::Cornacchia { p } => {
            let t = cornacchia(p)?;
            writeln!(out, "{p} = {}^2 + {}^2", t.x, t.y)?;
            Ok(true)
        }
        Command::Cache(CacheArgs { action }) => {
            match action {
                CacheAction::Write { target, terms, dir } => {
                    let dir = dir.unwrap_or_else(cache::default_dir);
                    let (key, series) = match expand_target(&target, terms)? {
                        Expanded::Form(spec, s) => (spec.cache_key(), s),
                        Expanded::Seq(spec, t) => (spec.cache_key(), t.to_series()?.truncate(terms)),
                    };
                    let path = cache::write(&dir, &CachedSeries::new(key.0, key.1, &series))?;
                    writeln!(out, "{}", path.display())?;
                }
                CacheAction::Read { target, dir } => {
                    let dir = dir.unwrap_or_else(cache::default_dir);
                    let (name, n) = target_key(&target)?;
                    let entry = cache::read(&dir, name, n)?;
                    writeln!(out, "{}", serde_json::to_string_pretty(&entry.to_json_value())?)?;
                }
                CacheAction::Clear { dir } => {
                    let dir = dir.unwrap_or_else(cache::default_dir);
                    let n = cache::clear(&dir)?;
                    writeln!(out, "removed {n} entries from {}", dir.display())?;
                }
            }
            Ok(true)
        }
    }
}

fn emit_reports(reports: &[VerificationReport], format: Format, out: &mut dyn Write) -> Result<bool> {
    match format {
        Format::Json => {
            let v = if reports.len() == 1 {
                reports[0].to_json_value()
            } else {
                Value::Array(reports.iter().map(VerificationReport::to_json_value).collect())
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Text | Format::Csv => {
            for r in reports {
                write!(out, "{}", r.to_text())?;
            }
        }
    }
    Ok(reports.iter().all(VerificationReport::passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("modcong").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn expand_csv() {
        let (code, out) = run_str(&["expand", "--form", "f1", "--terms", "10", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1,-4,0,16,-14,0,0,-64,81");
    }

    #[test]
    fn expand_modular_text() {
        let (code, out) = run_str(&["expand", "--form", "f1", "--terms", "6", "--mod", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "q + 2*q^2 + q^4 + q^5 + O(q^6) (mod 3)");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["expand", "--form", "kappa", "--terms", "5"]).0, 2);
        assert_eq!(run_str(&["expand", "--terms", "5"]).0, 2);
        assert_eq!(run_str(&["verify", "theorem9"]).0, 2);
        assert_eq!(run_str(&["cornacchia", "7"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn cornacchia_line() {
        assert_eq!(run_str(&["cornacchia", "13"]), (0, "13 = 2^2 + 3^2\n".into()));
    }

    #[test]
    fn hecke_runs() {
        let (code, out) = run_str(&["hecke", "--prime-max", "7", "--range", "5"]);
        assert_eq!(code, 0, "{out}");
        let (code, _) = run_str(&["hecke", "--form", "psi", "--prime-max", "7", "--range", "5"]);
        assert_eq!(code, 0);
    }
}
