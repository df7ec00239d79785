//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any gated
//! criterion fails.

use std::time::{Duration, Instant};

use modcong::congruence::{
    cm_b1, transfer_scaled, verify_cor1, verify_cor2, verify_example, verify_intro_apery, verify_theorem1,
    verify_theorem2, verify_transfer_bridges, Bounds, Cor1Relation, Terms, Theorem2Part,
};
use modcong::forms::{build_form, verify_identity, Identity};
use modcong::sequences::{a_k_table, d3_table, Sequence};
use modcong::{FormSpec, PowerSeries, VerificationReport};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn from_reports(reports: &[VerificationReport]) -> Self {
        let (pass, fail) = reports.iter().fold((0, 0), |(p, f), r| {
            let s = r.summary();
            (p + s.pass, f + s.fail)
        });
        let mut detail = format!("{pass} checks pass, {fail} fail");
        if let Some(first) = reports.iter().flat_map(|r| r.failures()).next() {
            detail.push_str(&format!("; first failure: {}", first.desc));
        }
        Outcome { ok: fail == 0 && pass > 0, detail }
    }

    fn and(self, ok: bool, what: &str) -> Self {
        let detail = if ok { self.detail } else { format!("{}; spot check failed: {what}", self.detail) };
        Outcome { ok: self.ok && ok, detail }
    }
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome, String>) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(o) => (o.ok, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = ok && in_time;
    let budget = limit.map_or_else(String::new, |l| format!(" / limit {:.0?}", l));
    println!(
        "{} criterion {id:>2}: {title} ({:.2?}{budget}) {detail}{}",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        if in_time { "" } else { " [over time limit]" }
    );
    pass
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ints(s: &PowerSeries, range: std::ops::Range<usize>) -> Vec<i64> {
    s.coeffs()[range].iter().map(|c| i64::try_from(c).unwrap()).collect()
}

fn criterion_1() -> Result<Outcome, String> {
    let call = |args: &[&str]| -> Result<String, String> {
        let mut out = Vec::new();
        let code = modcong::cli::run(std::iter::once("modcong").chain(args.iter().copied()), &mut out);
        if code != 0 {
            return Err(format!("{args:?} exited {code}"));
        }
        Ok(String::from_utf8(out).map_err(e)?.trim().to_owned())
    };
    let lambda = call(&["expand", "--form", "lambda", "--terms", "5"])?;
    let f1 = call(&["expand", "--form", "f1", "--terms", "10", "--format", "csv"])?;
    let psi = call(&["expand", "--form", "psi", "--terms", "20", "--format", "csv"])?;
    let mut psi_expect = vec!["0"; 19];
    for (i, c) in [(2, "1"), (6, "-12"), (10, "54"), (14, "-88"), (18, "-99")] {
        psi_expect[i - 1] = c;
    }
    let checks = [
        (lambda.starts_with("q - 8*q^2 + 44*q^3 - 192*q^4"), "lambda"),
        (f1 == "1,-4,0,16,-14,0,0,-64,81", "f1"),
        (psi == psi_expect.join(","), "psi"),
    ];
    let bad: Vec<&str> = checks.iter().filter(|c| !c.0).map(|c| c.1).collect();
    Ok(Outcome { ok: bad.is_empty(), detail: format!("golden prefixes; mismatched: {bad:?}") })
}

fn criterion_2() -> Result<Outcome, String> {
    let reports: Vec<_> = Identity::ALL.iter().map(|&id| verify_identity(id, 200)).collect::<Result<_, _>>().map_err(e)?;
    Ok(Outcome::from_reports(&reports))
}

fn criterion_3() -> Result<Outcome, String> {
    let reports: Vec<_> =
        (1..=4).map(|n| verify_theorem1(n, Bounds::upto(500), Terms::Auto)).collect::<Result<_, _>>().map_err(e)?;
    Ok(Outcome::from_reports(&reports))
}

fn criterion_4() -> Result<Outcome, String> {
    let r = verify_theorem2(Theorem2Part::A, Bounds::upto(1000), None, Terms::Auto).map_err(e)?;
    let f1 = build_form(FormSpec::F1, 14).map_err(e)?;
    let spots = f1.coeffs()[5] == BigInt::from(-14)
        && f1.coeffs()[13] == BigInt::from(-238)
        && cm_b1(5).map_err(e)? == BigInt::from(-14)
        && cm_b1(13).map_err(e)? == BigInt::from(-238);
    Ok(Outcome::from_reports(&[r]).and(spots, "b1(5) = -14, b1(13) = -238"))
}

fn criterion_5() -> Result<Outcome, String> {
    let r = verify_theorem2(Theorem2Part::B, Bounds::upto(300), None, Terms::Auto).map_err(e)?;
    let spot = r.instances.iter().find(|i| i.desc.starts_with("n=4:")).map(|i| i.witness.clone());
    let ok = spot == Some(vec![BigInt::from(4), BigInt::from(-42752)]);
    Ok(Outcome::from_reports(&[r]).and(ok, "n = 4: b1 - 108 c1 = -42752"))
}

fn criterion_6() -> Result<Outcome, String> {
    let reports: Vec<_> = (2..=4)
        .map(|n| verify_theorem2(Theorem2Part::C, Bounds::upto(300), Some(n), Terms::Auto))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    Ok(Outcome::from_reports(&reports))
}

fn criterion_7() -> Result<Outcome, String> {
    let mut reports = Vec::new();
    for rel in [Cor1Relation::Eq3, Cor1Relation::Eq4] {
        reports.push(verify_cor1(rel, Bounds::new(5, 50), 5, 2, Terms::Auto).map_err(e)?);
    }
    for rel in [Cor1Relation::Eq1, Cor1Relation::Eq2] {
        reports.push(verify_cor1(rel, Bounds::new(5, 300), 1, 1, Terms::Auto).map_err(e)?);
    }
    let a3 = a_k_table(3, 5).map_err(e)?.value_at(4).map_err(e)?;
    let d3 = d3_table(5).map_err(e)?.value_at(4).map_err(e)?;
    let five = BigInt::from(5);
    let spots = a3 == BigInt::from(29916)
        && a3.clone() % &five == BigInt::from(1)
        && d3 == BigInt::from(-368)
        && ((d3 % &five) + &five) % &five == BigInt::from(2);
    Ok(Outcome::from_reports(&reports).and(spots, "A3(4) = 29916 = 1, D3(4) = -368 = 2 (mod 5)"))
}

fn criterion_8() -> Result<Outcome, String> {
    let reports: Vec<_> =
        (1..=4).map(|n| verify_cor2(n, Bounds::upto(300), Terms::Auto)).collect::<Result<_, _>>().map_err(e)?;
    Ok(Outcome::from_reports(&reports))
}

fn criterion_9() -> Result<Outcome, String> {
    let r = verify_example(Bounds::upto(1000), Terms::Auto).map_err(e)?;
    // the sum 4900 + 1600 + 1296 + 1600 + 4900
    let a2 = a_k_table(2, 5).map_err(e)?.value_at(4).map_err(e)?;
    let ok = a2 == BigInt::from(14296) && a2 % 5 == BigInt::from(1);
    Ok(Outcome::from_reports(&[r]).and(ok, "A2(4) = 14296 = 1 (mod 5)"))
}

fn criterion_10() -> Result<Outcome, String> {
    let r = verify_intro_apery(Bounds::new(3, 100), 3, 2).map_err(e)?;
    Ok(Outcome::from_reports(&[r]))
}

fn series(prec: usize, head: Option<i64>) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(-200i64..200, prec).prop_map(move |mut c| {
        if let Some(h) = head {
            c[0] = h;
        }
        if head == Some(0) && prec > 1 {
            c[1] = 1;
        }
        PowerSeries::from_i64s(&c, prec).unwrap()
    })
}

fn criterion_11() -> Result<Outcome, String> {
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    let strategy = (2usize..=64).prop_flat_map(|n| (series(n, None), series(n, None), series(n, Some(1)), series(n, Some(0))));
    runner
        .run(&strategy, |(f, g, unit, t)| {
            let fg = f.mul(&g).unwrap();
            prop_assert_eq!(&fg, &g.mul(&f).unwrap());
            prop_assert_eq!(fg.mul(&unit).unwrap(), f.mul(&g.mul(&unit).unwrap()).unwrap());
            prop_assert_eq!(fg.d_operator(), &(&f.d_operator() * &g) + &(&f * &g.d_operator()));
            let chain = f.derivative().unwrap().compose(&t).unwrap().mul(&t.d_operator()).unwrap();
            prop_assert!(f.compose(&t).unwrap().d_operator().first_mismatch(&chain).is_none());
            prop_assert_eq!(unit.mul(&unit.inverse().unwrap()).unwrap(), PowerSeries::one(unit.prec()));
            let sq = unit.mul(&unit).unwrap();
            prop_assert_eq!(sq.sqrt_unit().unwrap(), unit.clone());
            let q = PowerSeries::monomial(1, t.prec());
            let g_inv = t.revert().unwrap();
            prop_assert_eq!(g_inv.compose(&t).unwrap(), q.clone());
            prop_assert_eq!(t.compose(&g_inv).unwrap(), q);
            Ok(())
        })
        .map_err(e)?;

    let bridges = verify_transfer_bridges(200, 100).map_err(e)?;
    let sixteen = BigInt::from(16);
    let a3 = a_k_table(3, 200).map_err(e)?.shifted(1);
    let l = build_form(FormSpec::Lambda, 201).map_err(e)?;
    let c = transfer_scaled(&a3, &l.scale(&sixteen), &sixteen, 200).map_err(e)?;
    let ok = c.value_at(2).map_err(e)? == BigInt::from(-64);
    let mut out = Outcome::from_reports(&[bridges]).and(ok, "c2 = -64 along 16l");
    out.detail = format!("200 random property cases pass; bridges: {}", out.detail);
    Ok(out)
}

fn criterion_12() -> Result<Outcome, String> {
    let start = Instant::now();
    let f1 = build_form(FormSpec::F1, 5000).map_err(e)?;
    let took = start.elapsed();
    let ok = ints(&f1, 0..10) == [0, 1, -4, 0, 16, -14, 0, 0, -64, 81] && took < Duration::from_secs(10);
    Ok(Outcome { ok, detail: format!("f1 to 5000 terms in {took:.2?} (measurement, not gated)") })
}

fn main() {
    let secs = Duration::from_secs;
    let gated = [
        run(1, "golden expansions", Some(secs(1)), criterion_1),
        run(2, "identity suite at 200 terms", Some(secs(10)), criterion_2),
        run(3, "a_n(p) = 0, n <= 4, p <= 500", Some(secs(60)), criterion_3),
        run(4, "b1(p) = CM formula, p <= 1000", Some(secs(60)), criterion_4),
        run(5, "n^3 | b1(n) - 108 c1(n), n <= 300", Some(secs(10)), criterion_5),
        run(6, "b_n(p) = 0, n in 2..4, p <= 300", None, criterion_6),
        run(7, "A3/D3 three-term and prime congruences", Some(secs(300)), criterion_7),
        run(8, "B_n(p-1), C_n(p-1) = 0 mod p, p <= 300", None, criterion_8),
        run(9, "A2(p-1) = C(p-1,(p-1)/2)^4 = 1 mod p, p <= 1000", None, criterion_9),
        run(10, "Apery three-term congruence, p <= 100", None, criterion_10),
        run(11, "property suites and transfer bridges", None, criterion_11),
    ];
    run(12, "performance: f1 to 5000 terms < 10 s", None, criterion_12);
    let failed = gated.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} of {} gated criteria pass", gated.len() - failed, gated.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
