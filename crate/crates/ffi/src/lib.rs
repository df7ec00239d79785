//! C ABI over `modcong`.
//!
//! Series are opaque `McSeries` handles freed with `mc_series_free`. Strings
//! returned through out-parameters are owned by the caller and freed with
//! `mc_string_free`. Every function returns an `McStatus`; on failure the
//! message is available from `mc_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use modcong::congruence::{cm_b1, cornacchia, Terms};
use modcong::families::{run_family, Family, FamilyOptions};
use modcong::forms::build_form;
use modcong::sequences::{Sequence, SequenceSpec};
use modcong::{Error, EtaQuotient, FormSpec, PowerSeries, VerificationReport};
use num_bigint::BigInt;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    /// A verification ran and at least one check failed.
    CheckFailed = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    UnknownName = 4,
    PrecisionExceeded = 5,
    Arithmetic = 6,
    Panic = 7,
}

/// Opaque truncated power series.
pub struct McSeries(PowerSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> McStatus {
    match err {
        Error::UnknownForm(_) | Error::UnknownSequence(_) | Error::UnknownFamily(_) => McStatus::UnknownName,
        Error::PrecisionExceeded { .. } | Error::InvalidPrecision(_) => McStatus::PrecisionExceeded,
        Error::NotInvertible(_)
        | Error::BadLeadingTerm(_)
        | Error::NotIntegralSqrt(_)
        | Error::CompositionDiverges
        | Error::NotRevertible(_)
        | Error::NotExpandable(_)
        | Error::InexactDivision(_)
        | Error::ModulusMismatch(..)
        | Error::NoRepresentation(_) => McStatus::Arithmetic,
        _ => McStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status plus `mc_last_error`.
fn guard(f: impl FnOnce() -> Result<McStatus, (McStatus, String)>) -> McStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            McStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (McStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (McStatus, String) {
    (McStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (McStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (McStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (McStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    let c = CString::new(s).map_err(|_| (McStatus::InvalidArgument, "interior NUL".to_owned()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_series(out: *mut *mut McSeries, s: PowerSeries) -> Result<(), (McStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    *out = Box::into_raw(Box::new(McSeries(s)));
    Ok(())
}

unsafe fn series_ref<'a>(s: *const McSeries, what: &str) -> Result<&'a PowerSeries, (McStatus, String)> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null_err(what))
}

/// Expands a named form (`"f1"`, `"h:3"`, …) to `terms` coefficients.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_form_expand(name: *const c_char, terms: usize, out: *mut *mut McSeries) -> McStatus {
    guard(|| {
        let spec: FormSpec = read_str(name, "name")?.parse().map_err(lib_err)?;
        write_series(out, build_form(spec, terms).map_err(lib_err)?)?;
        Ok(McStatus::Ok)
    })
}

/// Expands `Π η(s_i τ/2)^{e_i}` to `terms` coefficients.
///
/// # Safety
/// `scales` and `exponents` must each point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn mc_eta_quotient_expand(
    scales: *const u32,
    exponents: *const i64,
    len: usize,
    terms: usize,
    out: *mut *mut McSeries,
) -> McStatus {
    guard(|| {
        if len > 0 && (scales.is_null() || exponents.is_null()) {
            return Err(null_err("factors"));
        }
        let factors: Vec<(u32, i64)> =
            (0..len).map(|i| (*scales.add(i), *exponents.add(i))).collect();
        let s = EtaQuotient::new(factors).expand(terms).map_err(lib_err)?;
        write_series(out, s)?;
        Ok(McStatus::Ok)
    })
}

/// Number of known coefficients; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_series_prec(s: *const McSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.prec())
}

/// Coefficient of `q^n` as a decimal string.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_series_coeff(s: *const McSeries, n: usize, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let c = series_ref(s, "series")?.coeff(n).map_err(lib_err)?;
        write_string(out, c.to_string())?;
        Ok(McStatus::Ok)
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_series_mul(a: *const McSeries, b: *const McSeries, out: *mut *mut McSeries) -> McStatus {
    guard(|| {
        let p = series_ref(a, "a")?.mul(series_ref(b, "b")?).map_err(lib_err)?;
        write_series(out, p)?;
        Ok(McStatus::Ok)
    })
}

/// Reduces coefficients modulo the decimal integer `modulus`.
///
/// # Safety
/// `s` must be a live handle, `modulus` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mc_series_reduce_mod(
    s: *const McSeries,
    modulus: *const c_char,
    out: *mut *mut McSeries,
) -> McStatus {
    guard(|| {
        let m: BigInt = read_str(modulus, "modulus")?
            .parse()
            .map_err(|_| (McStatus::InvalidArgument, "modulus is not an integer".to_owned()))?;
        let r = series_ref(s, "series")?.reduce_mod(&m).map_err(lib_err)?;
        write_series(out, r)?;
        Ok(McStatus::Ok)
    })
}

/// `{"prec": N, "modulus": "M"|null, "coeffs": ["…", …]}`
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_series_to_json(s: *const McSeries, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        let coeffs: Vec<String> = s.coeffs().iter().map(|c| format!("\"{c}\"")).collect();
        let modulus = s.modulus().map_or_else(|| "null".to_owned(), |m| format!("\"{m}\""));
        let json = format!("{{\"prec\":{},\"modulus\":{modulus},\"coeffs\":[{}]}}", s.prec(), coeffs.join(","));
        write_string(out, json)?;
        Ok(McStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_series_free(s: *mut McSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs a verification family and writes its JSON report. `prime_max = 0`
/// and `terms = 0` keep the family defaults. Returns `CheckFailed` when the
/// report contains a failing check.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn mc_verify(
    family: *const c_char,
    prime_max: u64,
    terms: usize,
    out_json: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        let family: Family = read_str(family, "family")?.parse().map_err(lib_err)?;
        let opts = FamilyOptions {
            prime_max: (prime_max > 0).then_some(prime_max),
            terms: if terms == 0 { Terms::Auto } else { Terms::Fixed(terms) },
            ..Default::default()
        };
        let reports = run_family(family, &opts).map_err(lib_err)?;
        if !out_json.is_null() {
            let v: Vec<_> = reports.iter().map(VerificationReport::to_json_value).collect();
            let text = if v.len() == 1 { v[0].to_string() } else { serde_json_array(&v) };
            write_string(out_json, text)?;
        }
        Ok(if reports.iter().all(VerificationReport::passed) { McStatus::Ok } else { McStatus::CheckFailed })
    })
}

fn serde_json_array<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `p = x² + y²` with `0 < x <= y`.
///
/// # Safety
/// `x` and `y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_cornacchia(p: u64, x: *mut u64, y: *mut u64) -> McStatus {
    guard(|| {
        if x.is_null() || y.is_null() {
            return Err(null_err("x/y"));
        }
        let t = cornacchia(p).map_err(lib_err)?;
        *x = t.x;
        *y = t.y;
        Ok(McStatus::Ok)
    })
}

/// Prime coefficient of `f₁` from the two-squares formula, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_cm_b1(p: u64, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        write_string(out, cm_b1(p).map_err(lib_err)?.to_string())?;
        Ok(McStatus::Ok)
    })
}

/// Value of a named sequence (`"A:3"`, `"D3"`, `"aperyB"`, …) at `index`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_sequence_value(name: *const c_char, index: usize, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let spec: SequenceSpec = read_str(name, "name")?.parse().map_err(lib_err)?;
        let table = spec.table(index + 1).map_err(lib_err)?;
        write_string(out, table.value_at(index).map_err(lib_err)?.to_string())?;
        Ok(McStatus::Ok)
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
