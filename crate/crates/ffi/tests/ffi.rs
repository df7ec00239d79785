use std::ffi::{c_char, CStr, CString};
use std::ptr;

use modcong_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { mc_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mc_last_error()) }.to_str().unwrap().to_owned()
}

fn coeff(s: *const McSeries, n: usize) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_series_coeff(s, n, &mut out) }, McStatus::Ok);
    take_string(out)
}

#[test]
fn expand_and_read_coefficients() {
    let name = CString::new("f1").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mc_form_expand(name.as_ptr(), 14, &mut s) }, McStatus::Ok);
    assert_eq!(unsafe { mc_series_prec(s) }, 14);
    assert_eq!(coeff(s, 5), "-14");
    assert_eq!(coeff(s, 13), "-238");

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_series_coeff(s, 14, &mut out) }, McStatus::PrecisionExceeded);
    assert!(last_error().contains("14"));

    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { mc_series_mul(s, s, &mut sq) }, McStatus::Ok);
    assert_eq!(coeff(sq, 2), "1");
    let m = CString::new("3").unwrap();
    let mut red = ptr::null_mut();
    assert_eq!(unsafe { mc_series_reduce_mod(s, m.as_ptr(), &mut red) }, McStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { mc_series_to_json(red, &mut json) }, McStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["modulus"], "3");
    assert_eq!(v["coeffs"][2], "2");
    unsafe {
        mc_series_free(s);
        mc_series_free(sq);
        mc_series_free(red);
        mc_series_free(ptr::null_mut());
    }
}

#[test]
fn eta_quotient_lambda() {
    let scales = [4u32, 1, 2];
    let exps = [16i64, 8, -24];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mc_eta_quotient_expand(scales.as_ptr(), exps.as_ptr(), 3, 5, &mut s) }, McStatus::Ok);
    assert_eq!((1..5).map(|i| coeff(s, i)).collect::<Vec<_>>(), ["1", "-8", "44", "-192"]);
    unsafe { mc_series_free(s) };

    let bad = [1u32];
    let e = [1i64];
    assert_eq!(unsafe { mc_eta_quotient_expand(bad.as_ptr(), e.as_ptr(), 1, 5, &mut s) }, McStatus::Arithmetic);
}

#[test]
fn errors_and_null_handling() {
    let bad = CString::new("kappa").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mc_form_expand(bad.as_ptr(), 5, &mut s) }, McStatus::UnknownName);
    assert!(last_error().contains("kappa"));
    assert_eq!(unsafe { mc_form_expand(ptr::null(), 5, &mut s) }, McStatus::NullPointer);
    assert_eq!(unsafe { mc_series_prec(ptr::null()) }, 0);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_series_coeff(ptr::null(), 0, &mut out) }, McStatus::NullPointer);
}

#[test]
fn number_theory_calls() {
    let (mut x, mut y) = (0u64, 0u64);
    assert_eq!(unsafe { mc_cornacchia(29, &mut x, &mut y) }, McStatus::Ok);
    assert_eq!((x, y), (2, 5));
    assert_eq!(unsafe { mc_cornacchia(7, &mut x, &mut y) }, McStatus::Arithmetic);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_cm_b1(13, &mut out) }, McStatus::Ok);
    assert_eq!(take_string(out), "-238");
    assert_eq!(unsafe { mc_cm_b1(2, &mut out) }, McStatus::InvalidArgument);

    let name = CString::new("A:2").unwrap();
    assert_eq!(unsafe { mc_sequence_value(name.as_ptr(), 4, &mut out) }, McStatus::Ok);
    assert_eq!(take_string(out), "14296");
    let name = CString::new("aperyB").unwrap();
    assert_eq!(unsafe { mc_sequence_value(name.as_ptr(), 3, &mut out) }, McStatus::Ok);
    assert_eq!(take_string(out), "147");
}

#[test]
fn verify_family() {
    let fam = CString::new("identity.lemma5").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_verify(fam.as_ptr(), 0, 60, &mut out) }, McStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["family"], "identity.lemma5");
    assert_eq!(v["params"]["terms"], 60);

    let fam = CString::new("theorem1").unwrap();
    assert_eq!(unsafe { mc_verify(fam.as_ptr(), 30, 0, ptr::null_mut()) }, McStatus::Ok);
    let fam = CString::new("theorem7").unwrap();
    assert_eq!(unsafe { mc_verify(fam.as_ptr(), 30, 0, ptr::null_mut()) }, McStatus::UnknownName);
}

#[test]
fn generated_header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/modcong.h")).unwrap();
    for symbol in [
        "typedef struct McSeries McSeries;",
        "MC_STATUS_OK = 0",
        "MC_STATUS_CHECK_FAILED = 1",
        "mc_form_expand(",
        "mc_eta_quotient_expand(",
        "mc_series_coeff(",
        "mc_series_mul(",
        "mc_series_reduce_mod(",
        "mc_series_to_json(",
        "mc_series_free(",
        "mc_verify(",
        "mc_cornacchia(",
        "mc_cm_b1(",
        "mc_sequence_value(",
        "mc_last_error(",
        "mc_string_free(",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
