use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use qasym_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qasym_string_free(s) };
    out
}

fn last_error() -> String {
    let p = qasym_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn expand_partitions() {
    let text = CString::new("prod(k>=1, 1/(1-q^k))").unwrap();
    let mut spec = ptr::null_mut();
    assert_eq!(unsafe { qasym_spec_parse(text.as_ptr(), &mut spec) }, QasymStatus::Ok);
    assert!(qasym_last_error().is_null());
    let mut series = ptr::null_mut();
    assert_eq!(unsafe { qasym_expand(spec, 100, &mut series) }, QasymStatus::Ok);
    assert_eq!(unsafe { qasym_series_len(series) }, 101);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qasym_series_coeff(series, 100, &mut s) }, QasymStatus::Ok);
    assert_eq!(take(s), "190569292");
    let mut ln = 0.0;
    assert_eq!(unsafe { qasym_series_log_abs(series, 100, &mut ln) }, QasymStatus::Ok);
    assert!((ln - 190569292f64.ln()).abs() < 1e-12);
    assert_eq!(unsafe { qasym_series_coeff(series, 101, &mut s) }, QasymStatus::OutOfRange);
    unsafe {
        qasym_series_free(series);
        qasym_spec_free(spec);
    }
}

#[test]
fn parse_error_sets_message() {
    let text = CString::new("prod(k>=1, 1/(1-q^k)").unwrap();
    let mut spec = ptr::null_mut();
    assert_eq!(unsafe { qasym_spec_parse(text.as_ptr(), &mut spec) }, QasymStatus::Parse);
    assert!(spec.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { qasym_spec_parse(ptr::null(), &mut spec) }, QasymStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { qasym_spec_parse(bad.as_ptr().cast(), &mut spec) }, QasymStatus::InvalidUtf8);
}

#[test]
fn last_error_is_thread_local() {
    let mut spec = ptr::null_mut();
    assert_eq!(unsafe { qasym_spec_parse(ptr::null(), &mut spec) }, QasymStatus::NullPointer);
    std::thread::spawn(|| assert!(qasym_last_error().is_null())).join().unwrap();
    assert!(!last_error().is_empty());
}

fn catalog(id: &str, params: &[i64]) -> *mut QasymForm {
    let id = CString::new(id).unwrap();
    let mut f = ptr::null_mut();
    let st = unsafe { qasym_catalog_form(id.as_ptr(), params.as_ptr(), params.len(), &mut f) };
    assert_eq!(st, QasymStatus::Ok, "{}", last_error());
    f
}

#[test]
fn form_algebra_round_trip() {
    let hr = catalog("partminus", &[1, 1]);
    let dp = catalog("partplus", &[1, 1]);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { qasym_convolve(hr, dp, &mut c) }, QasymStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { qasym_deconvolve(c, hr, &mut back) }, QasymStatus::Ok);
    let (mut a, mut b, mut sa, mut sb) = (0.0, 0.0, 0i8, 0i8);
    unsafe {
        assert_eq!(qasym_form_evaluate_log(back, 5000, &mut a, &mut sa), QasymStatus::Ok);
        assert_eq!(qasym_form_evaluate_log(dp, 5000, &mut b, &mut sb), QasymStatus::Ok);
    }
    assert!((a - b).abs() < 1e-9);
    assert_eq!((sa, sb), (1, 1));

    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { qasym_power(hr, 2, 1, &mut sq) }, QasymStatus::Ok);
    assert_eq!(unsafe { qasym_power(hr, 1, 0, &mut sq) }, QasymStatus::Form);

    let mut js = ptr::null_mut();
    assert_eq!(unsafe { qasym_form_to_json(c, &mut js) }, QasymStatus::Ok);
    let text = CString::new(take(js)).unwrap();
    let mut parsed = ptr::null_mut();
    assert_eq!(unsafe { qasym_form_from_json(text.as_ptr(), &mut parsed) }, QasymStatus::Ok);
    let bad = CString::new("{\"v\": 1}").unwrap();
    let mut none = ptr::null_mut();
    assert_eq!(unsafe { qasym_form_from_json(bad.as_ptr(), &mut none) }, QasymStatus::Json);
    unsafe {
        for f in [hr, dp, c, back, sq, parsed] {
            qasym_form_free(f);
        }
    }
}

#[test]
fn catalog_errors() {
    let id = CString::new("nosuch").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qasym_catalog_form(id.as_ptr(), ptr::null(), 0, &mut f) }, QasymStatus::Catalog);
    let id = CString::new("powerminus").unwrap();
    let p = [0i64, 1, 1];
    assert_eq!(unsafe { qasym_catalog_form(id.as_ptr(), p.as_ptr(), 3, &mut f) }, QasymStatus::Catalog);
}

#[test]
fn verify_report_and_sign_mismatch() {
    let text = CString::new("prod(k>=1, 1/(1-q^k))").unwrap();
    let mut spec = ptr::null_mut();
    assert_eq!(unsafe { qasym_spec_parse(text.as_ptr(), &mut spec) }, QasymStatus::Ok);
    let hr = catalog("partminus", &[1, 1]);
    let pts = [100u64, 500, 1000];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qasym_verify(spec, hr, pts.as_ptr(), 3, &mut out) }, QasymStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["verdict"], "converging");
    let alt = catalog("powerplusdenom", &[1]);
    let odd = [101u64, 501, 1001];
    assert_eq!(unsafe { qasym_verify(spec, alt, odd.as_ptr(), 3, &mut out) }, QasymStatus::SignMismatch);
    unsafe {
        qasym_form_free(hr);
        qasym_form_free(alt);
        qasym_spec_free(spec);
    }
}

#[test]
fn null_handles_rejected() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qasym_series_coeff(ptr::null(), 0, &mut s) }, QasymStatus::NullPointer);
    assert_eq!(unsafe { qasym_series_len(ptr::null()) }, 0);
    unsafe {
        qasym_form_free(ptr::null_mut());
        qasym_spec_free(ptr::null_mut());
        qasym_series_free(ptr::null_mut());
        qasym_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qasym.h");
    let src = format!("#include \"{header}\"\nint main(void) {{ return qasym_last_error() != 0; }}\n");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.c");
    std::fs::write(&file, src).unwrap();
    let st = Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&file).status();
    match st {
        Ok(s) => assert!(s.success()),
        Err(e) => panic!("no C compiler: {e}"),
    }
}
