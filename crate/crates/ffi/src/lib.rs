//! C ABI over `qasym`.
//!
//! Every fallible call returns a [`QasymStatus`]; on anything but `Ok` the
//! message is available from [`qasym_last_error`] on the same thread.
//! Handles are opaque and must be released with their `_free` function.
//! Strings returned through `char **` are owned by the caller and released
//! with [`qasym_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qasym::asymptotic::{convolve, convolve_mixed, deconvolve, power, AsymptoticForm};
use qasym::catalog::family;
use qasym::parser::{parse, render, ProductSpec};
use qasym::series::{expand, SeriesPoly};
use qasym::verify::{verify, VerifyError};
use qasym::Scalar;

/// Parsed product.
pub struct QasymSpec(ProductSpec);
/// Expanded coefficients a_0..a_N.
pub struct QasymSeries(SeriesPoly);
/// Asymptotic form.
pub struct QasymForm(AsymptoticForm);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QasymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Series = 4,
    Form = 5,
    Catalog = 6,
    SignMismatch = 7,
    Verify = 8,
    Json = 9,
    OutOfRange = 10,
    Panic = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

struct Fail(QasymStatus, String);

impl Fail {
    fn new(status: QasymStatus, e: impl ToString) -> Self {
        Fail(status, e.to_string())
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QasymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QasymStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            QasymStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::new(QasymStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail::new(QasymStatus::InvalidUtf8, e))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::new(QasymStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::new(QasymStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::new(QasymStatus::NullPointer, "null output pointer"));
    }
    let c = CString::new(s).map_err(|e| Fail::new(QasymStatus::Json, e))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn qasym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn qasym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_spec_parse(text: *const c_char, out: *mut *mut QasymSpec) -> QasymStatus {
    guard(|| {
        let spec = parse(cstr(text)?).map_err(|e| Fail::new(QasymStatus::Parse, e))?;
        put(out, QasymSpec(spec))
    })
}

/// Canonical DSL text of a spec.
///
/// # Safety
/// `spec` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_spec_render(spec: *const QasymSpec, out: *mut *mut c_char) -> QasymStatus {
    guard(|| put_string(out, render(&obj(spec)?.0)))
}

/// # Safety
/// `spec` comes from `qasym_spec_parse` or is NULL.
#[no_mangle]
pub unsafe extern "C" fn qasym_spec_free(spec: *mut QasymSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `spec` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_expand(spec: *const QasymSpec, order: usize, out: *mut *mut QasymSeries) -> QasymStatus {
    guard(|| {
        let poly = expand(&obj(spec)?.0, order).map_err(|e| Fail::new(QasymStatus::Series, e))?;
        put(out, QasymSeries(poly))
    })
}

/// Number of coefficients (order + 1), 0 for NULL.
///
/// # Safety
/// `series` is a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qasym_series_len(series: *const QasymSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.coeffs.len())
}

/// Decimal text of a_n.
///
/// # Safety
/// `series` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_series_coeff(
    series: *const QasymSeries,
    n: usize,
    out: *mut *mut c_char,
) -> QasymStatus {
    guard(|| {
        let s = obj(series)?;
        let a =
            s.0.coeffs
                .get(n)
                .ok_or_else(|| Fail::new(QasymStatus::OutOfRange, format!("n = {n} beyond order {}", s.0.order())))?;
        put_string(out, a.to_string())
    })
}

/// ln|a_n|.
///
/// # Safety
/// `series` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_series_log_abs(series: *const QasymSeries, n: usize, out: *mut f64) -> QasymStatus {
    guard(|| {
        let s = obj(series)?;
        if n >= s.0.coeffs.len() {
            return Err(Fail::new(QasymStatus::OutOfRange, format!("n = {n} beyond order {}", s.0.order())));
        }
        let v = s.0.log_abs_coeff(n).map_err(|e| Fail::new(QasymStatus::Series, e))?;
        *out.as_mut().ok_or_else(|| Fail::new(QasymStatus::NullPointer, "null output pointer"))? = v;
        Ok(())
    })
}

/// # Safety
/// `series` comes from `qasym_expand` or is NULL.
#[no_mangle]
pub unsafe extern "C" fn qasym_series_free(series: *mut QasymSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_form_from_json(json: *const c_char, out: *mut *mut QasymForm) -> QasymStatus {
    guard(|| {
        let f: AsymptoticForm = serde_json::from_str(cstr(json)?).map_err(|e| Fail::new(QasymStatus::Json, e))?;
        f.validate().map_err(|e| Fail::new(QasymStatus::Form, e))?;
        put(out, QasymForm(f))
    })
}

/// # Safety
/// `form` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_form_to_json(form: *const QasymForm, out: *mut *mut c_char) -> QasymStatus {
    guard(|| {
        let s = serde_json::to_string(&obj(form)?.0).map_err(|e| Fail::new(QasymStatus::Json, e))?;
        put_string(out, s)
    })
}

/// Closed form of a catalog family. `params` may be NULL when `n_params` is 0.
///
/// # Safety
/// `id` is a NUL-terminated string; `params` points to `n_params` values.
#[no_mangle]
pub unsafe extern "C" fn qasym_catalog_form(
    id: *const c_char,
    params: *const i64,
    n_params: usize,
    out: *mut *mut QasymForm,
) -> QasymStatus {
    guard(|| {
        let fam = family(cstr(id)?).map_err(|e| Fail::new(QasymStatus::Catalog, e))?;
        let p = if n_params == 0 {
            &[][..]
        } else if params.is_null() {
            return Err(Fail::new(QasymStatus::NullPointer, "null params"));
        } else {
            std::slice::from_raw_parts(params, n_params)
        };
        let f = fam.closed_form(p).map_err(|e| Fail::new(QasymStatus::Catalog, e))?;
        put(out, QasymForm(f))
    })
}

/// ln|f(n)| and the predicted sign (+1 or −1).
///
/// # Safety
/// `form` is a live handle; `ln_abs` and `sign` are writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_form_evaluate_log(
    form: *const QasymForm,
    n: u64,
    ln_abs: *mut f64,
    sign: *mut i8,
) -> QasymStatus {
    guard(|| {
        let v = obj(form)?.0.evaluate_log(n);
        if ln_abs.is_null() || sign.is_null() {
            return Err(Fail::new(QasymStatus::NullPointer, "null output pointer"));
        }
        *ln_abs = v.ln_abs;
        *sign = v.sign;
        Ok(())
    })
}

unsafe fn binary(
    a: *const QasymForm,
    b: *const QasymForm,
    out: *mut *mut QasymForm,
    op: fn(&AsymptoticForm, &AsymptoticForm) -> Result<AsymptoticForm, qasym::AsymError>,
) -> QasymStatus {
    guard(|| {
        let f = op(&obj(a)?.0, &obj(b)?.0).map_err(|e| Fail::new(QasymStatus::Form, e))?;
        put(out, QasymForm(f))
    })
}

/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_convolve(
    a: *const QasymForm,
    b: *const QasymForm,
    out: *mut *mut QasymForm,
) -> QasymStatus {
    binary(a, b, out, convolve)
}

/// Solves `known` ⊛ x = `target`.
///
/// # Safety
/// `target`, `known` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_deconvolve(
    target: *const QasymForm,
    known: *const QasymForm,
    out: *mut *mut QasymForm,
) -> QasymStatus {
    binary(target, known, out, deconvolve)
}

/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_convolve_mixed(
    a: *const QasymForm,
    b: *const QasymForm,
    out: *mut *mut QasymForm,
) -> QasymStatus {
    binary(a, b, out, convolve_mixed)
}

/// h-th power for h = num/den.
///
/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_power(a: *const QasymForm, num: i64, den: i64, out: *mut *mut QasymForm) -> QasymStatus {
    guard(|| {
        if den == 0 {
            return Err(Fail::new(QasymStatus::Form, "zero denominator"));
        }
        let f = power(&obj(a)?.0, Scalar::ratio(num, den)).map_err(|e| Fail::new(QasymStatus::Form, e))?;
        put(out, QasymForm(f))
    })
}

/// # Safety
/// `form` comes from this library or is NULL.
#[no_mangle]
pub unsafe extern "C" fn qasym_form_free(form: *mut QasymForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Verification report as JSON. Sign disagreement returns `SignMismatch`.
///
/// # Safety
/// Handles are live; `checkpoints` points to `n_checkpoints` values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qasym_verify(
    spec: *const QasymSpec,
    form: *const QasymForm,
    checkpoints: *const u64,
    n_checkpoints: usize,
    out: *mut *mut c_char,
) -> QasymStatus {
    guard(|| {
        if checkpoints.is_null() {
            return Err(Fail::new(QasymStatus::NullPointer, "null checkpoints"));
        }
        let points = std::slice::from_raw_parts(checkpoints, n_checkpoints);
        let report = verify("ffi", &obj(spec)?.0, &obj(form)?.0, points).map_err(|e| match e {
            VerifyError::SignMismatch { .. } => Fail::new(QasymStatus::SignMismatch, e),
            _ => Fail::new(QasymStatus::Verify, e),
        })?;
        put_string(out, serde_json::to_string(&report).map_err(|e| Fail::new(QasymStatus::Json, e))?)
    })
}
