//! C interface to legendre-mm.
//!
//! Every entry point returns an `LmmStatus`. Results come back through out-pointers.
//! Handles are opaque and must be released with the matching `*_free`. Strings handed
//! out by the library are released with `lmm_string_free`. After a non-OK status,
//! `lmm_last_error` describes the failure on the calling thread.

use legendre_mm::bounds::{mm_curve_bound, LogBound};
use legendre_mm::cli::parse_logbound;
use legendre_mm::legendre::divpoly::division_polynomials;
use legendre_mm::scanner::{scan_section, verify_mm_bound, CurveSpec, SectionScan};
use legendre_mm::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes. Zero is success; the rest mirror the library's error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmmStatus {
    Ok = 0,
    Precondition = 1,
    Domain = 2,
    InvalidInput = 3,
    Format = 4,
    Precision = 5,
    DbIncomplete = 6,
    Verification = 7,
    Io = 8,
    NullPointer = 9,
    Utf8 = 10,
    IndexOutOfRange = 11,
    Panic = 12,
}

/// A parsed curve specification.
pub struct LmmCurve(CurveSpec);

/// The outcome of a section scan for one order N.
pub struct LmmScan(SectionScan);

/// A nonnegative real held as exp(exact expression).
pub struct LmmBound(LogBound);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LmmStatus {
    match e {
        Error::Precondition(_) => LmmStatus::Precondition,
        Error::Domain(_) => LmmStatus::Domain,
        Error::InvalidInput(_) => LmmStatus::InvalidInput,
        Error::Format(_) => LmmStatus::Format,
        Error::Precision(_) => LmmStatus::Precision,
        Error::DbIncomplete(_) => LmmStatus::DbIncomplete,
        Error::Verification(_) => LmmStatus::Verification,
        Error::Io(_) => LmmStatus::Io,
    }
}

fn fail(s: LmmStatus, msg: &str) -> LmmStatus {
    set_error(msg);
    s
}

/// Run `f`, translating errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), LmmStatus>>(f: F) -> LmmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LmmStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(LmmStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: legendre_mm::Result<T>) -> Result<T, LmmStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, LmmStatus> {
    if p.is_null() {
        return Err(fail(LmmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(LmmStatus::Utf8, "argument is not UTF-8"))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, LmmStatus> {
    p.as_ref().ok_or_else(|| fail(LmmStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), LmmStatus> {
    if out.is_null() {
        return Err(fail(LmmStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

fn cstring(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the last failure on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn lmm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lmm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a curve specification from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_curve_from_json(json: *const c_char, out: *mut *mut LmmCurve) -> LmmStatus {
    guard(|| {
        let spec = lib(CurveSpec::parse_json(str_arg(json)?))?;
        put(out, Box::into_raw(Box::new(LmmCurve(spec))))
    })
}

/// # Safety
/// `c` must be NULL or a handle from `lmm_curve_from_json`.
#[no_mangle]
pub unsafe extern "C" fn lmm_curve_free(c: *mut LmmCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Torsion points of exact order `n` on the curve, over every fiber.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_scan_section(curve: *const LmmCurve, n: u64, out: *mut *mut LmmScan) -> LmmStatus {
    guard(|| {
        let c = ref_arg(curve)?;
        let s = lib(scan_section(&c.0, n))?;
        put(out, Box::into_raw(Box::new(LmmScan(s))))
    })
}

/// # Safety
/// `s` must be NULL or a handle from `lmm_scan_section`.
#[no_mangle]
pub unsafe extern "C" fn lmm_scan_free(s: *mut LmmScan) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Whether the curve meets the N-torsion of the generic fiber in a whole component.
///
/// # Safety
/// `scan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_scan_is_generic(scan: *const LmmScan, out: *mut bool) -> LmmStatus {
    guard(|| put(out, ref_arg(scan)?.0.is_generic()))
}

/// Number of isolated hits.
///
/// # Safety
/// `scan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_scan_hit_count(scan: *const LmmScan, out: *mut usize) -> LmmStatus {
    guard(|| put(out, ref_arg(scan)?.0.hits().len()))
}

/// Order of hit `i`.
///
/// # Safety
/// `scan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_scan_hit_order(scan: *const LmmScan, i: usize, out: *mut u64) -> LmmStatus {
    guard(|| {
        let h = ref_arg(scan)?.0.hits().get(i).ok_or_else(|| fail(LmmStatus::IndexOutOfRange, "hit index out of range"))?;
        put(out, h.order)
    })
}

/// Hit `i` as a JSON record. Free the string with `lmm_string_free`.
///
/// # Safety
/// `scan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_scan_hit_json(scan: *const LmmScan, i: usize, out: *mut *mut c_char) -> LmmStatus {
    guard(|| {
        let h = ref_arg(scan)?.0.hits().get(i).ok_or_else(|| fail(LmmStatus::IndexOutOfRange, "hit index out of range"))?;
        let text = serde_json::to_string(&h.record(None)).map_err(|e| fail(LmmStatus::Format, &e.to_string()))?;
        put(out, cstring(text))
    })
}

/// Parse a bound written as a rational ≥ 1 or as `exp(<expression>)`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_bound_parse(text: *const c_char, out: *mut *mut LmmBound) -> LmmStatus {
    guard(|| {
        let b = lib(parse_logbound(str_arg(text)?))?;
        put(out, Box::into_raw(Box::new(LmmBound(b))))
    })
}

/// # Safety
/// `b` must be NULL or a bound handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lmm_bound_free(b: *mut LmmBound) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// max{(3·C·D2)^4, exp(2^(18/5))}.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_bound_mm_curve(c: *const LmmBound, d2: u64, out: *mut *mut LmmBound) -> LmmStatus {
    guard(|| {
        let b = lib(mm_curve_bound(&ref_arg(c)?.0, d2))?;
        put(out, Box::into_raw(Box::new(LmmBound(b))))
    })
}

/// Natural logarithm as a double; -inf for the zero bound.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_bound_ln(b: *const LmmBound, out: *mut f64) -> LmmStatus {
    guard(|| put(out, ref_arg(b)?.0.ln_approx()))
}

/// Certified comparison a ≤ b.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_bound_le(a: *const LmmBound, b: *const LmmBound, out: *mut bool) -> LmmStatus {
    guard(|| put(out, ref_arg(a)?.0.le(&ref_arg(b)?.0)))
}

/// Exact text `exp(...)`. Free with `lmm_string_free`.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_bound_to_string(b: *const LmmBound, out: *mut *mut c_char) -> LmmStatus {
    guard(|| put(out, cstring(ref_arg(b)?.0.expr_string())))
}

/// A_n and B_n as text. Free both strings with `lmm_string_free`.
///
/// # Safety
/// `a_out` and `b_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_divpoly(n: u32, a_out: *mut *mut c_char, b_out: *mut *mut c_char) -> LmmStatus {
    guard(|| {
        if a_out.is_null() || b_out.is_null() {
            return Err(fail(LmmStatus::NullPointer, "null output pointer"));
        }
        let ab = lib(division_polynomials(n))?;
        put(a_out, cstring(ab.0.to_string()))?;
        put(b_out, cstring(ab.1.to_string()))
    })
}

/// Scan orders 2..=max_n, re-certify every hit, and compare each order with the curve
/// bound for constant `c`. All hits are treated as lying on fibers isogenous to E0.
///
/// # Safety
/// `curve` and `c` must be live handles; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_verify(curve: *const LmmCurve, c: *const LmmBound, max_n: u64, passed: *mut bool) -> LmmStatus {
    guard(|| {
        let spec = &ref_arg(curve)?.0;
        let c = &ref_arg(c)?.0;
        if passed.is_null() {
            return Err(fail(LmmStatus::NullPointer, "null output pointer"));
        }
        let mut hits = Vec::new();
        for n in 2..=max_n {
            hits.extend(lib(scan_section(spec, n))?.hits().iter().cloned());
        }
        let flags = vec![true; hits.len()];
        let r = lib(verify_mm_bound(spec, c, &hits, &flags))?;
        put(passed, r.passed)
    })
}

/// Run the command-line tool in-process. `argv` excludes the program name.
/// Output strings are freed with `lmm_string_free`.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lmm_cli_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    stdout_out: *mut *mut c_char,
    stderr_out: *mut *mut c_char,
) -> LmmStatus {
    guard(|| {
        if exit_code.is_null() || stdout_out.is_null() || stderr_out.is_null() {
            return Err(fail(LmmStatus::NullPointer, "null output pointer"));
        }
        if argc > 0 && argv.is_null() {
            return Err(fail(LmmStatus::NullPointer, "null argv"));
        }
        let mut args = vec!["legendre-mm".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i))?.to_string());
        }
        let r = legendre_mm::cli::run(args);
        put(exit_code, r.code)?;
        put(stdout_out, cstring(r.stdout))?;
        put(stderr_out, cstring(r.stderr))
    })
}
