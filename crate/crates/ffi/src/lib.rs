//! C interface to bundlex.
//!
//! Objects are opaque handles created by `bx_*` constructors and released
//! with the matching `bx_*_free`. Every fallible call returns a
//! [`BxStatus`]; on failure a message is available from
//! [`bx_last_error_message`] on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`bx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bundlex::cli::SpecFile;
use bundlex::extension::{
    builtin_example, check_restriction, extend_bundle, verify_cocycle, BundleSpec,
    ExtendedBundle, VerificationReport,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    ExtensionFailed = 5,
    Panic = 6,
}

/// A validated bundle spec.
pub struct BxSpec {
    inner: BundleSpec,
}

/// An extended bundle.
pub struct BxExtension {
    inner: ExtendedBundle,
    spec: BundleSpec,
}

/// A verification report.
pub struct BxReport {
    inner: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let mut msg = msg.into();
    msg.retain(|c| c != '\0');
    let c = CString::new(msg).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, converting panics and `Err` into a status and the thread's
/// last error.
fn guard<F>(f: F) -> BxStatus
where
    F: FnOnce() -> Result<(), (BxStatus, String)>,
{
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BxStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (BxStatus, String)> {
    if p.is_null() {
        return Err((BxStatus::NullPointer, "null string argument".into()));
    }
    // SAFETY: caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| (BxStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (BxStatus, String)> {
    // SAFETY: caller passes a live handle or null.
    unsafe { p.as_ref() }.ok_or_else(|| (BxStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (BxStatus, String)> {
    if out.is_null() {
        return Err((BxStatus::NullPointer, "null out-parameter".into()));
    }
    // SAFETY: out is non-null and writable per the caller contract.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (BxStatus, String)> {
    if out.is_null() {
        return Err((BxStatus::NullPointer, "null out-parameter".into()));
    }
    let c = CString::new(s).map_err(|e| (BxStatus::InvalidInput, e.to_string()))?;
    // SAFETY: out is non-null and writable.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn json_result(r: serde_json::Result<String>) -> Result<String, (BxStatus, String)> {
    r.map_err(|e| (BxStatus::InvalidInput, e.to_string()))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next `bx_*` call on this thread.
#[no_mangle]
pub extern "C" fn bx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a spec file (JSON text).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_spec_from_json(json: *const c_char, out: *mut *mut BxSpec) -> BxStatus {
    guard(|| {
        let text = unsafe { read_str(json) }?;
        let file: SpecFile =
            serde_json::from_str(text).map_err(|e| (BxStatus::ParseError, e.to_string()))?;
        let spec = file
            .into_spec()
            .map_err(|e| (BxStatus::InvalidInput, e.to_string()))?;
        unsafe { put(out, BxSpec { inner: spec }) }
    })
}

/// A built-in example (`"skoda"` or `"demailly"`); `k` is used by demailly
/// only and must be at least 2 there.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_spec_builtin(name: *const c_char, k: u32, out: *mut *mut BxSpec) -> BxStatus {
    guard(|| {
        let name = unsafe { read_str(name) }?;
        let spec = builtin_example(name, Some(k)).map_err(|e| (BxStatus::InvalidInput, e.to_string()))?;
        unsafe { put(out, BxSpec { inner: spec }) }
    })
}

/// Serializes a spec in the spec-file format.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_spec_to_json(spec: *const BxSpec, out: *mut *mut c_char) -> BxStatus {
    guard(|| {
        let spec = unsafe { handle(spec) }?;
        let s = json_result(serde_json::to_string(&SpecFile::from_spec(&spec.inner)))?;
        unsafe { put_string(out, s) }
    })
}

/// Number of holes of the spec's domain, or 0 for a null handle.
///
/// # Safety
/// `spec` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bx_spec_num_holes(spec: *const BxSpec) -> usize {
    unsafe { spec.as_ref() }.map_or(0, |s| s.inner.num_holes())
}

/// # Safety
/// `spec` must come from a `bx_spec_*` constructor and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn bx_spec_free(spec: *mut BxSpec) {
    if !spec.is_null() {
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Extends the bundle over every hole and over infinity.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_extend(spec: *const BxSpec, out: *mut *mut BxExtension) -> BxStatus {
    guard(|| {
        let spec = unsafe { handle(spec) }?;
        let ext = extend_bundle(&spec.inner).map_err(|e| (BxStatus::ExtensionFailed, e.to_string()))?;
        unsafe {
            put(
                out,
                BxExtension {
                    inner: ext,
                    spec: spec.inner.clone(),
                },
            )
        }
    })
}

/// # Safety
/// `ext` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_extension_to_json(ext: *const BxExtension, out: *mut *mut c_char) -> BxStatus {
    guard(|| {
        let ext = unsafe { handle(ext) }?;
        let s = json_result(serde_json::to_string(&ext.inner))?;
        unsafe { put_string(out, s) }
    })
}

/// # Safety
/// `ext` must come from [`bx_extend`] and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn bx_extension_free(ext: *mut BxExtension) {
    if !ext.is_null() {
        drop(unsafe { Box::from_raw(ext) });
    }
}

/// Samples every gluing identity. A failing verification is not an error:
/// the call returns `BX_STATUS_OK` and [`bx_report_pass`] is false.
///
/// # Safety
/// `ext` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_verify(
    ext: *const BxExtension,
    samples: usize,
    tol: f64,
    seed: u64,
    out: *mut *mut BxReport,
) -> BxStatus {
    guard(|| {
        let ext = unsafe { handle(ext) }?;
        if samples == 0 || !(tol.is_finite() && tol > 0.0) {
            return Err((BxStatus::InvalidInput, "samples and tol must be positive".into()));
        }
        let mut report = verify_cocycle(&ext.inner, samples, tol, seed);
        report.push(check_restriction(&ext.spec, &ext.inner));
        unsafe { put(out, BxReport { inner: report }) }
    })
}

/// Overall verdict; false for a null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bx_report_pass(report: *const BxReport) -> bool {
    unsafe { report.as_ref() }.is_some_and(|r| r.inner.pass)
}

/// Largest residual over the records checked at the report tolerance; NaN
/// for a null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bx_report_max_residual(report: *const BxReport) -> f64 {
    unsafe { report.as_ref() }.map_or(f64::NAN, |r| r.inner.max_residual)
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bx_report_to_json(report: *const BxReport, out: *mut *mut c_char) -> BxStatus {
    guard(|| {
        let report = unsafe { handle(report) }?;
        let s = json_result(serde_json::to_string(&report.inner))?;
        unsafe { put_string(out, s) }
    })
}

/// # Safety
/// `report` must come from [`bx_verify`] and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn bx_report_free(report: *mut BxReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// # Safety
/// `s` must come from a `bx_*_to_json` call and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn bx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
