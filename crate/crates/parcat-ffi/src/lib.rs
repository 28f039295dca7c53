//! C ABI for the parcat verification engine.
//!
//! Handles are opaque pointers; every function returns a status code from
//! [`ParcatStatus`]. String outputs are owned by the library and must be
//! released with `parcat_string_free`. Distinct handles may be used from
//! distinct threads; a single handle is not synchronized.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use parcat::cli::{cmd_construct, cmd_enumerate, cmd_validate, Report, ReportFormat};
use parcat::report::CatError;
use parcat::specfile::SpecFile;

/// Status codes mirroring the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ParcatStatus {
    /// Operation completed and every check passed.
    Ok = 0,
    /// Operation completed but some law failed; see the report.
    ValidationFailed = 1,
    /// Malformed input: parse error, bad reference, wrong kind.
    Malformed = 2,
    /// A search or closure budget was exceeded.
    BudgetExceeded = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// Internal panic; the handle should be discarded.
    Internal = 5,
}

/// An opaque loaded structure: a spec file plus its input designation.
pub struct ParcatSpec {
    input: String,
    text: String,
}

/// An opaque report handle.
pub struct ParcatReport {
    report: Report,
}

fn status_of(err: &CatError) -> ParcatStatus {
    match err {
        CatError::SearchBudgetExceeded { .. } | CatError::ClosureOverflow { .. } => {
            ParcatStatus::BudgetExceeded
        }
        _ => ParcatStatus::Malformed,
    }
}

thread_local! {
    static LAST_ERROR: std::cell::RefCell<Option<CString>> = const { std::cell::RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(msg).ok();
    });
}

/// The most recent error message on this thread, or null. Borrowed; do not
/// free. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn parcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

/// Load a structure from a `corpus:<name>` designation or a file path.
/// On success writes a new handle to `out`.
///
/// # Safety
/// `input` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parcat_load(input: *const c_char, out: *mut *mut ParcatSpec) -> ParcatStatus {
    let Some(input) = (unsafe { read_str(input) }) else {
        return ParcatStatus::NullArgument;
    };
    if out.is_null() {
        return ParcatStatus::NullArgument;
    }
    let result = catch_unwind(|| -> Result<ParcatSpec, CatError> {
        let text = if let Some(name) = input.strip_prefix("corpus:") {
            let inst = parcat::corpus::by_name(name)?;
            parcat::specfile::encode_action(
                &inst.action,
                inst.linear.as_deref(),
                parcat::specfile::Kind::Action,
            )
            .save()
        } else {
            std::fs::read_to_string(input).map_err(|e| CatError::Io(e.to_string()))?
        };
        // parse eagerly so malformed inputs fail on load
        SpecFile::load(&text)?;
        Ok(ParcatSpec {
            input: input.to_string(),
            text,
        })
    });
    match result {
        Ok(Ok(spec)) => {
            unsafe { *out = Box::into_raw(Box::new(spec)) };
            ParcatStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            ParcatStatus::Internal
        }
    }
}

/// Validate the loaded structure. On success writes a report handle to `out`
/// and returns `Ok` or `ValidationFailed` according to the result.
///
/// # Safety
/// `spec` must be a live handle from `parcat_load`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn parcat_validate(
    spec: *const ParcatSpec,
    out: *mut *mut ParcatReport,
) -> ParcatStatus {
    let Some(spec) = (unsafe { spec.as_ref() }) else {
        return ParcatStatus::NullArgument;
    };
    if out.is_null() {
        return ParcatStatus::NullArgument;
    }
    run_reporting(out, || cmd_validate(&spec.input))
}

/// Run a construction (`smash`, `globalize`, `trace`, `polyad`,
/// `equivariantize`, `algebra`). `object` may be null except for `trace`;
/// `cap` of zero means the default. The constructed structure's canonical
/// text is written to `out_text` when non-null (free with
/// `parcat_string_free`).
///
/// # Safety
/// `spec` must be a live handle; `op` (and `object` when non-null) must be
/// valid NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn parcat_construct(
    spec: *const ParcatSpec,
    op: *const c_char,
    object: *const c_char,
    cap: usize,
    out: *mut *mut ParcatReport,
    out_text: *mut *mut c_char,
) -> ParcatStatus {
    let (Some(spec), Some(op)) = (unsafe { spec.as_ref() }, unsafe { read_str(op) }) else {
        return ParcatStatus::NullArgument;
    };
    let object = unsafe { read_str(object) };
    if out.is_null() {
        return ParcatStatus::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        cmd_construct(op, &spec.input, None, (cap > 0).then_some(cap), object, false)
    }));
    match result {
        Ok(Ok((report, text))) => {
            let passed = report.passed;
            unsafe { *out = Box::into_raw(Box::new(ParcatReport { report })) };
            if !out_text.is_null() {
                let c = text
                    .and_then(|t| CString::new(t).ok())
                    .map_or(ptr::null_mut(), CString::into_raw);
                unsafe { *out_text = c };
            }
            if passed {
                ParcatStatus::Ok
            } else {
                ParcatStatus::ValidationFailed
            }
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            ParcatStatus::Internal
        }
    }
}

/// Deterministic enumeration (`central-idempotents` or `equivariant`).
///
/// # Safety
/// `spec` must be a live handle; `what` (and `carrier` when non-null) must
/// be valid NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn parcat_enumerate(
    spec: *const ParcatSpec,
    what: *const c_char,
    carrier: *const c_char,
    out: *mut *mut ParcatReport,
) -> ParcatStatus {
    let (Some(spec), Some(what)) = (unsafe { spec.as_ref() }, unsafe { read_str(what) }) else {
        return ParcatStatus::NullArgument;
    };
    let carrier = unsafe { read_str(carrier) };
    if out.is_null() {
        return ParcatStatus::NullArgument;
    }
    run_reporting(out, || cmd_enumerate(what, &spec.input, carrier))
}

fn run_reporting(
    out: *mut *mut ParcatReport,
    f: impl FnOnce() -> Result<Report, CatError>,
) -> ParcatStatus {
    let result = catch_unwind(AssertUnwindSafe(f));
    match result {
        Ok(Ok(report)) => {
            let passed = report.passed;
            unsafe { *out = Box::into_raw(Box::new(ParcatReport { report })) };
            if passed {
                ParcatStatus::Ok
            } else {
                ParcatStatus::ValidationFailed
            }
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            ParcatStatus::Internal
        }
    }
}

/// Render a report as JSON (owned string; free with `parcat_string_free`).
///
/// # Safety
/// `report` must be a live handle from a reporting call.
#[no_mangle]
pub unsafe extern "C" fn parcat_report_json(report: *const ParcatReport) -> *mut c_char {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return ptr::null_mut();
    };
    CString::new(report.report.render(ReportFormat::Json, true))
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// The canonical text of the loaded structure (owned string).
///
/// # Safety
/// `spec` must be a live handle from `parcat_load`.
#[no_mangle]
pub unsafe extern "C" fn parcat_spec_text(spec: *const ParcatSpec) -> *mut c_char {
    let Some(spec) = (unsafe { spec.as_ref() }) else {
        return ptr::null_mut();
    };
    CString::new(spec.text.clone()).map_or(ptr::null_mut(), CString::into_raw)
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a string returned by this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn parcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Release a spec handle.
///
/// # Safety
/// `spec` must come from `parcat_load`, released at most once.
#[no_mangle]
pub unsafe extern "C" fn parcat_spec_free(spec: *mut ParcatSpec) {
    if !spec.is_null() {
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Release a report handle.
///
/// # Safety
/// `report` must come from a reporting call, released at most once.
#[no_mangle]
pub unsafe extern "C" fn parcat_report_free(report: *mut ParcatReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_validate_and_free_through_the_c_api() {
        unsafe {
            let input = CString::new("corpus:inst-top").unwrap();
            let mut spec: *mut ParcatSpec = ptr::null_mut();
            assert!(parcat_load(input.as_ptr(), &mut spec) == ParcatStatus::Ok);
            let mut report: *mut ParcatReport = ptr::null_mut();
            assert!(parcat_validate(spec, &mut report) == ParcatStatus::Ok);
            let json = parcat_report_json(report);
            assert!(!json.is_null());
            let text = CStr::from_ptr(json).to_str().unwrap();
            assert!(text.contains("\"passed\": true"));
            parcat_string_free(json);
            parcat_report_free(report);
            parcat_spec_free(spec);
        }
    }

    #[test]
    fn construct_through_the_c_api() {
        unsafe {
            let input = CString::new("corpus:inst-top").unwrap();
            let mut spec: *mut ParcatSpec = ptr::null_mut();
            assert!(parcat_load(input.as_ptr(), &mut spec) == ParcatStatus::Ok);
            let op = CString::new("globalize").unwrap();
            let mut report: *mut ParcatReport = ptr::null_mut();
            let mut text: *mut c_char = ptr::null_mut();
            let status =
                parcat_construct(spec, op.as_ptr(), ptr::null(), 0, &mut report, &mut text);
            assert!(status == ParcatStatus::Ok);
            assert!(!text.is_null());
            let body = CStr::from_ptr(text).to_str().unwrap();
            assert!(body.contains("kind: globalization"));
            parcat_string_free(text);
            parcat_report_free(report);
            parcat_spec_free(spec);
        }
    }

    #[test]
    fn errors_set_the_thread_message() {
        unsafe {
            let input = CString::new("corpus:nope").unwrap();
            let mut spec: *mut ParcatSpec = ptr::null_mut();
            let status = parcat_load(input.as_ptr(), &mut spec);
            assert!(status == ParcatStatus::Malformed);
            let msg = parcat_last_error();
            assert!(!msg.is_null());
            assert!(parcat_load(ptr::null(), &mut spec) == ParcatStatus::NullArgument);
        }
    }
}
