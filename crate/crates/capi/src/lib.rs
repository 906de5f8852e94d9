//! C ABI over the document workbench. Callers hand in JSON bundle text,
//! get back an opaque handle, and drive validation, constructions, the
//! uniformity search, and DOT export through it. All returned strings are
//! owned by the library and must be released with [`esg_string_free`].
//!
//! Status codes mirror the CLI exit codes: 0 ok, 1 validation failure,
//! 2 input error, 3 resource bound exceeded. On any non-zero status a
//! human-readable message is available from [`esg_last_error`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};

use esgames::doc::{check_bundle, Bundle, SCHEMA_VERSION};
use esgames::dot::DotView;
use esgames::workbench::{build_construction, export_dot_doc, search_strategy_doc, BuildParams};
use esgames::{Error, Limits};

/// Opaque handle over a parsed document bundle.
pub struct EsgBundle {
    bundle: Bundle,
}

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum EsgStatus {
    Ok = 0,
    ValidationFailed = 1,
    InputError = 2,
    BoundExceeded = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

static MAX_CONFIGS_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

fn set_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> EsgStatus {
    match err {
        Error::ConfigBound { .. }
        | Error::GroupBound { .. }
        | Error::SearchBound(_)
        | Error::TooManyEvents(_) => EsgStatus::BoundExceeded,
        _ => EsgStatus::InputError,
    }
}

fn limits() -> Limits {
    let mut limits = Limits::default();
    let over = MAX_CONFIGS_OVERRIDE.load(Ordering::Relaxed);
    if over > 0 {
        limits.max_configs = over;
    }
    limits
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn opt_str<'a>(ptr: *const c_char) -> Result<Option<&'a str>, Error> {
    if ptr.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map(Some)
        .map_err(|_| Error::Invalid("string argument is not UTF-8".into()))
}

fn hand_out(text: String, out: *mut *mut c_char) -> EsgStatus {
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            EsgStatus::Ok
        }
        Err(_) => {
            set_error("output contains an interior NUL byte");
            EsgStatus::InputError
        }
    }
}

fn guarded<F: FnOnce() -> EsgStatus>(f: F) -> EsgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            EsgStatus::InputError
        }
    }
}

/// The document schema version this library reads and writes.
#[no_mangle]
pub extern "C" fn esg_schema_version() -> u32 {
    SCHEMA_VERSION
}

/// The message for the most recent failure on this thread. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn esg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Override the configuration-count guard for subsequent calls; 0
/// restores the default.
#[no_mangle]
pub extern "C" fn esg_set_max_configs(max_configs: usize) {
    MAX_CONFIGS_OVERRIDE.store(max_configs, Ordering::Relaxed);
}

/// Parse bundle JSON into an opaque handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to write the handle into.
#[no_mangle]
pub unsafe extern "C" fn esg_bundle_parse(
    json: *const c_char,
    out: *mut *mut EsgBundle,
) -> EsgStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return EsgStatus::InputError;
        }
        let text = match unsafe { opt_str(json) } {
            Ok(Some(t)) => t,
            Ok(None) => {
                set_error("json pointer is null");
                return EsgStatus::InputError;
            }
            Err(e) => {
                set_error(&e.to_string());
                return EsgStatus::InputError;
            }
        };
        match Bundle::from_json(text) {
            Ok(bundle) => {
                unsafe { *out = Box::into_raw(Box::new(EsgBundle { bundle })) };
                EsgStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                EsgStatus::InputError
            }
        }
    })
}

/// Release a bundle handle.
///
/// # Safety
/// `bundle` must be null or a pointer returned by [`esg_bundle_parse`],
/// released at most once.
#[no_mangle]
pub unsafe extern "C" fn esg_bundle_free(bundle: *mut EsgBundle) {
    if !bundle.is_null() {
        drop(unsafe { Box::from_raw(bundle) });
    }
}

unsafe fn borrow_bundle<'a>(bundle: *const EsgBundle) -> Result<&'a Bundle, Error> {
    if bundle.is_null() {
        return Err(Error::Invalid("bundle handle is null".into()));
    }
    Ok(&unsafe { &*bundle }.bundle)
}

/// Run the full validator suite over every document; the structured JSON
/// report is written to `out_report` on both verdicts.
///
/// # Safety
/// `bundle` must be a live handle; `out_report` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn esg_bundle_validate(
    bundle: *const EsgBundle,
    out_report: *mut *mut c_char,
) -> EsgStatus {
    guarded(|| {
        if out_report.is_null() {
            set_error("out pointer is null");
            return EsgStatus::InputError;
        }
        let bundle = match unsafe { borrow_bundle(bundle) } {
            Ok(b) => b,
            Err(e) => {
                set_error(&e.to_string());
                return EsgStatus::InputError;
            }
        };
        match check_bundle(bundle, &limits()) {
            Ok(report) => {
                let ok = report.ok;
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                let status = hand_out(text, out_report);
                if status != EsgStatus::Ok {
                    return status;
                }
                if ok {
                    EsgStatus::Ok
                } else {
                    set_error("validation failed; see the report");
                    EsgStatus::ValidationFailed
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Run a construction (`dual`, `par`, `bang`, `copycat`,
/// `uniform-copycat`, `lift`, `colift`, `tcg`) with JSON arguments of the
/// form `{"game": ..., "with": ..., "copies": ..., "witness": ...}` and
/// return the constructed bundle as JSON.
///
/// # Safety
/// `bundle` must be a live handle; `construction` must be a valid string;
/// `args_json` may be null; `out_bundle` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn esg_build(
    bundle: *const EsgBundle,
    construction: *const c_char,
    args_json: *const c_char,
    out_bundle: *mut *mut c_char,
) -> EsgStatus {
    guarded(|| {
        if out_bundle.is_null() {
            set_error("out pointer is null");
            return EsgStatus::InputError;
        }
        let inner = || -> Result<String, Error> {
            let bundle = unsafe { borrow_bundle(bundle) }?;
            let construction = unsafe { opt_str(construction) }?
                .ok_or_else(|| Error::Invalid("construction is null".into()))?;
            let params = match unsafe { opt_str(args_json) }? {
                None => BuildParams::default(),
                Some(text) => serde_json::from_str::<BuildParams>(text)
                    .map_err(|e| Error::Invalid(format!("bad args: {e}")))?,
            };
            let output = build_construction(bundle, construction, &params, &limits())?;
            Ok(output.to_json() + "\n")
        };
        match inner() {
            Ok(text) => hand_out(text, out_bundle),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Exhaustively search a strategy document (`doc` may be null when the
/// bundle holds exactly one strategy) for a uniform structure. `bound`
/// of 0 keeps the default node budget. The result JSON is either a
/// bundle carrying the structure or a negative result with an optional
/// exhaustiveness certificate.
///
/// # Safety
/// `bundle` must be a live handle; `doc` may be null; `out_result` must
/// be valid to write.
#[no_mangle]
pub unsafe extern "C" fn esg_search_uniform(
    bundle: *const EsgBundle,
    doc: *const c_char,
    bound: u64,
    with_certificate: bool,
    out_result: *mut *mut c_char,
) -> EsgStatus {
    guarded(|| {
        if out_result.is_null() {
            set_error("out pointer is null");
            return EsgStatus::InputError;
        }
        let inner = || -> Result<String, Error> {
            let bundle = unsafe { borrow_bundle(bundle) }?;
            let doc = unsafe { opt_str(doc) }?;
            let bound = if bound == 0 { None } else { Some(bound) };
            search_strategy_doc(bundle, doc, bound, with_certificate, &limits())
        };
        match inner() {
            Ok(text) => hand_out(text, out_result),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Render a document (`doc` may be null when the bundle holds exactly one
/// renderable document) as DOT; `view` is `causality`, `conflict`, or
/// `family`.
///
/// # Safety
/// `bundle` must be a live handle; `view` must be a valid string; `doc`
/// may be null; `out_dot` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn esg_export_dot(
    bundle: *const EsgBundle,
    doc: *const c_char,
    view: *const c_char,
    out_dot: *mut *mut c_char,
) -> EsgStatus {
    guarded(|| {
        if out_dot.is_null() {
            set_error("out pointer is null");
            return EsgStatus::InputError;
        }
        let inner = || -> Result<String, Error> {
            let bundle = unsafe { borrow_bundle(bundle) }?;
            let doc = unsafe { opt_str(doc) }?;
            let view: DotView = unsafe { opt_str(view) }?
                .ok_or_else(|| Error::Invalid("view is null".into()))?
                .parse()
                .map_err(Error::Invalid)?;
            export_dot_doc(bundle, doc, view)
        };
        match inner() {
            Ok(text) => hand_out(text, out_dot),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, released at
/// most once.
#[no_mangle]
pub unsafe extern "C" fn esg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
