//! C interface to `frobsig`.
//!
//! Every function returns a [`FrobsigStatus`]; on failure the message is
//! available from [`frobsig_last_error_message`] on the same thread. Strings
//! handed out by the library are released with [`frobsig_string_free`],
//! instances with [`frobsig_instance_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use frobsig::instance::{parse_instance, Instance, TaskKind};
use frobsig::runner::{run, RunOptions};
use frobsig::Error;

/// Result codes. The first four match the exit codes of the `frobsig` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobsigStatus {
    Ok = 0,
    /// The computation ran but an internal consistency check failed; the
    /// report is still returned.
    CheckFailed = 1,
    /// The input was rejected (parse error, ideal not primary to the origin, ...).
    Invalid = 2,
    /// A budget (subspace count, degree, field size) was exceeded.
    Budget = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// Any other error, including a caught panic.
    Internal = 6,
}

/// Output formats for [`frobsig_run`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobsigFormat {
    Json = 0,
    Csv = 1,
    Table = 2,
}

/// Opaque parsed instance file.
pub struct FrobsigInstance {
    inner: Instance,
}

/// Overrides for [`frobsig_run`]. Null strings and negative numbers mean
/// "use the instance's task line".
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct FrobsigRunOptions {
    /// One of `hk`, `srel`, `srat`, `gamma`, `verify`, `oracle-diff`.
    pub task: *const c_char,
    pub ideal: *const c_char,
    pub e_max: i32,
    pub e: i32,
    /// Krull dimension override.
    pub dim: i32,
    /// Maximum number of candidate subspaces; 0 keeps the default.
    pub budget: u64,
    pub rank1_only: bool,
    /// Worker threads; 0 or 1 runs sequentially.
    pub parallel: u32,
    pub format: FrobsigFormat,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> FrobsigStatus {
    if err.is_budget() {
        FrobsigStatus::Budget
    } else if err.is_validation() {
        FrobsigStatus::Invalid
    } else {
        FrobsigStatus::Internal
    }
}

/// Runs `f`, converting panics into `Internal`.
fn guarded(f: impl FnOnce() -> FrobsigStatus) -> FrobsigStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            FrobsigStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn optional_str<'a>(p: *const c_char) -> Result<Option<&'a str>, FrobsigStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| {
        set_error("argument is not valid UTF-8");
        FrobsigStatus::InvalidUtf8
    })
}

fn optional_u32(v: i32) -> Option<u32> {
    u32::try_from(v).ok()
}

/// Default options: everything taken from the instance, JSON output.
#[no_mangle]
pub extern "C" fn frobsig_run_options_default() -> FrobsigRunOptions {
    FrobsigRunOptions {
        task: ptr::null(),
        ideal: ptr::null(),
        e_max: -1,
        e: -1,
        dim: -1,
        budget: 0,
        rank1_only: false,
        parallel: 1,
        format: FrobsigFormat::Json,
    }
}

/// Parses an instance file held in `text`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn frobsig_instance_parse(text: *const c_char, out: *mut *mut FrobsigInstance) -> FrobsigStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            set_error("null argument");
            return FrobsigStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match optional_str(text) {
            Ok(Some(t)) => t,
            Ok(None) => unreachable!("checked above"),
            Err(s) => return s,
        };
        match parse_instance(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(FrobsigInstance { inner }));
                FrobsigStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Releases an instance; null is ignored.
///
/// # Safety
/// `instance` is null or was returned by [`frobsig_instance_parse`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn frobsig_instance_free(instance: *mut FrobsigInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Prints the instance back in canonical instance-file syntax.
///
/// # Safety
/// `instance` is a live instance; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn frobsig_instance_print(instance: *const FrobsigInstance, out: *mut *mut c_char) -> FrobsigStatus {
    guarded(|| {
        if instance.is_null() || out.is_null() {
            set_error("null argument");
            return FrobsigStatus::NullPointer;
        }
        *out = into_c_string((*instance).inner.to_string());
        FrobsigStatus::Ok
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Runs the instance's task (or the one in `options`) and stores the report
/// in `out`. `name` labels the report and may be null. On `CheckFailed` the
/// report is stored as well.
///
/// # Safety
/// `instance` is a live instance, `options` is null or points to valid
/// options whose strings are null or NUL-terminated, and `out` points to
/// writable storage.
#[no_mangle]
pub unsafe extern "C" fn frobsig_run(
    instance: *const FrobsigInstance,
    name: *const c_char,
    options: *const FrobsigRunOptions,
    out: *mut *mut c_char,
) -> FrobsigStatus {
    guarded(|| {
        if instance.is_null() || out.is_null() {
            set_error("null argument");
            return FrobsigStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let o = if options.is_null() { frobsig_run_options_default() } else { *options };
        let strings = (|| Ok((optional_str(name)?, optional_str(o.task)?, optional_str(o.ideal)?)))();
        let (name, task, ideal) = match strings {
            Ok(s) => s,
            Err(s) => return s,
        };
        let task = match task.map(str::parse::<TaskKind>) {
            None => None,
            Some(Ok(t)) => Some(t),
            Some(Err(m)) => {
                set_error(m);
                return FrobsigStatus::Invalid;
            }
        };
        let opts = RunOptions {
            task,
            ideal: ideal.map(str::to_string),
            e_max: optional_u32(o.e_max),
            e: optional_u32(o.e),
            dim: optional_u32(o.dim).map(|d| d as usize),
            budget: (o.budget > 0).then_some(o.budget),
            rank1_only: o.rank1_only,
            parallel: o.parallel.max(1) as usize,
            ..RunOptions::default()
        };
        match run(&(*instance).inner, name.unwrap_or("instance"), &opts) {
            Ok(outcome) => {
                let text = match o.format {
                    FrobsigFormat::Json => outcome.report.to_json(),
                    FrobsigFormat::Csv => outcome.report.to_csv(),
                    FrobsigFormat::Table => outcome.report.to_table(),
                };
                *out = into_c_string(text);
                match outcome.failure {
                    None => FrobsigStatus::Ok,
                    Some(f) => {
                        set_error(f);
                        FrobsigStatus::CheckFailed
                    }
                }
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn frobsig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn frobsig_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn frobsig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
