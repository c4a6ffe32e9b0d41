//! C ABI over the confluence checker.
//!
//! Systems and reports are opaque handles created by this library and
//! released with the matching `*_free` function. Every fallible call returns a
//! [`CtrsStatus`]; on failure a message is available from
//! [`ctrs_last_error`] on the same thread until the next failing call.
//! Strings returned by the library are owned by the handle they came from.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ctrs::confluence::{Answer, CcpOutcome, Verdict};
use ctrs::report::{full_report, Format};
use ctrs::{decide_confluence, parse_ctrs, Budget, Ctrs, Error, Precedence};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtrsStatus {
    Ok = 0,
    ParseError = 1,
    InvalidPrecedence = 2,
    InvalidArgument = 3,
    NullPointer = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtrsAnswer {
    Yes = 0,
    No = 1,
    Maybe = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtrsFormat {
    Text = 0,
    Structured = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtrsCcpResult {
    Joinable = 0,
    NotJoinable = 1,
    Unknown = 2,
}

/// Search budgets. All fields must be positive.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CtrsOptions {
    pub cond_depth: usize,
    pub fuel: usize,
    pub max_term_size: usize,
}

/// A parsed rewrite system.
pub struct CtrsSystem {
    ctrs: Ctrs,
}

/// The outcome of one analysis.
pub struct CtrsReport {
    verdict: Verdict,
    text: [Option<CString>; 2],
}

/// Position of the last parse error; zero when unknown.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CtrsLocation {
    pub line: usize,
    pub column: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
    static LAST_LOCATION: RefCell<CtrsLocation> = RefCell::new(CtrsLocation::default());
}

fn fail(status: CtrsStatus, msg: impl Into<String>) -> CtrsStatus {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
    status
}

fn guard(f: impl FnOnce() -> CtrsStatus) -> CtrsStatus {
    LAST_LOCATION.with(|l| *l.borrow_mut() = CtrsLocation::default());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CtrsStatus::Internal, "internal error"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CtrsStatus> {
    if p.is_null() {
        return Err(fail(CtrsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CtrsStatus::InvalidArgument, "string is not valid UTF-8"))
}

fn parse_failure(e: &Error) -> CtrsStatus {
    let loc = match e {
        Error::Parse { line, column, .. }
        | Error::Arity { line, column, .. }
        | Error::LhsVariable { line, column, .. } => CtrsLocation {
            line: *line,
            column: *column,
        },
        _ => CtrsLocation::default(),
    };
    LAST_LOCATION.with(|l| *l.borrow_mut() = loc);
    fail(CtrsStatus::ParseError, e.to_string())
}

/// Default budgets.
#[no_mangle]
pub extern "C" fn ctrs_options_default() -> CtrsOptions {
    let b = Budget::default();
    CtrsOptions {
        cond_depth: b.cond_depth,
        fuel: b.fuel,
        max_term_size: b.max_term_size,
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on this thread.
#[no_mangle]
pub extern "C" fn ctrs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Line and column of the last parse error on this thread.
#[no_mangle]
pub extern "C" fn ctrs_last_error_location() -> CtrsLocation {
    LAST_LOCATION.with(|l| *l.borrow())
}

/// Parses a system in COPS format.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ctrs_system_parse(source: *const c_char, out: *mut *mut CtrsSystem) -> CtrsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CtrsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let src = match read_str(source) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_ctrs(src) {
            Ok(ctrs) => {
                *out = Box::into_raw(Box::new(CtrsSystem { ctrs }));
                CtrsStatus::Ok
            }
            Err(e) => parse_failure(&e),
        }
    })
}

/// Number of rules, or 0 for a null handle.
///
/// # Safety
/// `system` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ctrs_system_rule_count(system: *const CtrsSystem) -> usize {
    system.as_ref().map_or(0, |s| s.ctrs.rules().len())
}

/// # Safety
/// `system` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ctrs_system_free(system: *mut CtrsSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Runs the confluence analysis. `options` and `precedence` may be null.
///
/// # Safety
/// `system` must be a live handle, `precedence` null or NUL-terminated, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ctrs_analyze(
    system: *const CtrsSystem,
    options: *const CtrsOptions,
    precedence: *const c_char,
    out: *mut *mut CtrsReport,
) -> CtrsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CtrsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(system) = system.as_ref() else {
            return fail(CtrsStatus::NullPointer, "null system handle");
        };
        let opts = options.as_ref().copied().unwrap_or_else(|| ctrs_options_default());
        if opts.cond_depth == 0 || opts.fuel == 0 || opts.max_term_size == 0 {
            return fail(CtrsStatus::InvalidArgument, "budgets must be positive");
        }
        let hint = if precedence.is_null() {
            None
        } else {
            let text = match read_str(precedence) {
                Ok(s) => s,
                Err(st) => return st,
            };
            match Precedence::parse(text) {
                Ok(p) => Some(p),
                Err(e) => return fail(CtrsStatus::InvalidPrecedence, e.to_string()),
            }
        };
        let budget = Budget {
            cond_depth: opts.cond_depth,
            fuel: opts.fuel,
            max_term_size: opts.max_term_size,
        };
        let verdict = decide_confluence(&system.ctrs, hint.as_ref(), budget);
        *out = Box::into_raw(Box::new(CtrsReport {
            verdict,
            text: [None, None],
        }));
        CtrsStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ctrs_report_answer(report: *const CtrsReport, out: *mut CtrsAnswer) -> CtrsStatus {
    let (Some(report), false) = (report.as_ref(), out.is_null()) else {
        return fail(CtrsStatus::NullPointer, "null argument");
    };
    *out = match report.verdict.answer {
        Answer::Yes => CtrsAnswer::Yes,
        Answer::No => CtrsAnswer::No,
        Answer::Maybe => CtrsAnswer::Maybe,
    };
    CtrsStatus::Ok
}

/// Number of critical pairs, or 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ctrs_report_ccp_count(report: *const CtrsReport) -> usize {
    report.as_ref().map_or(0, |r| r.verdict.trace.ccps.len())
}

/// Joinability of the critical pair at `index` (0-based).
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ctrs_report_ccp_result(
    report: *const CtrsReport,
    index: usize,
    out: *mut CtrsCcpResult,
) -> CtrsStatus {
    let (Some(report), false) = (report.as_ref(), out.is_null()) else {
        return fail(CtrsStatus::NullPointer, "null argument");
    };
    let Some((_, outcome)) = report.verdict.trace.ccps.get(index) else {
        return fail(CtrsStatus::InvalidArgument, format!("no critical pair at index {index}"));
    };
    *out = match outcome {
        CcpOutcome::Joinable(_) => CtrsCcpResult::Joinable,
        CcpOutcome::NotJoinable { .. } => CtrsCcpResult::NotJoinable,
        CcpOutcome::Unknown(_) => CtrsCcpResult::Unknown,
    };
    CtrsStatus::Ok
}

/// The rendered report, verdict first. The string lives as long as the
/// report handle. Returns null for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ctrs_report_render(report: *mut CtrsReport, format: CtrsFormat) -> *const c_char {
    let Some(report) = report.as_mut() else {
        fail(CtrsStatus::NullPointer, "null report handle");
        return ptr::null();
    };
    let (slot, fmt) = match format {
        CtrsFormat::Text => (0, Format::Text),
        CtrsFormat::Structured => (1, Format::Structured),
    };
    let verdict = &report.verdict;
    report.text[slot]
        .get_or_insert_with(|| CString::new(full_report(verdict, fmt).replace('\0', " ")).unwrap_or_default())
        .as_ptr()
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ctrs_report_free(report: *mut CtrsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn ctrs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
