//! C interface to the GV engine.
//!
//! An engine is an opaque handle bound to one framing vector. Results are
//! exact, so integers and reports cross the boundary as NUL-terminated
//! strings owned by the caller and released with [`gv_string_free`]. Every
//! fallible call returns a [`GvStatus`]; the message of the most recent
//! failure on the calling thread is available from [`gv_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use gv_core::cli::preset;
use gv_core::gv::{compute_reports, GvReport, ReportRequest};
use gv_core::series::{degree_vectors, ZPath};
use gv_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    ComputeFailed = 4,
    Panic = 5,
}

/// Opaque engine handle.
pub struct GvEngine {
    gamma: Vec<i64>,
    reports: Vec<GvReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("NUL bytes removed")));
}

fn fail(status: GvStatus, message: impl Into<String>) -> GvStatus {
    set_error(message);
    status
}

fn from_core(e: Error) -> GvStatus {
    let status = match e {
        Error::InvalidInput(_) | Error::Config(_) => GvStatus::InvalidArgument,
        _ => GvStatus::ComputeFailed,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> GvStatus) -> GvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(GvStatus::Panic, "internal panic"),
    }
}

fn give_string(text: String, out: *mut *mut c_char) -> GvStatus {
    match CString::new(text) {
        Ok(s) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = s.into_raw() };
            GvStatus::Ok
        }
        Err(_) => fail(GvStatus::ComputeFailed, "output contains a NUL byte"),
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an engine for the framing vector `gamma[0..len]`.
///
/// # Safety
/// `gamma` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_new(
    gamma: *const i64,
    len: usize,
    out: *mut *mut GvEngine,
) -> GvStatus {
    if gamma.is_null() || out.is_null() {
        return fail(GvStatus::NullPointer, "null argument");
    }
    let gamma = slice::from_raw_parts(gamma, len).to_vec();
    guard(|| {
        if gamma.len() < 2 {
            return fail(
                GvStatus::InvalidArgument,
                "gamma needs at least two entries",
            );
        }
        *out = Box::into_raw(Box::new(GvEngine {
            gamma,
            reports: Vec::new(),
        }));
        GvStatus::Ok
    })
}

/// Creates an engine from a surface preset name (P2, F0, F1, B2, B3).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_from_preset(
    name: *const c_char,
    out: *mut *mut GvEngine,
) -> GvStatus {
    if name.is_null() || out.is_null() {
        return fail(GvStatus::NullPointer, "null argument");
    }
    let Ok(name) = CStr::from_ptr(name).to_str() else {
        return fail(GvStatus::InvalidArgument, "preset name is not UTF-8");
    };
    match preset(name) {
        Some(gamma) => gv_engine_new(gamma.as_ptr(), gamma.len(), out),
        None => fail(
            GvStatus::InvalidArgument,
            format!("unknown preset {name:?}"),
        ),
    }
}

/// Destroys an engine. Null is ignored.
///
/// # Safety
/// `engine` must come from `gv_engine_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_free(engine: *mut GvEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of entries of the framing vector.
///
/// # Safety
/// `engine` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_rank(engine: *const GvEngine) -> usize {
    engine.as_ref().map_or(0, |e| e.gamma.len())
}

/// Computes reports for every nonzero degree with total at most
/// `max_total_degree`, replacing earlier results. Reports are stored in
/// graded-lex order of the degree.
///
/// # Safety
/// `engine` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_compute(
    engine: *mut GvEngine,
    max_total_degree: u32,
) -> GvStatus {
    let Some(engine) = engine.as_mut() else {
        return fail(GvStatus::NullPointer, "null engine");
    };
    guard(|| {
        let request = ReportRequest {
            gamma: engine.gamma.clone(),
            degrees: degree_vectors(engine.gamma.len(), max_total_degree, None)
                .into_iter()
                .skip(1)
                .collect(),
            paths: vec![ZPath::Definition],
        };
        match compute_reports(&request) {
            Ok(reports) => {
                engine.reports = reports;
                GvStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Number of stored reports.
///
/// # Safety
/// `engine` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_report_count(engine: *const GvEngine) -> usize {
    engine.as_ref().map_or(0, |e| e.reports.len())
}

unsafe fn report_at<'a>(engine: *const GvEngine, index: usize) -> Result<&'a GvReport, GvStatus> {
    let engine = engine
        .as_ref()
        .ok_or_else(|| fail(GvStatus::NullPointer, "null engine"))?;
    engine
        .reports
        .get(index)
        .ok_or_else(|| fail(GvStatus::OutOfRange, format!("no report {index}")))
}

/// Report `index` as a JSON object string.
///
/// # Safety
/// `engine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_report_json(
    engine: *const GvEngine,
    index: usize,
    out: *mut *mut c_char,
) -> GvStatus {
    if out.is_null() {
        return fail(GvStatus::NullPointer, "null output");
    }
    match report_at(engine, index) {
        Ok(report) => give_string(
            serde_json::to_string(report).expect("reports serialize"),
            out,
        ),
        Err(status) => status,
    }
}

/// Whether `t G` is an integral polynomial for report `index`.
///
/// # Safety
/// `engine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_report_integral(
    engine: *const GvEngine,
    index: usize,
    out: *mut bool,
) -> GvStatus {
    if out.is_null() {
        return fail(GvStatus::NullPointer, "null output");
    }
    match report_at(engine, index) {
        Ok(report) => {
            *out = report.integral;
            GvStatus::Ok
        }
        Err(status) => status,
    }
}

/// Copies the degree of report `index` into `degree[0..len]`; `len` must
/// equal the engine rank.
///
/// # Safety
/// `engine` must be a live handle; `degree` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_report_degree(
    engine: *const GvEngine,
    index: usize,
    degree: *mut u32,
    len: usize,
) -> GvStatus {
    if degree.is_null() {
        return fail(GvStatus::NullPointer, "null output");
    }
    match report_at(engine, index) {
        Ok(report) if report.degree.len() == len => {
            slice::from_raw_parts_mut(degree, len).copy_from_slice(&report.degree);
            GvStatus::Ok
        }
        Ok(report) => fail(
            GvStatus::InvalidArgument,
            format!(
                "degree has {} entries, buffer has {len}",
                report.degree.len()
            ),
        ),
        Err(status) => status,
    }
}

/// GV number `n^genus` of report `index` as a decimal string.
///
/// # Safety
/// `engine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gv_engine_gv_number(
    engine: *const GvEngine,
    index: usize,
    genus: u32,
    out: *mut *mut c_char,
) -> GvStatus {
    if out.is_null() {
        return fail(GvStatus::NullPointer, "null output");
    }
    match report_at(engine, index) {
        Ok(report) if !report.integral => fail(
            GvStatus::ComputeFailed,
            format!("degree {:?} is not integral", report.degree),
        ),
        Ok(report) => give_string(report.gv_number(genus).to_string(), out),
        Err(status) => status,
    }
}
