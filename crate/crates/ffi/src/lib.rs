//! C ABI for `plumbing-core`.
//!
//! Every fallible function returns a [`PlumbingStatus`] and writes its result
//! through an out-pointer. Objects are opaque handles owned by the caller and
//! released with the matching `*_free` function; strings returned by the
//! library are released with [`plumbing_string_free`]. After a non-`OK`
//! status, [`plumbing_last_error`] describes the problem.
//!
//! Verification results are not errors: a verifier returns `OK` together
//! with a report handle whose entries carry pass/fail.

use plumbing_core::ainf::{
    build_formal_category, check_ainf_relations_with, dg_to_ainf, minimal_model, to_formal, AInfCategory, CheckConfig,
    FormalCountData,
};
use plumbing_core::orientations::{boundary_sign_stasheff, verify_signs};
use plumbing_core::plumbing::{verify_dg_axioms, DGCategory, PlumbingInput};
use plumbing_core::polytopes::verify_polytopes;
use plumbing_core::report::Report;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlumbingStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed.
    ParseError = 3,
    /// The input parsed but violates a precondition.
    InvalidInput = 4,
    /// An internal error; please report it.
    Internal = 5,
}

/// A DG category built from a plumbing spec.
pub struct PlumbingDg {
    category: DGCategory,
    dimension: i64,
}

/// An A∞ category.
pub struct PlumbingAinf {
    category: AInfCategory,
}

/// A verification report.
pub struct PlumbingReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

type FfiResult<T> = Result<T, PlumbingStatus>;

fn fail<T>(status: PlumbingStatus, msg: impl Into<String>) -> FfiResult<T> {
    set_error(msg);
    Err(status)
}

fn core_error(e: plumbing_core::Error) -> PlumbingStatus {
    set_error(e.to_string());
    match e {
        plumbing_core::Error::Parse(_) => PlumbingStatus::ParseError,
        _ => PlumbingStatus::InvalidInput,
    }
}

/// Run `f`, converting panics into `Internal` and clearing the error message
/// on success.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> PlumbingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PlumbingStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            PlumbingStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(PlumbingStatus::NullArgument, format!("{name} is null"));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(s),
        Err(e) => fail(PlumbingStatus::InvalidUtf8, format!("{name}: {e}")),
    }
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    match p.as_ref() {
        Some(r) => Ok(r),
        None => fail(PlumbingStatus::NullArgument, format!("{name} is null")),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return fail(PlumbingStatus::NullArgument, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

fn out_check<T>(out: *mut T) -> FfiResult<()> {
    if out.is_null() {
        fail(PlumbingStatus::NullArgument, "output pointer is null")
    } else {
        Ok(())
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> FfiResult<*mut c_char> {
    match CString::new(s) {
        Ok(c) => Ok(c.into_raw()),
        Err(_) => fail(PlumbingStatus::Internal, "string contains a nul byte"),
    }
}

fn parse_json(text: &str) -> FfiResult<serde_json::Value> {
    serde_json::from_str(text).or_else(|e| {
        fail(
            PlumbingStatus::ParseError,
            format!("line {} column {}: {e}", e.line(), e.column()),
        )
    })
}

/// Message describing the last failure on this thread, or the empty string.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn plumbing_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plumbing_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the DG category of a plumbing spec given as JSON text. Relative
/// triangulation file names are resolved against `base_dir`, which may be
/// null when the spec is self-contained.
///
/// # Safety
/// `json` must be a nul-terminated string, `base_dir` null or nul-terminated,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_dg_from_json(
    json: *const c_char,
    base_dir: *const c_char,
    out: *mut *mut PlumbingDg,
) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let v = parse_json(str_arg(json, "json")?)?;
        let base = if base_dir.is_null() {
            None
        } else {
            Some(Path::new(str_arg(base_dir, "base_dir")?))
        };
        let input = PlumbingInput::from_json(&v, base).map_err(core_error)?;
        let category = input.build().map_err(core_error)?;
        write_out(
            out,
            boxed(PlumbingDg {
                category,
                dimension: input.dimension() as i64,
            }),
        )
    })
}

/// Release a DG category. Null is ignored.
///
/// # Safety
/// `dg` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plumbing_dg_free(dg: *mut PlumbingDg) {
    if !dg.is_null() {
        drop(Box::from_raw(dg));
    }
}

/// Number of objects.
///
/// # Safety
/// `dg` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_dg_object_count(dg: *const PlumbingDg, out: *mut usize) -> PlumbingStatus {
    guard(|| write_out(out, ref_arg(dg, "dg")?.category.objects.len()))
}

/// Rank of the hom complex from object `source` to object `target` in the
/// given degree (0 when there are no generators).
///
/// # Safety
/// `dg` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_dg_hom_rank(
    dg: *const PlumbingDg,
    source: usize,
    target: usize,
    degree: i64,
    out: *mut usize,
) -> PlumbingStatus {
    guard(|| {
        let cat = &ref_arg(dg, "dg")?.category;
        let n = cat.objects.len();
        if source >= n || target >= n {
            return fail(
                PlumbingStatus::InvalidInput,
                format!("object index out of range (have {n} objects)"),
            );
        }
        let rank = cat
            .homs
            .get(&(source, target))
            .and_then(|c| c.module().ranks().into_iter().find(|(p, _)| *p == degree))
            .map_or(0, |(_, r)| r);
        write_out(out, rank)
    })
}

/// Check the DG category axioms.
///
/// # Safety
/// `dg` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_dg_verify(dg: *const PlumbingDg, out: *mut *mut PlumbingReport) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let report = verify_dg_axioms(&ref_arg(dg, "dg")?.category);
        write_out(out, boxed(PlumbingReport { report }))
    })
}

/// The A∞ category of a DG category (signs twisted by the dimension).
///
/// # Safety
/// `dg` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_dg_to_ainf(dg: *const PlumbingDg, out: *mut *mut PlumbingAinf) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let dg = ref_arg(dg, "dg")?;
        let category = dg_to_ainf(&dg.category, dg.dimension).map_err(core_error)?;
        write_out(out, boxed(PlumbingAinf { category }))
    })
}

/// Build an A∞ category from count-file JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_ainf_from_json(json: *const c_char, out: *mut *mut PlumbingAinf) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let v = parse_json(str_arg(json, "json")?)?;
        let data: FormalCountData =
            serde_json::from_value(v).or_else(|e| fail(PlumbingStatus::ParseError, e.to_string()))?;
        let category = build_formal_category(&data).map_err(core_error)?;
        write_out(out, boxed(PlumbingAinf { category }))
    })
}

/// Release an A∞ category. Null is ignored.
///
/// # Safety
/// `ainf` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plumbing_ainf_free(ainf: *mut PlumbingAinf) {
    if !ainf.is_null() {
        drop(Box::from_raw(ainf));
    }
}

/// Check the A∞ relations for up to `d_max` inputs; large arities are
/// sampled with `seed`.
///
/// # Safety
/// `ainf` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_ainf_verify(
    ainf: *const PlumbingAinf,
    d_max: usize,
    seed: u64,
    out: *mut *mut PlumbingReport,
) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let cfg = CheckConfig::new(d_max).with_seed(seed);
        let report = check_ainf_relations_with(&ref_arg(ainf, "ainf")?.category, &cfg);
        write_out(out, boxed(PlumbingReport { report }))
    })
}

/// The minimal model, with operations computed up to `d_max` inputs.
///
/// # Safety
/// `ainf` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_ainf_minimal_model(
    ainf: *const PlumbingAinf,
    d_max: usize,
    out: *mut *mut PlumbingAinf,
) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let (category, _) = minimal_model(&ref_arg(ainf, "ainf")?.category, d_max).map_err(core_error)?;
        write_out(out, boxed(PlumbingAinf { category }))
    })
}

/// Export as count-file JSON. Release the string with [`plumbing_string_free`].
///
/// # Safety
/// `ainf` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_ainf_to_json(ainf: *const PlumbingAinf, out: *mut *mut c_char) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let data = to_formal(&ref_arg(ainf, "ainf")?.category);
        let text = serde_json::to_string_pretty(&data).or_else(|e| fail(PlumbingStatus::Internal, e.to_string()))?;
        write_out(out, c_string(text)?)
    })
}

/// Orientation checks: edge orders, walls, boundary signs and sign ledgers.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_verify_signs(
    d_max: usize,
    samples: usize,
    seed: u64,
    out: *mut *mut PlumbingReport,
) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        let report = verify_signs(d_max, samples, seed).map_err(core_error)?;
        write_out(out, boxed(PlumbingReport { report }))
    })
}

/// Stratification counts of the moduli polytopes for up to `d_max` inputs.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_verify_polytopes(
    d_max: usize,
    seed: u64,
    out: *mut *mut PlumbingReport,
) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        write_out(
            out,
            boxed(PlumbingReport {
                report: verify_polytopes(d_max, seed),
            }),
        )
    })
}

/// Sign of the boundary stratum where a `d2`-input tree is grafted onto leaf
/// `k+1` of a `d1`-input tree: writes 1 for `−1` and 0 for `+1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_stasheff_sign(d1: usize, d2: usize, k: usize, out: *mut i32) -> PlumbingStatus {
    guard(|| write_out(out, boundary_sign_stasheff(d1, d2, k).map_err(core_error)? as i32))
}

/// Release a report. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plumbing_report_free(report: *mut PlumbingReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of entries.
///
/// # Safety
/// `report` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_report_len(report: *const PlumbingReport, out: *mut usize) -> PlumbingStatus {
    guard(|| write_out(out, ref_arg(report, "report")?.report.len()))
}

/// Number of failing entries.
///
/// # Safety
/// `report` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_report_failures(report: *const PlumbingReport, out: *mut usize) -> PlumbingStatus {
    guard(|| write_out(out, ref_arg(report, "report")?.report.failures().count()))
}

/// Canonical JSON rendering. Release the string with [`plumbing_string_free`].
///
/// # Safety
/// `report` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plumbing_report_to_json(
    report: *const PlumbingReport,
    out: *mut *mut c_char,
) -> PlumbingStatus {
    guard(|| {
        out_check(out)?;
        write_out(out, c_string(ref_arg(report, "report")?.report.to_json())?)
    })
}
