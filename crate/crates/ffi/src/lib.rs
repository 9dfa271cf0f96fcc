//! C ABI over the `listagree` library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`LaStatus`]; the message of the most recent failure on the calling
//! thread is available from [`la_last_error`]. Strings returned through
//! `char **` out-parameters are released with [`la_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use listagree::assignment::{random_agreeing, LAssignment};
use listagree::generators::complete_complex;
use listagree::harness::{render, run_experiment, ExperimentConfig, Format, Report};
use listagree::io::{ComplexJson, LAssignmentJson};
use listagree::list_agreement::exhaustive;
use listagree::rational::to_string;
use listagree::representation::RepresentationComplex;
use listagree::sampling::trial_rng;
use listagree::{Error, SimplicialComplex};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, bad parameters, or faces outside the complex.
    InvalidInput = 3,
    /// An exhaustive search exceeded its size guard.
    SearchTooLarge = 4,
    /// A mathematical precondition does not hold for the input.
    Precondition = 5,
    Io = 6,
    Panic = 7,
}

/// A weighted pure simplicial complex.
pub struct LaComplex(Arc<SimplicialComplex>);

/// A list of local assignments on the k-faces of a complex.
pub struct LaAssignment(LAssignment);

/// The result of an experiment run.
pub struct LaReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LaStatus {
    match e {
        Error::SearchSpaceTooLarge(_) => LaStatus::SearchTooLarge,
        Error::Io(_) => LaStatus::Io,
        Error::NotACocycle
        | Error::NotACoboundary
        | Error::NotGenuine
        | Error::NonpositiveGamma
        | Error::PreconditionUnsatisfiable(_)
        | Error::LocalWitnessFailed(_)
        | Error::NotACycle(_) => LaStatus::Precondition,
        _ => LaStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (LaStatus, String)>) -> LaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LaStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            LaStatus::Panic
        }
    }
}

fn lib<T>(r: listagree::Result<T>) -> Result<T, (LaStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (LaStatus, String)> {
    if s.is_null() {
        return Err((LaStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (LaStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (LaStatus, String)> {
    p.as_ref().ok_or((LaStatus::NullPointer, "null handle".into()))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), (LaStatus, String)> {
    if out.is_null() {
        return Err((LaStatus::NullPointer, "null out-parameter".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), (LaStatus, String)> {
    if out.is_null() {
        return Err((LaStatus::NullPointer, "null out-parameter".into()));
    }
    *out = CString::new(s).map_err(|_| (LaStatus::InvalidInput, "interior NUL".into()))?.into_raw();
    Ok(())
}

fn parse<T: for<'de> serde::Deserialize<'de>>(s: &str) -> Result<T, (LaStatus, String)> {
    serde_json::from_str(s).map_err(|e| (LaStatus::InvalidInput, e.to_string()))
}

/// Message of the most recent failure on this thread. Valid until the next
/// call into this library from the same thread.
#[no_mangle]
pub extern "C" fn la_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn la_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a complex from `{"d": int, "maximal_faces": [[int, ...], ...]}`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_complex_from_json(json: *const c_char, out: *mut *mut LaComplex) -> LaStatus {
    guard(|| {
        let c: ComplexJson = parse(text(json)?)?;
        store(out, LaComplex(Arc::new(lib(c.to_complex())?)))
    })
}

/// The complete `d`-dimensional complex on `n` vertices.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_complex_complete(n: usize, d: usize, out: *mut *mut LaComplex) -> LaStatus {
    guard(|| store(out, LaComplex(Arc::new(lib(complete_complex(n, d))?))))
}

/// Number of `i`-faces, zero when `i` exceeds the dimension.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_complex_face_count(x: *const LaComplex, i: usize, out: *mut usize) -> LaStatus {
    guard(|| {
        let x = handle(x)?;
        let out = out.as_mut().ok_or((LaStatus::NullPointer, "null out-parameter".into()))?;
        *out = if i > x.0.dim() { 0 } else { x.0.face_count(i as i64) };
        Ok(())
    })
}

/// # Safety
/// `x` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn la_complex_free(x: *mut LaComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Parses an l-assignment `{"k", "l", "faces": [{"face", "lists"}]}` on `x`.
///
/// # Safety
/// `x` is a live handle; `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_assignment_from_json(
    x: *const LaComplex,
    json: *const c_char,
    out: *mut *mut LaAssignment,
) -> LaStatus {
    guard(|| {
        let x = handle(x)?;
        let a: LAssignmentJson = parse(text(json)?)?;
        store(out, LaAssignment(lib(a.to_assignment(x.0.clone()))?))
    })
}

/// A random agreeing l-assignment on the k-faces of `x`, 2-locally-differing
/// when `differing` is set. Deterministic in `seed`.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_assignment_random_agreeing(
    x: *const LaComplex,
    k: usize,
    l: usize,
    differing: bool,
    seed: u64,
    out: *mut *mut LaAssignment,
) -> LaStatus {
    guard(|| {
        let x = handle(x)?;
        let mut rng = trial_rng(seed, 0);
        store(out, LaAssignment(lib(random_agreeing(x.0.clone(), k, l, differing, &mut rng))?))
    })
}

/// Serializes an l-assignment to JSON.
///
/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_assignment_to_json(a: *const LaAssignment, out: *mut *mut c_char) -> LaStatus {
    guard(|| {
        let a = handle(a)?;
        let s = serde_json::to_string(&LAssignmentJson::from_assignment(&a.0)).map_err(|e| (LaStatus::Io, e.to_string()))?;
        store_string(out, s)
    })
}

/// Exact rejection probability of the list-agreement tester, as `"n/d"`.
///
/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_list_agreement_rejection(a: *const LaAssignment, out: *mut *mut c_char) -> LaStatus {
    guard(|| {
        let a = handle(a)?;
        let rep = lib(RepresentationComplex::build(a.0.base.clone(), a.0.k))?;
        let o = lib(exhaustive(&rep, &a.0))?;
        store_string(out, to_string(&o.rejection))
    })
}

/// Exact distance to the agreeing l-assignments, as `"n/d"`.
///
/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_dist_to_agreeing(a: *const LaAssignment, out: *mut *mut c_char) -> LaStatus {
    guard(|| {
        let a = handle(a)?;
        let w = lib(a.0.dist_to_agreeing_oracle())?;
        store_string(out, to_string(&w.distance))
    })
}

/// # Safety
/// `a` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn la_assignment_free(a: *mut LaAssignment) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Runs an experiment from its JSON configuration.
///
/// # Safety
/// `config` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_run_experiment(config: *const c_char, out: *mut *mut LaReport) -> LaStatus {
    guard(|| {
        let c: ExperimentConfig = parse(text(config)?)?;
        store(out, LaReport(lib(run_experiment(&c))?))
    })
}

/// Whether no check in the report failed.
///
/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_report_passed(r: *const LaReport, out: *mut bool) -> LaStatus {
    guard(|| {
        let r = handle(r)?;
        let out = out.as_mut().ok_or((LaStatus::NullPointer, "null out-parameter".into()))?;
        *out = r.0.passed();
        Ok(())
    })
}

/// Renders a report; `format` is `"json"` or `"csv"`.
///
/// # Safety
/// `r` is a live handle; `format` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn la_report_render(r: *const LaReport, format: *const c_char, out: *mut *mut c_char) -> LaStatus {
    guard(|| {
        let r = handle(r)?;
        let f: Format = lib(text(format)?.parse())?;
        let bytes = lib(render(&r.0, f))?;
        store_string(out, String::from_utf8(bytes).map_err(|e| (LaStatus::Io, e.to_string()))?)
    })
}

/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn la_report_free(r: *mut LaReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

