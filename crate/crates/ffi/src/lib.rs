//! C ABI for catconvex.
//!
//! Instances are opaque handles created by [`cc_instance_parse`] and released
//! with [`cc_instance_free`]. Results come back as JSON strings owned by the
//! caller and released with [`cc_string_free`]. Every call returns a
//! [`CcStatus`]; on anything but `Ok` or `Negative`, [`cc_last_error`] holds
//! a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use catconvex::coloring::ColorError;
use catconvex::io::{
    caterpillar_value, coloring_value, parse_caterpillar_fragment, parse_coloring_fragment, parse_instance,
};
use catconvex::{
    list3color, recognize, verify_caterpillar_representation, verify_coloring, ColoringWitness, Instance,
    ListAssignment, Recognition, Verdict,
};
use libc::{c_char, size_t};
use serde_json::{json, Value};

/// Outcome of a call. `Ok` and `Negative` mirror the CLI's exit codes 0 and 1.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    Negative = 1,
    InputError = 2,
    InternalError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
}

/// A parsed instance.
pub struct CcInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("NULs removed")));
}

struct Fail(CcStatus, String);

/// Runs `f`, records failures and maps panics to `InternalError`.
fn guard(f: impl FnOnce() -> Result<CcStatus, Fail>) -> CcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside catconvex");
            CcStatus::InternalError
        }
    }
}

fn input(e: impl std::fmt::Display) -> Fail {
    Fail(CcStatus::InputError, e.to_string())
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(CcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn instance<'a>(p: *const CcInstance) -> Result<&'a Instance, Fail> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Fail(CcStatus::NullPointer, "instance is null".into()))
}

unsafe fn emit(out: *mut *mut c_char, v: &Value) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CcStatus::NullPointer, "output pointer is null".into()));
    }
    let s = CString::new(v.to_string()).expect("JSON has no NUL bytes");
    *out = s.into_raw();
    Ok(())
}

/// Parses an instance document. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_instance_parse(json: *const c_char, out: *mut *mut CcInstance) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(CcStatus::NullPointer, "output pointer is null".into()));
        }
        let inner = parse_instance(text(json, "json")?).map_err(input)?;
        *out = Box::into_raw(Box::new(CcInstance { inner }));
        Ok(CcStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `inst` must come from [`cc_instance_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_instance_free(inst: *mut CcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Vertex and edge counts.
///
/// # Safety
/// `inst` must be a live handle; each output pointer may be null to skip it.
#[no_mangle]
pub unsafe extern "C" fn cc_instance_counts(
    inst: *const CcInstance,
    x_count: *mut size_t,
    y_count: *mut size_t,
    edge_count: *mut size_t,
) -> CcStatus {
    guard(|| {
        let g = &instance(inst)?.graph;
        for (p, v) in [
            (x_count, g.x_count()),
            (y_count, g.y_count()),
            (edge_count, g.edge_count()),
        ] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(CcStatus::Ok)
    })
}

/// Recognition. `Ok` with the representation, or `Negative` with the reason.
///
/// # Safety
/// `inst` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_recognize(inst: *const CcInstance, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let inst = instance(inst)?;
        let r = recognize(&inst.graph).map_err(|e| Fail(CcStatus::InternalError, e.to_string()))?;
        let (status, doc) = match r {
            Recognition::Convex(t) => (
                CcStatus::Ok,
                json!({ "status": "caterpillar-convex", "caterpillar": caterpillar_value(&t) }),
            ),
            Recognition::NotConvex(reason) => (
                CcStatus::Negative,
                json!({ "status": "not-caterpillar-convex", "reason": reason.as_str() }),
            ),
        };
        emit(out, &doc)?;
        Ok(status)
    })
}

/// List 3-coloring, using the embedded caterpillar when there is one.
/// `Ok` with the colors, or `Negative` when infeasible.
///
/// # Safety
/// `inst` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_color(inst: *const CcInstance, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let inst = instance(inst)?;
        let l = inst.lists.as_ref().ok_or_else(|| input("instance has no lists"))?;
        let c = list3color(&inst.graph, l, inst.caterpillar.as_ref()).map_err(|e| match e {
            ColorError::Internal(e) => Fail(CcStatus::InternalError, e.to_string()),
            other => input(other),
        })?;
        let (status, doc) = match c {
            Some(c) => (
                CcStatus::Ok,
                json!({ "status": "colored", "colors": coloring_value(&inst.graph, &c) }),
            ),
            None => (CcStatus::Negative, json!({ "status": "infeasible" })),
        };
        emit(out, &doc)?;
        Ok(status)
    })
}

fn verdict_doc<W>(v: Verdict<W>, witness: impl FnOnce(W) -> Value) -> (CcStatus, Value) {
    match v {
        Verdict::Accept => (CcStatus::Ok, json!({ "status": "accepted" })),
        Verdict::Reject(w) => (
            CcStatus::Negative,
            json!({ "status": "rejected", "witness": witness(w) }),
        ),
    }
}

/// Checks a caterpillar fragment against the instance graph.
///
/// # Safety
/// `inst` must be a live handle, `candidate` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_representation(
    inst: *const CcInstance,
    candidate: *const c_char,
    out: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let g = &instance(inst)?.graph;
        let t = parse_caterpillar_fragment(text(candidate, "candidate")?).map_err(input)?;
        let v = verify_caterpillar_representation(g, &t).map_err(input)?;
        let (status, doc) = verdict_doc(v, |y| json!({ "y": g.y_id(y) }));
        emit(out, &doc)?;
        Ok(status)
    })
}

/// Checks a coloring fragment; missing lists count as {1,2,3}.
///
/// # Safety
/// `inst` must be a live handle, `candidate` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_coloring(
    inst: *const CcInstance,
    candidate: *const c_char,
    out: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let inst = instance(inst)?;
        let g = &inst.graph;
        let c = parse_coloring_fragment(g, text(candidate, "candidate")?).map_err(input)?;
        let full = ListAssignment::full(g);
        let v = verify_coloring(g, inst.lists.as_ref().unwrap_or(&full), &c).map_err(input)?;
        let (status, doc) = verdict_doc(v, |w| match w {
            ColoringWitness::Vertex(v) => json!({ "vertex": g.id(v) }),
            ColoringWitness::Edge(x, y) => json!({ "edge": [g.x_id(x), g.y_id(y)] }),
        });
        emit(out, &doc)?;
        Ok(status)
    })
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
