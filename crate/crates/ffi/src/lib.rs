//! C ABI for crext-core.
//!
//! Every object crosses the boundary as an opaque handle owned by the caller
//! and released with the matching `*_free`. Fallible calls return a
//! [`CrextStatus`]; the message of the most recent failure on the calling
//! thread is available from [`crext_last_error`]. Strings returned through
//! out-parameters are released with [`crext_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crext_core::algebra::{Bimodule, BimoduleTables, FiniteRing};
use crext_core::catring::{check_ring_coherence, SkeletalCatRing};
use crext_core::cochain::{compute_h3, is_cocycle, Cochain3, Convention, Method};
use crext_core::correspondence::{canonical_choices, extract, pi0_pi1, realize};
use crext_core::{io, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrextStatus {
    Ok = 0,
    Structural = 1,
    Validation = 2,
    Precondition = 3,
    Capacity = 4,
    Overflow = 5,
    ModelInconsistency = 6,
    Parse = 7,
    Io = 8,
    NullArgument = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrextMethod {
    Snf = 0,
    Enumeration = 1,
    Both = 2,
}

pub struct CrextRing {
    ring: FiniteRing,
}

/// A bimodule together with the ring it lives over.
pub struct CrextBimodule {
    ring: FiniteRing,
    bimod: Bimodule,
}

pub struct CrextCochain3 {
    c: Cochain3,
}

pub struct CrextModel {
    model: SkeletalCatRing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CrextStatus {
    match e {
        Error::Structural(_) => CrextStatus::Structural,
        Error::Validation(_) => CrextStatus::Validation,
        Error::Precondition(_) => CrextStatus::Precondition,
        Error::Capacity { .. } => CrextStatus::Capacity,
        Error::Overflow(_) => CrextStatus::Overflow,
        Error::ModelInconsistency(_) => CrextStatus::ModelInconsistency,
        Error::Parse(_) => CrextStatus::Parse,
        Error::Io(_) => CrextStatus::Io,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CrextStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CrextStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null argument: {what}"));
            CrextStatus::NullArgument
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            CrextStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn json_arg(p: *const c_char, what: &'static str) -> Result<serde_json::Value, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Error::Parse(format!("{what}: invalid UTF-8: {e}")))?;
    Ok(serde_json::from_str(s).map_err(|e| Error::Parse(format!("{what}: {e}")))?)
}

unsafe fn put<T>(out: *mut *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    let s =
        CString::new(io::to_canonical_string(v)).map_err(|e| Error::Structural(e.to_string()))?;
    *out = s.into_raw();
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn crext_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn crext_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn crext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a ring document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crext_ring_from_json(
    json: *const c_char,
    out: *mut *mut CrextRing,
) -> CrextStatus {
    guard(|| {
        let ring = io::ring_from_json(&json_arg(json, "json")?)?;
        put(out, CrextRing { ring }, "out")
    })
}

/// # Safety
/// `ring` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crext_ring_free(ring: *mut CrextRing) {
    free(ring)
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn crext_ring_size(ring: *const CrextRing) -> usize {
    ring.as_ref().map_or(0, |r| r.ring.size())
}

/// # Safety
/// Pointers must be valid; `out` receives a string for [`crext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn crext_ring_to_json(
    ring: *const CrextRing,
    out: *mut *mut c_char,
) -> CrextStatus {
    guard(|| put_string(out, &io::ring_to_json(&deref(ring, "ring")?.ring)))
}

/// Parses and validates a bimodule document over `ring`. The handle keeps its
/// own copy of the ring.
///
/// # Safety
/// Pointers must be valid and `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn crext_bimodule_from_json(
    ring: *const CrextRing,
    json: *const c_char,
    out: *mut *mut CrextBimodule,
) -> CrextStatus {
    guard(|| {
        let ring = deref(ring, "ring")?.ring.clone();
        let bimod = io::bimodule_from_json(&json_arg(json, "json")?, &ring)?;
        put(out, CrextBimodule { ring, bimod }, "out")
    })
}

/// # Safety
/// `b` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crext_bimodule_free(b: *mut CrextBimodule) {
    free(b)
}

/// Order of the underlying group, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn crext_bimodule_order(b: *const CrextBimodule) -> u64 {
    b.as_ref().map_or(0, |b| b.bimod.group().order())
}

/// # Safety
/// Pointers must be valid; `out` receives a string for [`crext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn crext_bimodule_to_json(
    b: *const CrextBimodule,
    out: *mut *mut c_char,
) -> CrextStatus {
    guard(|| {
        let b = deref(b, "bimodule")?;
        put_string(out, &io::bimodule_to_json(&b.bimod, &b.ring))
    })
}

/// Parses a normalized 3-cochain with values in `b`.
///
/// # Safety
/// Pointers must be valid and `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn crext_cochain3_from_json(
    b: *const CrextBimodule,
    json: *const c_char,
    out: *mut *mut CrextCochain3,
) -> CrextStatus {
    guard(|| {
        let b = deref(b, "bimodule")?;
        let c = io::cochain3_from_json(&json_arg(json, "json")?, &b.ring, b.bimod.group())?;
        put(out, CrextCochain3 { c }, "out")
    })
}

/// # Safety
/// `c` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crext_cochain3_free(c: *mut CrextCochain3) {
    free(c)
}

/// # Safety
/// Pointers must be valid; `out` receives a string for [`crext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn crext_cochain3_to_json(
    b: *const CrextBimodule,
    c: *const CrextCochain3,
    out: *mut *mut c_char,
) -> CrextStatus {
    guard(|| {
        let b = deref(b, "bimodule")?;
        let c = deref(c, "cochain")?;
        if c.c.ring_size() != b.ring.size() {
            return Err(
                Error::Structural("cochain and bimodule have different rings".into()).into(),
            );
        }
        put_string(out, &io::cochain3_to_json(&c.c, &b.ring, b.bimod.group()))
    })
}

/// Writes whether all eight cocycle equations hold.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crext_is_cocycle(
    b: *const CrextBimodule,
    c: *const CrextCochain3,
    out: *mut bool,
) -> CrextStatus {
    guard(|| {
        let b = deref(b, "bimodule")?;
        let c = deref(c, "cochain")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let t = BimoduleTables::new(&b.bimod)?;
        *out = is_cocycle(&c.c, &b.ring, &t, Convention::Coherent);
        Ok(())
    })
}

/// Invariant factors of H³. On entry `*len` is the capacity of `factors`; on
/// return it holds the number of factors. A short buffer gives
/// `CREXT_STATUS_CAPACITY` with `*len` set to the required size. `factors`
/// may be null when the capacity is 0.
///
/// # Safety
/// `factors` must have room for `*len` values.
#[no_mangle]
pub unsafe extern "C" fn crext_h3(
    b: *const CrextBimodule,
    method: CrextMethod,
    factors: *mut u64,
    len: *mut usize,
) -> CrextStatus {
    guard(|| {
        let b = deref(b, "bimodule")?;
        if len.is_null() {
            return Err(Fail::Null("len"));
        }
        let method = match method {
            CrextMethod::Snf => Method::Snf,
            CrextMethod::Enumeration => Method::Enumeration,
            CrextMethod::Both => Method::Both,
        };
        let res = compute_h3(&b.ring, &b.bimod, method)?;
        let cap = *len;
        *len = res.h3.len();
        if cap < res.h3.len() {
            return Err(Error::Capacity {
                what: "H3 factor buffer".into(),
                bound: cap as u64,
            }
            .into());
        }
        if !res.h3.is_empty() {
            if factors.is_null() {
                return Err(Fail::Null("factors"));
            }
            ptr::copy_nonoverlapping(res.h3.as_ptr(), factors, res.h3.len());
        }
        Ok(())
    })
}

/// Builds the skeletal categorical ring of a normalized 3-cocycle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crext_realize(
    b: *const CrextBimodule,
    c: *const CrextCochain3,
    out: *mut *mut CrextModel,
) -> CrextStatus {
    guard(|| {
        let b = deref(b, "bimodule")?;
        let model = realize(&deref(c, "cochain")?.c, &b.ring, &b.bimod)?;
        put(out, CrextModel { model }, "out")
    })
}

/// # Safety
/// Pointers must be valid and `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn crext_model_from_json(
    json: *const c_char,
    out: *mut *mut CrextModel,
) -> CrextStatus {
    guard(|| {
        let model = io::model_from_json(&json_arg(json, "json")?)?;
        put(out, CrextModel { model }, "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crext_model_free(m: *mut CrextModel) {
    free(m)
}

/// # Safety
/// Pointers must be valid; `out` receives a string for [`crext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn crext_model_to_json(
    m: *const CrextModel,
    out: *mut *mut c_char,
) -> CrextStatus {
    guard(|| put_string(out, &io::model_to_json(&deref(m, "model")?.model)?))
}

/// Writes the number of failed coherence checks; 0 means the model is coherent.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crext_model_check_coherence(
    m: *const CrextModel,
    failures: *mut usize,
) -> CrextStatus {
    guard(|| {
        let m = deref(m, "model")?;
        if failures.is_null() {
            return Err(Fail::Null("failures"));
        }
        *failures = check_ring_coherence(&m.model).len();
        Ok(())
    })
}

/// π₀ and π₁ of a model as a bimodule handle (which carries π₀ as its ring).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crext_model_pi(
    m: *const CrextModel,
    out: *mut *mut CrextBimodule,
) -> CrextStatus {
    guard(|| {
        let (ring, bimod) = pi0_pi1(&deref(m, "model")?.model)?;
        put(out, CrextBimodule { ring, bimod }, "out")
    })
}

/// Extracts a 3-cocycle with the canonical representative choices.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crext_extract(
    m: *const CrextModel,
    out: *mut *mut CrextCochain3,
) -> CrextStatus {
    guard(|| {
        let k = &deref(m, "model")?.model;
        let c = extract(k, &canonical_choices(k)?)?;
        put(out, CrextCochain3 { c }, "out")
    })
}
