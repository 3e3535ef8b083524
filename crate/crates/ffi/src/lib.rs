//! C ABI over the `sixfold` library.
//!
//! Objects cross the boundary as opaque handles, values as JSON strings
//! with exact rational coordinates. Every function returns an [`SfStatus`];
//! on failure, [`sf_last_error`] describes the cause. Strings returned by the
//! library are released with [`sf_string_free`], handles with their own
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sixfold::enumeration::classify;
use sixfold::exact_geom::json::{
    lattice_from_json, lattice_to_json, polygon_from_json, polygon_to_json,
};
use sixfold::exact_geom::{parse_rat, CSPolygon, Lattice, Rat2};
use sixfold::families::{decagon_from_midpoints, family_midpoints, DecagonFamily, OctagonVariant};
use sixfold::tiling_core::{
    bolle_check, find_tiling_lattice, verify_kfold, TilingCertificate, TilingError,
};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    /// Malformed JSON, inexact number, invalid polygon or parameter.
    InvalidInput = 1,
    /// The pair does not tile with the requested multiplicity.
    VerificationFailed = 2,
    /// The library found its own results inconsistent.
    Internal = 3,
    NullPointer = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

/// Centrally symmetric convex polygon.
pub struct SfPolygon(CSPolygon);

/// Planar lattice.
pub struct SfLattice(Lattice);

/// Certificate of a k-fold lattice tiling.
pub struct SfCertificate(TilingCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg.into()));
}

fn guard(f: impl FnOnce() -> Result<(), (SfStatus, String)>) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SfStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside sixfold");
            SfStatus::Panic
        }
    }
}

fn invalid(msg: impl ToString) -> (SfStatus, String) {
    (SfStatus::InvalidInput, msg.to_string())
}

fn tiling_status(e: &TilingError) -> SfStatus {
    if e.is_internal() {
        SfStatus::Internal
    } else {
        SfStatus::VerificationFailed
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (SfStatus, String)> {
    if s.is_null() {
        return Err((SfStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, (SfStatus, String)> {
    h.as_ref()
        .ok_or((SfStatus::NullPointer, "null handle".to_string()))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), (SfStatus, String)> {
    if out.is_null() {
        return Err((SfStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (SfStatus, String)> {
    if out.is_null() {
        return Err((SfStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s)
        .map_err(|_| invalid("string contains NUL"))?
        .into_raw();
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL.
///
/// # Safety
/// `out` must be a valid pointer; the string is released with `sf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn sf_last_error(out: *mut *mut c_char) -> SfStatus {
    if out.is_null() {
        return SfStatus::NullPointer;
    }
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    *out = match msg {
        Some(m) => CString::new(m.replace('\0', " "))
            .map(CString::into_raw)
            .unwrap_or(ptr::null_mut()),
        None => ptr::null_mut(),
    };
    SfStatus::Ok
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"vertices": [["p/q", "r/s"], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_polygon_from_json(
    json: *const c_char,
    out: *mut *mut SfPolygon,
) -> SfStatus {
    guard(|| {
        let s = read_str(json)?;
        let p = polygon_from_json(s).map_err(invalid)?;
        put(out, SfPolygon(p))
    })
}

/// # Safety
/// `p` must be a live polygon handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_polygon_to_json(
    p: *const SfPolygon,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| put_string(out, polygon_to_json(&handle(p)?.0)))
}

/// Exact area as a rational string.
///
/// # Safety
/// `p` must be a live polygon handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_polygon_area(p: *const SfPolygon, out: *mut *mut c_char) -> SfStatus {
    guard(|| put_string(out, handle(p)?.0.area().to_string()))
}

/// Member of a stored family: octagon families take a rational parameter,
/// decagon families a free vertex `"x,y"` (NULL for the default).
///
/// # Safety
/// `name` must be a NUL-terminated string, `param` one or NULL, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sf_family_polygon(
    name: *const c_char,
    param: *const c_char,
    out: *mut *mut SfPolygon,
) -> SfStatus {
    guard(|| {
        let name = read_str(name)?;
        let param = if param.is_null() {
            None
        } else {
            Some(read_str(param)?)
        };
        let p = if let Some(v) = OctagonVariant::from_cli_name(name) {
            let t = parse_rat(param.ok_or_else(|| invalid("octagon families need a parameter"))?)
                .map_err(invalid)?;
            v.family().instantiate(&t).map_err(invalid)?
        } else if let Some(d) = DecagonFamily::from_cli_name(name) {
            let f = match param {
                Some(s) => Rat2::parse_pair(s).map_err(invalid)?,
                None => d.default_free_vertex(),
            };
            decagon_from_midpoints(&family_midpoints(d), &f, d.reference_anchor())
                .map_err(invalid)?
        } else {
            return Err(invalid(format!("unknown family {name:?}")));
        };
        put(out, SfPolygon(p))
    })
}

/// # Safety
/// `p` must come from this library or be NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_polygon_free(p: *mut SfPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses `{"basis": [["a","b"], ["c","d"]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_lattice_from_json(
    json: *const c_char,
    out: *mut *mut SfLattice,
) -> SfStatus {
    guard(|| {
        let l = lattice_from_json(read_str(json)?).map_err(invalid)?;
        put(out, SfLattice(l))
    })
}

/// The integer lattice.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_lattice_integer(out: *mut *mut SfLattice) -> SfStatus {
    guard(|| put(out, SfLattice(Lattice::integer())))
}

/// # Safety
/// `l` must be a live lattice handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_lattice_to_json(
    l: *const SfLattice,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| put_string(out, lattice_to_json(&handle(l)?.0)))
}

/// # Safety
/// `l` must come from this library or be NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_lattice_free(l: *mut SfLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Certifies that `p + l` is a `k`-fold tiling and cross-checks `samples`
/// generic points with the oracle. `k = 0` accepts the multiplicity the
/// edge conditions imply.
///
/// # Safety
/// `p`, `l` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_verify(
    p: *const SfPolygon,
    l: *const SfLattice,
    k: u64,
    samples: u64,
    seed: u64,
    out: *mut *mut SfCertificate,
) -> SfStatus {
    guard(|| {
        let (p, l) = (&handle(p)?.0, &handle(l)?.0);
        let samples = usize::try_from(samples).map_err(invalid)?;
        let k = if k == 0 {
            bolle_check(p, l)
                .map_err(|e| (tiling_status(&e), e.to_string()))?
                .k
        } else {
            k
        };
        let c =
            verify_kfold(p, l, k, samples, seed).map_err(|e| (tiling_status(&e), e.to_string()))?;
        put(out, SfCertificate(c))
    })
}

/// # Safety
/// `c` must be a live certificate handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_certificate_k(c: *const SfCertificate, out: *mut u64) -> SfStatus {
    guard(|| {
        let k = handle(c)?.0.k;
        if out.is_null() {
            return Err((SfStatus::NullPointer, "null output pointer".into()));
        }
        *out = k;
        Ok(())
    })
}

/// # Safety
/// `c` must be a live certificate handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_certificate_to_json(
    c: *const SfCertificate,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| put_string(out, handle(c)?.0.to_json().to_string()))
}

/// # Safety
/// `c` must come from this library or be NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_certificate_free(c: *mut SfCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// JSON array of every lattice giving a `k`-fold tiling by `p`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_find_lattices(
    p: *const SfPolygon,
    k: u64,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        let ls = find_tiling_lattice(&handle(p)?.0, k)
            .map_err(|e| (tiling_status(&e), e.to_string()))?;
        let docs: Vec<serde_json::Value> = ls
            .iter()
            .map(|l| serde_json::from_str(&lattice_to_json(l)).expect("valid JSON"))
            .collect();
        put_string(out, serde_json::Value::Array(docs).to_string())
    })
}

/// Classification record of `p` as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_classify(p: *const SfPolygon, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let c =
            classify(&handle(p)?.0).map_err(|e| (SfStatus::VerificationFailed, e.to_string()))?;
        put_string(out, serde_json::to_string(&c).expect("record serializes"))
    })
}
