//! C ABI over the nestohedra library.
//!
//! Complexes cross the boundary as opaque [`NhComplex`] handles; everything
//! else travels as UTF-8 JSON. Every function returns an [`NhStatus`], and
//! on failure [`nh_last_error_message`] describes what went wrong on the
//! calling thread. Strings returned through out-pointers are owned by the
//! caller and must be released with [`nh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nestohedra::building::{nested_complex, AtomicBuildingSet};
use nestohedra::error::{Error, ErrorKind};
use nestohedra::fan::{faithfully_realizes, fan_export};
use nestohedra::flat::et;
use nestohedra::json::{complex_from_json, complex_to_json, flat_from_json, hypergraph_from_json};
use nestohedra::pipeline::{run, PipelineSpec};
use nestohedra::Complex;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    CapExceeded = 5,
    Mismatch = 6,
    Panic = 7,
}

/// Opaque simplicial complex.
pub struct NhComplex {
    inner: Complex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(NhStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match (&e, e.kind()) {
            (Error::Json(_) | Error::Input(_) | Error::MalformedSum { .. }, _) => {
                NhStatus::ParseError
            }
            (_, ErrorKind::Validation) => NhStatus::ValidationError,
            (_, ErrorKind::Cap) => NhStatus::CapExceeded,
            (_, ErrorKind::Mismatch) => NhStatus::Mismatch,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            NhStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NhStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(NhStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(NhStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_json(s: *const c_char) -> Result<serde_json::Value, Failure> {
    Ok(serde_json::from_str(read_str(s)?).map_err(Error::from)?)
}

unsafe fn complex<'a>(c: *const NhComplex) -> Result<&'a Complex, Failure> {
    c.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|e| Failure(NhStatus::InvalidUtf8, e.to_string()))?;
    put(out, c.into_raw())
}

unsafe fn put_complex(out: *mut *mut NhComplex, c: Complex) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(NhComplex { inner: c })))
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn nh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `{"atoms": [...], "bases": [...]}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_from_json(
    json: *const c_char,
    out: *mut *mut NhComplex,
) -> NhStatus {
    guard(|| {
        let c = complex_from_json(&read_json(json)?)?;
        put_complex(out, c)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_free(c: *mut NhComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_num_bases(c: *const NhComplex, out: *mut usize) -> NhStatus {
    guard(|| put(out, complex(c)?.num_bases()))
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_num_vertices(c: *const NhComplex, out: *mut usize) -> NhStatus {
    guard(|| put(out, complex(c)?.vertices().len()))
}

/// Writes up to `cap` entries of the f-vector into `buf` and its full
/// length into `len`. Pass `cap = 0` to query the length.
///
/// # Safety
/// `buf` must hold `cap` entries (it may be null when `cap` is 0) and `len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_fvector(
    c: *const NhComplex,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> NhStatus {
    guard(|| {
        let f = complex(c)?.f_vector();
        if cap > 0 {
            if buf.is_null() {
                return Err(null());
            }
            ptr::copy_nonoverlapping(f.as_ptr(), buf, f.len().min(cap));
        }
        put(len, f.len())
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_to_json(
    c: *const NhComplex,
    out: *mut *mut c_char,
) -> NhStatus {
    guard(|| put_string(out, complex_to_json(complex(c)?).to_string()))
}

/// `Et(c, d)` for a flat building set given as a JSON array of sums.
///
/// # Safety
/// `c` must be a live handle, `flat_json` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_et(
    c: *const NhComplex,
    flat_json: *const c_char,
    out: *mut *mut NhComplex,
) -> NhStatus {
    guard(|| {
        let c = complex(c)?;
        let d = flat_from_json(c.ground(), &read_json(flat_json)?)?;
        put_complex(out, et(c, &d)?)
    })
}

/// Nested complex of an atomic building set given as a JSON array of
/// label arrays.
///
/// # Safety
/// As for [`nh_complex_et`].
#[no_mangle]
pub unsafe extern "C" fn nh_complex_nested(
    c: *const NhComplex,
    building_set_json: *const c_char,
    out: *mut *mut NhComplex,
) -> NhStatus {
    guard(|| {
        let c = complex(c)?;
        let h = hypergraph_from_json(c.ground(), &read_json(building_set_json)?)?;
        let b = AtomicBuildingSet::new(h, c)?;
        put_complex(out, nested_complex(c, &b)?)
    })
}

/// Writes the faithfulness verdict. A witness is available as the last
/// error message when the verdict is false.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nh_complex_is_faithful(c: *const NhComplex, out: *mut bool) -> NhStatus {
    let mut witness = String::new();
    let status = guard(|| {
        let report = faithfully_realizes(complex(c)?);
        if !report.verdict {
            witness = report.describe();
        }
        put(out, report.verdict)
    });
    if !witness.is_empty() {
        set_error(&witness);
    }
    status
}

/// Rays and cones as JSON; fails with a validation error when the complex
/// is not a fan.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nh_fan_export(c: *const NhComplex, out: *mut *mut c_char) -> NhStatus {
    guard(|| put_string(out, fan_export(complex(c)?)?.to_json().to_string()))
}

/// Runs a pipeline spec and writes the report JSON. When the paths of a
/// `"path": "all"` run disagree the report is still written and the status
/// is `Mismatch`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nh_run_pipeline(
    spec_json: *const c_char,
    out: *mut *mut c_char,
) -> NhStatus {
    guard(|| {
        let spec = PipelineSpec::from_json(&read_json(spec_json)?)?;
        let report = run(&spec)?;
        put_string(out, report.to_json().to_string())?;
        if report.paths_agree() {
            Ok(())
        } else {
            Err(Failure(NhStatus::Mismatch, "paths disagree".into()))
        }
    })
}
