//! C ABI over the `leibniz` library.
//!
//! Algebras live behind an opaque [`LeibnizAlgebra`] handle. Every function
//! returns a [`LeibnizStatus`]; on failure a message is available from
//! [`leibniz_last_error`] until the next call on the same thread. Strings
//! handed out by the library must be released with [`leibniz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use leibniz::algebra::AlgebraFile;
use leibniz::catalog::{self, deformation_graph, verify_catalog_with, VerifyOptions};
use leibniz::cohomology::cohomology;
use leibniz::forms::is_metric;
use leibniz::{Algebra, Side};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeibnizStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownId = 4,
    InvalidArgument = 5,
    Compute = 6,
    Panic = 7,
}

/// Which identity to test.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeibnizSide {
    Right = 0,
    Left = 1,
    Symmetric = 2,
    Lie = 3,
}

impl From<LeibnizSide> for Side {
    fn from(s: LeibnizSide) -> Self {
        match s {
            LeibnizSide::Right => Side::Right,
            LeibnizSide::Left => Side::Left,
            LeibnizSide::Symmetric => Side::Symmetric,
            LeibnizSide::Lie => Side::Lie,
        }
    }
}

/// Opaque algebra handle.
pub struct LeibnizAlgebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(LeibnizStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LeibnizStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LeibnizStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LeibnizStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(LeibnizStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(LeibnizStatus::InvalidUtf8, e.to_string()))
}

unsafe fn algebra<'a>(p: *const LeibnizAlgebra) -> Result<&'a Algebra, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn compute(e: impl ToString) -> Failure {
    Failure(LeibnizStatus::Compute, e.to_string())
}

/// Message describing the last failure on this thread, or null.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn leibniz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an algebra file (`{"name","dim","brackets"}`, 1-based indices).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_algebra_from_json(json: *const c_char, out: *mut *mut LeibnizAlgebra) -> LeibnizStatus {
    guard(|| {
        let src = text(json)?;
        let de = &mut serde_json::Deserializer::from_str(src);
        let file: AlgebraFile = serde_path_to_error::deserialize(de)
            .map_err(|e| Failure(LeibnizStatus::Parse, e.to_string()))?;
        let inner = file.to_algebra().map_err(|e| Failure(LeibnizStatus::Parse, e.to_string()))?;
        write(out, Box::into_raw(Box::new(LeibnizAlgebra { inner })))
    })
}

/// Copies a bundled catalog algebra.
///
/// # Safety
/// `id` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_algebra_from_catalog(id: *const c_char, out: *mut *mut LeibnizAlgebra) -> LeibnizStatus {
    guard(|| {
        let entry = catalog::load(text(id)?).map_err(|e| Failure(LeibnizStatus::UnknownId, e.to_string()))?;
        write(out, Box::into_raw(Box::new(LeibnizAlgebra { inner: entry.algebra.clone() })))
    })
}

/// Releases a handle. Null is accepted.
///
/// # Safety
/// `a` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn leibniz_algebra_free(a: *mut LeibnizAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_algebra_dim(a: *const LeibnizAlgebra, out: *mut usize) -> LeibnizStatus {
    guard(|| write(out, algebra(a)?.dim()))
}

/// The algebra as JSON; free the result with [`leibniz_string_free`].
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_algebra_to_json(a: *const LeibnizAlgebra, out: *mut *mut c_char) -> LeibnizStatus {
    guard(|| {
        let file = AlgebraFile::from(algebra(a)?);
        write(out, owned_string(serde_json::to_string(&file).map_err(compute)?))
    })
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_check_identity(
    a: *const LeibnizAlgebra,
    side: LeibnizSide,
    out: *mut bool,
) -> LeibnizStatus {
    guard(|| write(out, algebra(a)?.check_identity(side.into()).holds))
}

/// Whether a nondegenerate symmetric invariant form exists.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_is_metric(a: *const LeibnizAlgebra, out: *mut bool) -> LeibnizStatus {
    guard(|| write(out, is_metric(algebra(a)?).metric))
}

/// Dimension of `HL^degree` with adjoint coefficients.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_cohomology_dim(
    a: *const LeibnizAlgebra,
    degree: usize,
    out: *mut usize,
) -> LeibnizStatus {
    guard(|| {
        let a = algebra(a)?;
        if degree > 3 {
            return Err(Failure(LeibnizStatus::InvalidArgument, format!("degree {degree} is not supported")));
        }
        write(out, cohomology(a, degree).map_err(compute)?.dim_hl)
    })
}

/// Graphviz source of the deformation graph in dimension 4 or 5.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_graph_dot(dim: usize, unicode: bool, out: *mut *mut c_char) -> LeibnizStatus {
    guard(|| {
        let g = deformation_graph(dim).map_err(|e| match e {
            catalog::CatalogError::UnsupportedDim(_) => Failure(LeibnizStatus::InvalidArgument, e.to_string()),
            other => compute(other),
        })?;
        write(out, owned_string(g.to_dot(unicode)))
    })
}

/// Replays the bundled claims and counts discrepancies.
///
/// # Safety
/// `discrepancies` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn leibniz_verify_catalog(scans: bool, discrepancies: *mut usize) -> LeibnizStatus {
    guard(|| {
        let v = verify_catalog_with(&VerifyOptions { scans, ..VerifyOptions::default() });
        write(discrepancies, v.iter().filter(|v| !v.is_confirmed()).count())
    })
}

/// Releases a string returned by the library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn leibniz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
