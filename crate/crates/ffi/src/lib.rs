//! C ABI over the symbolic core: opaque element handles, status codes, and
//! a thread-local message describing the most recent failure.
//!
//! Every function is null-safe: passing a null handle or output pointer
//! returns `TqStatus::NullArgument` instead of crashing. Handles returned
//! through `out` parameters are owned by the caller and released with
//! `tq_element_free`; strings with `tq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use toeplitzq::numerics::truncate;
use toeplitzq::tensor::weak_hopf_check;
use toeplitzq::{parse, Element, Error, Monomial};

/// Opaque handle to an element of the dense monomial span.
pub struct TqElement(Element);

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TqStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input text failed to parse; the message carries the byte offset.
    Syntax = 2,
    /// The request was structurally invalid (bad domain, tensor degree...).
    Domain = 3,
    /// A diagonal-only operation was applied to a non-diagonal element.
    NotDiagonal = 4,
    /// Power iteration exhausted its budget before reaching the tolerance.
    NoConvergence = 5,
    /// The input text was not valid UTF-8.
    InvalidUtf8 = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(sanitized).unwrap());
}

fn fail(e: Error) -> TqStatus {
    let status = match e {
        Error::Syntax { .. } => TqStatus::Syntax,
        Error::NotDiagonal { .. } => TqStatus::NotDiagonal,
        Error::NoConvergence { .. } => TqStatus::NoConvergence,
        _ => TqStatus::Domain,
    };
    set_error(&e.to_string());
    status
}

fn null_argument(what: &str) -> TqStatus {
    set_error(&format!("null {what}"));
    TqStatus::NullArgument
}

/// Reads an input handle; the caller has already null-checked nothing.
unsafe fn input<'a>(p: *const TqElement) -> Option<&'a Element> {
    p.as_ref().map(|h| &h.0)
}

unsafe fn emit(out: *mut *mut TqElement, e: Element) -> TqStatus {
    *out = Box::into_raw(Box::new(TqElement(e)));
    TqStatus::Ok
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses expression text (`"2*T(0,1) - T(1,1)"`) into a fresh handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_parse(
    text: *const c_char,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    if text.is_null() {
        return null_argument("input text");
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        set_error("input text is not valid UTF-8");
        return TqStatus::InvalidUtf8;
    };
    match parse::parse_element(text) {
        Ok(e) => emit(out, e),
        Err(e) => fail(e),
    }
}

/// Builds the monomial `T(n,m)`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_from_monomial(
    n: u64,
    m: u64,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    emit(out, Element::monomial(Monomial::new(n, m)))
}

/// Deep-copies a handle.
///
/// # Safety
/// `a` must be a live handle from this library; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_clone(
    a: *const TqElement,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => emit(out, e.clone()),
        None => null_argument("element"),
    }
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `a` must be null or a live handle from this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tq_element_free(a: *mut TqElement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Sum of two elements.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for a pointer
/// write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_add(
    a: *const TqElement,
    b: *const TqElement,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    let (Some(a), Some(b)) = (input(a), input(b)) else {
        return null_argument("element");
    };
    emit(out, a + b)
}

/// Product of two elements.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for a pointer
/// write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_mul(
    a: *const TqElement,
    b: *const TqElement,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    let (Some(a), Some(b)) = (input(a), input(b)) else {
        return null_argument("element");
    };
    emit(out, a * b)
}

/// Adjoint: coefficients conjugated, monomials swapped.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_adjoint(
    a: *const TqElement,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => emit(out, e.adjoint()),
        None => null_argument("element"),
    }
}

/// Antipode: monomials swapped, coefficients untouched.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_antipode(
    a: *const TqElement,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => emit(out, e.antipode()),
        None => null_argument("element"),
    }
}

/// Component of one grading index: the terms with `m - n = k`.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_graded(
    a: *const TqElement,
    k: i64,
    out: *mut *mut TqElement,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => emit(out, e.graded_component(k)),
        None => null_argument("element"),
    }
}

/// Whether the element lies in the ideal of compact operators.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a bool write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_is_compact(a: *const TqElement, out: *mut bool) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => {
            *out = e.is_compact();
            TqStatus::Ok
        }
        None => null_argument("element"),
    }
}

/// Structural equality of canonical forms.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for a bool write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_equals(
    a: *const TqElement,
    b: *const TqElement,
    out: *mut bool,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    let (Some(a), Some(b)) = (input(a), input(b)) else {
        return null_argument("element");
    };
    *out = a == b;
    TqStatus::Ok
}

/// Number of monomials with nonzero coefficient.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a size_t write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_term_count(a: *const TqElement, out: *mut usize) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => {
            *out = e.num_terms();
            TqStatus::Ok
        }
        None => null_argument("element"),
    }
}

/// Canonical text form, parseable back by `tq_element_parse`. The returned
/// string is released with `tq_string_free`.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_to_string(
    a: *const TqElement,
    out: *mut *mut c_char,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => {
            *out = CString::new(e.to_string()).unwrap().into_raw();
            TqStatus::Ok
        }
        None => null_argument("element"),
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact sup-norm of a diagonal element. Fails with `NotDiagonal` when any
/// term lies off the diagonal.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a double write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_norm_diagonal(a: *const TqElement, out: *mut f64) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    let Some(e) = input(a) else {
        return null_argument("element");
    };
    match e.norm_t0() {
        Ok(n) => {
            *out = n.value;
            TqStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Largest singular value of the `trunc`-sized compression, by power
/// iteration converged to relative tolerance `tol`. The result is a
/// certified lower bound for the compression's norm.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a double write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_op_norm(
    a: *const TqElement,
    trunc: usize,
    tol: f64,
    out: *mut f64,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    let Some(e) = input(a) else {
        return null_argument("element");
    };
    match truncate(e, trunc).op_norm(tol) {
        Ok(v) => {
            *out = v;
            TqStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Whether both weak antipode identities hold on the element.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for a bool write.
#[no_mangle]
pub unsafe extern "C" fn tq_element_weak_hopf_check(
    a: *const TqElement,
    out: *mut bool,
) -> TqStatus {
    if out.is_null() {
        return null_argument("output pointer");
    }
    match input(a) {
        Some(e) => {
            *out = weak_hopf_check(e);
            TqStatus::Ok
        }
        None => null_argument("element"),
    }
}
