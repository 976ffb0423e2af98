//! C interface to `grassmann-codes`.
//!
//! Every function returns a [`GcStatus`]. Results are written through out
//! pointers; on failure nothing is written and [`gc_last_error_message`]
//! describes the error. Handles returned through out pointers are owned by
//! the caller and released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use grassmann_codes::construct;
use grassmann_codes::sweep::{self, Instance, SweepConfig};
use grassmann_codes::textfmt;
use grassmann_codes::{Criterion, Distance, Error, Field, LinearCode};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotInClass = 5,
    /// A construction found nothing (no step, no lambda, path failed).
    NotFound = 6,
    /// The request exceeds an enumeration or exact-computation cap.
    TooLarge = 7,
    OutOfRange = 8,
    Internal = 9,
}

/// An `[n,k]` linear code.
pub struct GcCode {
    inner: LinearCode,
}

/// A sequence of codes, each adjacent to the next.
pub struct GcPath {
    vertices: Vec<LinearCode>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::Parse { .. } => GcStatus::Parse,
        Error::NotInCt { .. } => GcStatus::NotInClass,
        Error::NoLambda(_)
        | Error::NoStepFound
        | Error::NoShrinkFound
        | Error::PathFailed { .. }
        | Error::NotEnoughPoints { .. } => GcStatus::NotFound,
        Error::EnumerationTooLarge { .. }
        | Error::TooLargeExact { .. }
        | Error::FieldTooLarge { .. } => GcStatus::TooLarge,
        _ => GcStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard<F>(f: F) -> GcStatus
where
    F: FnOnce() -> Result<(), (GcStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GcStatus::Internal
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (GcStatus, String)>;
}

impl<T> IntoFfi<T> for grassmann_codes::Result<T> {
    fn ffi(self) -> Result<T, (GcStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null() -> (GcStatus, String) {
    (GcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn code_ref<'a>(p: *const GcCode) -> Result<&'a LinearCode, (GcStatus, String)> {
    p.as_ref().map(|c| &c.inner).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (GcStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn new_code(c: LinearCode) -> *mut GcCode {
    Box::into_raw(Box::new(GcCode { inner: c }))
}

fn new_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Message for the last failing call on this thread. Valid until the next
/// failing call on the same thread; empty if nothing has failed.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the text generator-matrix format ("q n k" header, k rows).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gc_code_parse(text: *const c_char, out: *mut *mut GcCode) -> GcStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (GcStatus::InvalidUtf8, "input is not UTF-8".to_string()))?;
        let c = textfmt::parse_generator_matrix(s).ffi()?;
        write_out(out, new_code(c))
    })
}

/// # Safety
/// `code` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_code_free(code: *mut GcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be a live handle; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_code_dims(
    code: *const GcCode,
    q: *mut u32,
    n: *mut usize,
    k: *mut usize,
) -> GcStatus {
    guard(|| {
        let c = code_ref(code)?;
        if q.is_null() || n.is_null() || k.is_null() {
            return Err(null());
        }
        write_out(q, c.field().q())?;
        write_out(n, c.n())?;
        write_out(k, c.k())
    })
}

/// Largest `t` with every `t` columns of a generator independent.
///
/// # Safety
/// `code` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_code_t_max(code: *const GcCode, out: *mut usize) -> GcStatus {
    guard(|| {
        let c = code_ref(code)?;
        write_out(out, c.t_max())
    })
}

/// Minimum distance of the dual code, or -1 when the dual is the zero code.
///
/// # Safety
/// `code` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_code_dual_distance(code: *const GcCode, out: *mut i64) -> GcStatus {
    guard(|| {
        let c = code_ref(code)?;
        let d = match c.dual_min_distance().ffi()? {
            Distance::Finite(d) => d as i64,
            Distance::Infinite => -1,
        };
        write_out(out, d)
    })
}

/// Whether the code has dual distance at least `t + 1`.
///
/// # Safety
/// `code` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_code_is_in_class(
    code: *const GcCode,
    t: usize,
    out: *mut bool,
) -> GcStatus {
    guard(|| {
        let c = code_ref(code)?;
        write_out(out, c.is_in_ct(t, Criterion::ColumnsIndependent).ffi()?)
    })
}

/// Canonical text form; free the string with [`gc_string_free`].
///
/// # Safety
/// `code` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_code_to_text(code: *const GcCode, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let c = code_ref(code)?;
        write_out(out, new_string(textfmt::format_generator_matrix(c)))
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The `[n,k]` Vandermonde code on the first `n` elements of GF(q).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_vandermonde_mds(
    q: u32,
    n: usize,
    k: usize,
    out: *mut *mut GcCode,
) -> GcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let f = Field::with_order(q as u64).ffi()?;
        let c = construct::vandermonde_mds(&f, n, k, None).ffi()?;
        write_out(out, new_code(c))
    })
}

/// An equivalent code meeting `code` in dimension `max(2k - n, 0)`.
/// `lambda` receives the scaling constant used (may be null).
///
/// # Safety
/// `code` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_opposite_code(
    code: *const GcCode,
    t: usize,
    out: *mut *mut GcCode,
    lambda: *mut u32,
) -> GcStatus {
    guard(|| {
        let c = code_ref(code)?;
        if out.is_null() {
            return Err(null());
        }
        let op = construct::opposite_code(c, t).ffi()?;
        if !lambda.is_null() {
            lambda.write(op.lambda.value());
        }
        write_out(out, new_code(op.code))
    })
}

/// A geodesic from `x` to `y` inside the codes of dual distance `>= t + 1`.
///
/// # Safety
/// `x` and `y` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_geodesic_path(
    x: *const GcCode,
    y: *const GcCode,
    t: usize,
    out: *mut *mut GcPath,
) -> GcStatus {
    guard(|| {
        let (x, y) = (code_ref(x)?, code_ref(y)?);
        if out.is_null() {
            return Err(null());
        }
        let p = construct::geodesic_path(x, y, t).ffi()?;
        write_out(
            out,
            Box::into_raw(Box::new(GcPath {
                vertices: p.vertices,
            })),
        )
    })
}

/// Number of codes on the path (its length plus one).
///
/// # Safety
/// `path` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_path_vertex_count(path: *const GcPath, out: *mut usize) -> GcStatus {
    guard(|| {
        let p = path.as_ref().ok_or_else(null)?;
        write_out(out, p.vertices.len())
    })
}

/// A copy of the `i`-th code on the path, to be freed with [`gc_code_free`].
///
/// # Safety
/// `path` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_path_vertex(
    path: *const GcPath,
    i: usize,
    out: *mut *mut GcCode,
) -> GcStatus {
    guard(|| {
        let p = path.as_ref().ok_or_else(null)?;
        let c = p.vertices.get(i).ok_or_else(|| {
            (
                GcStatus::OutOfRange,
                format!("index {i} past {} vertices", p.vertices.len()),
            )
        })?;
        write_out(out, new_code(c.clone()))
    })
}

/// # Safety
/// `path` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_path_free(path: *mut GcPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Verifies one instance `(q, n, k, t)` and returns its report as JSON;
/// free the string with [`gc_string_free`]. Zero caps select the defaults.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_sweep_instance_json(
    q: u32,
    n: usize,
    k: usize,
    t: usize,
    max_vertices: u64,
    max_pairs: u64,
    out: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let mut cfg = SweepConfig::single(q, n, k, t);
        if max_vertices > 0 {
            cfg.max_vertices = max_vertices;
        }
        if max_pairs > 0 {
            cfg.max_pairs = max_pairs;
        }
        cfg.workers = 1;
        let inst: Vec<Instance> = cfg.instances().ffi()?;
        let report = sweep::run_instance(inst[0], &cfg).ffi()?;
        let json =
            serde_json::to_string(&report).map_err(|e| (GcStatus::Internal, e.to_string()))?;
        write_out(out, new_string(json))
    })
}
