//! C ABI over `functcat`.
//!
//! Instances are opaque handles created by `fc_instance_parse` or
//! `fc_instance_fixture` and released with `fc_instance_free`. Every call
//! returns an `FcStatus`; on failure `fc_last_error` holds a message for the
//! calling thread.

use functcat::error::Error;
use functcat::homology::{battery_seed, ext, global_dimension, idempotency_level, GlobalDimension, TraceContext};
use functcat::instance::{fixture, load_instance, Instance, InstanceError};
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    SemanticError = 4,
    UnknownName = 5,
    CriteriaMismatch = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A parsed and built instance.
pub struct FcInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(s).expect("no interior nul")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: FcStatus, msg: impl Into<String>) -> FcStatus {
    set_error(msg);
    status
}

fn from_instance_error(e: InstanceError) -> FcStatus {
    let status = match e {
        InstanceError::Parse(_) => FcStatus::ParseError,
        InstanceError::Semantic { .. } => FcStatus::SemanticError,
    };
    fail(status, e.to_string())
}

fn from_error(e: Error) -> FcStatus {
    let status = match e {
        Error::UnknownName(_) | Error::UnknownVertex(_) | Error::UnknownArrow(_) => FcStatus::UnknownName,
        Error::CriteriaMismatch(_) => FcStatus::CriteriaMismatch,
        _ => FcStatus::SemanticError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> FcStatus) -> FcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(FcStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FcStatus> {
    if p.is_null() {
        return Err(fail(FcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FcStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn handle<'a>(p: *const FcInstance) -> Result<&'a Instance, FcStatus> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| fail(FcStatus::NullPointer, "null instance handle"))
}

fn emit(out: *mut *mut FcInstance, inst: Instance) -> FcStatus {
    let b = Box::new(FcInstance { inner: inst });
    unsafe { *out = Box::into_raw(b) };
    FcStatus::Ok
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Parses instance text. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_instance_parse(text: *const c_char, out: *mut *mut FcInstance) -> FcStatus {
    guard(|| {
        if out.is_null() {
            return fail(FcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = try_ffi!(read_str(text));
        match load_instance(text) {
            Ok(inst) => emit(out, inst),
            Err(e) => from_instance_error(e),
        }
    })
}

/// Loads a shipped fixture by name (`"z6"` or `"z6.cat"`).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_instance_fixture(name: *const c_char, out: *mut *mut FcInstance) -> FcStatus {
    guard(|| {
        if out.is_null() {
            return fail(FcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = try_ffi!(read_str(name));
        let Some(text) = fixture(name) else {
            return fail(FcStatus::UnknownName, format!("no fixture `{name}`"));
        };
        match load_instance(text) {
            Ok(inst) => emit(out, inst),
            Err(e) => from_instance_error(e),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fc_instance_free(inst: *mut FcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_vertex_count(inst: *const FcInstance, out: *mut usize) -> FcStatus {
    guard(|| {
        let inst = try_ffi!(handle(inst));
        if out.is_null() {
            return fail(FcStatus::NullPointer, "null output pointer");
        }
        *out = inst.category.vertex_count();
        FcStatus::Ok
    })
}

/// Global dimension, or -1 when it exceeds `bound`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_global_dimension(inst: *const FcInstance, bound: usize, out: *mut i64) -> FcStatus {
    guard(|| {
        let inst = try_ffi!(handle(inst));
        if out.is_null() {
            return fail(FcStatus::NullPointer, "null output pointer");
        }
        *out = match global_dimension(&inst.category, bound) {
            GlobalDimension::Exact(d) => d as i64,
            GlobalDimension::ExceedsBound => -1,
        };
        FcStatus::Ok
    })
}

/// Idempotency level (at most `max_k`) of the trace ideal of a bundle.
/// `bundle` is a declared bundle name or a comma-separated vertex list.
///
/// # Safety
/// Pointers must be valid and `bundle` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn fc_idempotency_level(
    inst: *const FcInstance,
    bundle: *const c_char,
    max_k: usize,
    out: *mut usize,
) -> FcStatus {
    guard(|| {
        let inst = try_ffi!(handle(inst));
        let bundle = try_ffi!(read_str(bundle));
        if out.is_null() {
            return fail(FcStatus::NullPointer, "null output pointer");
        }
        let b = try_ffi!(inst.bundle(bundle).map_err(from_error));
        let ctx = TraceContext::new(&inst.category, &b);
        let rep = try_ffi!(idempotency_level(&ctx.quotient, max_k, Some(&ctx), battery_seed()).map_err(from_error));
        *out = rep.level;
        FcStatus::Ok
    })
}

/// Writes `dim Ext^i(from, to)` for `i = 0..=max_i` into `dims`, which must
/// hold `max_i + 1` entries.
///
/// # Safety
/// Pointers must be valid; `dims` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn fc_ext_dims(
    inst: *const FcInstance,
    from: *const c_char,
    to: *const c_char,
    max_i: usize,
    dims: *mut usize,
    len: usize,
) -> FcStatus {
    guard(|| {
        let inst = try_ffi!(handle(inst));
        let from = try_ffi!(read_str(from));
        let to = try_ffi!(read_str(to));
        if dims.is_null() {
            return fail(FcStatus::NullPointer, "null output buffer");
        }
        if len < max_i + 1 {
            return fail(FcStatus::BufferTooSmall, format!("need {} entries", max_i + 1));
        }
        let a = try_ffi!(inst.module(from).map_err(from_error));
        let b = try_ffi!(inst.module(to).map_err(from_error));
        let table = try_ffi!(ext(&a, &b, max_i).map_err(from_error));
        std::slice::from_raw_parts_mut(dims, len)[..table.dims.len()].copy_from_slice(&table.dims);
        FcStatus::Ok
    })
}

/// Copies the calling thread's last error message into `buf` (nul-terminated,
/// truncated to `len`). Returns the full message length, 0 when there is none.
///
/// # Safety
/// `buf` must point to `len` writable bytes or be null.
#[no_mangle]
pub unsafe extern "C" fn fc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn fc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
