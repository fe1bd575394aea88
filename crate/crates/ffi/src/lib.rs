//! C ABI over the tiltbench library.
//!
//! Every function returns a [`TbStatus`]; results come back through out
//! pointers. Strings handed out by the library are freed with
//! [`tb_string_free`], algebras with [`tb_algebra_free`]. The message of the
//! most recent failure on the calling thread is available from
//! [`tb_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use tiltbench::algebra::PartitionedAlgebra;
use tiltbench::cli::{execute_loaded, RunConfig};
use tiltbench::module::DEFAULT_CAP;
use tiltbench::{data, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Validation = 3,
    CapExceeded = 4,
    Unsupported = 5,
    InvalidArgument = 6,
    Io = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// A loaded algebra.
pub struct TbAlgebra {
    name: String,
    text: String,
    algebra: Arc<PartitionedAlgebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> TbStatus {
    match e {
        Error::CapExceeded { .. } => TbStatus::CapExceeded,
        Error::UnsupportedGroup(_) | Error::ExtendField { .. } => TbStatus::Unsupported,
        Error::InvalidArgument(_) | Error::NotSymmetric | Error::AlgebraMismatch => TbStatus::InvalidArgument,
        Error::Io(_) => TbStatus::Io,
        _ => TbStatus::Validation,
    }
}

fn fail(e: Error) -> TbStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, converting panics into `Internal`.
fn guard(f: impl FnOnce() -> TbStatus) -> TbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == TbStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            s
        }
        Err(_) => {
            set_error("internal error");
            TbStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TbStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(TbStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        TbStatus::InvalidUtf8
    })
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn load(name: &str, text: String, out: *mut *mut TbAlgebra) -> TbStatus {
    match data::load_text(&text) {
        Ok(a) => {
            let boxed = Box::new(TbAlgebra { name: name.into(), text, algebra: Arc::new(a) });
            unsafe { *out = Box::into_raw(boxed) };
            TbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Loads a builtin dataset: `ex1`, `ex2`, `a4` or `kx2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_load_builtin(name: *const c_char, out: *mut *mut TbAlgebra) -> TbStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        let name = tri!(read_str(name));
        match data::builtin_text(name) {
            Some(text) => load(name, text.to_string(), out),
            None => {
                set_error(format!("unknown builtin {name:?}"));
                TbStatus::InvalidArgument
            }
        }
    })
}

/// Loads a format A or format B input file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_load_file(path: *const c_char, out: *mut *mut TbAlgebra) -> TbStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        let path = tri!(read_str(path));
        match std::fs::read_to_string(path) {
            Ok(text) => load(path, text, out),
            Err(e) => fail(e.into()),
        }
    })
}

/// Parses input text held in memory.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_load_text(text: *const c_char, out: *mut *mut TbAlgebra) -> TbStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        let text = tri!(read_str(text));
        load("<memory>", text.to_string(), out)
    })
}

/// # Safety
/// `alg` must come from a load function and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_free(alg: *mut TbAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

unsafe fn algebra<'a>(alg: *const TbAlgebra) -> Result<&'a TbAlgebra, TbStatus> {
    alg.as_ref().ok_or_else(|| {
        set_error("null algebra");
        TbStatus::NullArgument
    })
}

/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_dim(alg: *const TbAlgebra, out: *mut usize) -> TbStatus {
    guard(|| {
        let a = tri!(algebra(alg));
        if out.is_null() {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        *out = a.algebra.dim();
        TbStatus::Ok
    })
}

/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_num_simples(alg: *const TbAlgebra, out: *mut usize) -> TbStatus {
    guard(|| {
        let a = tri!(algebra(alg));
        if out.is_null() {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        *out = a.algebra.num_simples();
        TbStatus::Ok
    })
}

/// Writes the Cartan matrix row-major into `buf` of length `len`. The
/// required length (`n * n`) is stored in `needed` in every case;
/// `BufferTooSmall` is returned when `len` is smaller.
///
/// # Safety
/// `buf` must hold `len` elements (may be null when `len` is 0) and `needed`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_algebra_cartan(
    alg: *const TbAlgebra,
    buf: *mut usize,
    len: usize,
    needed: *mut usize,
) -> TbStatus {
    guard(|| {
        let a = tri!(algebra(alg));
        if needed.is_null() || (buf.is_null() && len > 0) {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        let c = a.algebra.cartan_matrix();
        let flat: Vec<usize> = c.into_iter().flatten().collect();
        *needed = flat.len();
        if len < flat.len() {
            set_error(format!("buffer holds {len} entries, {} needed", flat.len()));
            return TbStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
        TbStatus::Ok
    })
}

/// Runs the full analysis and returns the JSON report in `*out`.
/// `take` is a comma-separated list of simple labels, `target` a label.
/// `cap` of 0 selects the default dimension cap.
///
/// # Safety
/// String arguments must be NUL-terminated, `alg` a live handle and `out` a
/// valid pointer. The returned string must be freed with `tb_string_free`.
#[no_mangle]
pub unsafe extern "C" fn tb_analyze_json(
    alg: *const TbAlgebra,
    take: *const c_char,
    target: *const c_char,
    steps: usize,
    tilt_t: usize,
    cap: usize,
    out: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        let a = tri!(algebra(alg));
        let take = tri!(read_str(take));
        let target = tri!(read_str(target));
        if out.is_null() {
            set_error("null argument");
            return TbStatus::NullArgument;
        }
        let cfg = RunConfig {
            take: take.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            target: Some(target.to_string()),
            steps,
            tilt_t,
            cap: if cap == 0 { DEFAULT_CAP } else { cap },
            ..RunConfig::new("analyze", &a.name)
        };
        match execute_loaded(&cfg, &a.text, &a.algebra) {
            Ok(doc) => match CString::new(doc.to_json()) {
                Ok(s) => {
                    *out = s.into_raw();
                    TbStatus::Ok
                }
                Err(_) => {
                    set_error("report contains a NUL byte");
                    TbStatus::Internal
                }
            },
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn tb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
