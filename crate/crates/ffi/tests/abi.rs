use std::ffi::{CStr, CString};
use std::ptr;

use tiltbench_ffi::*;

fn load(name: &str) -> *mut TbAlgebra {
    let name = CString::new(name).unwrap();
    let mut alg = ptr::null_mut();
    let s = unsafe { tb_algebra_load_builtin(name.as_ptr(), &mut alg) };
    assert_eq!(s, TbStatus::Ok);
    assert!(!alg.is_null());
    alg
}

fn last_error() -> String {
    let p = tb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn builtin_dimensions_and_cartan() {
    let alg = load("ex1");
    let (mut dim, mut n) = (0usize, 0usize);
    unsafe {
        assert_eq!(tb_algebra_dim(alg, &mut dim), TbStatus::Ok);
        assert_eq!(tb_algebra_num_simples(alg, &mut n), TbStatus::Ok);
    }
    assert_eq!((dim, n), (18, 2));

    let mut needed = 0usize;
    let s = unsafe { tb_algebra_cartan(alg, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(s, TbStatus::BufferTooSmall);
    assert_eq!(needed, 4);
    let mut buf = vec![0usize; needed];
    let s = unsafe { tb_algebra_cartan(alg, buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(s, TbStatus::Ok);
    assert_eq!(buf, vec![5, 4, 4, 5]);
    unsafe { tb_algebra_free(alg) };
}

#[test]
fn analyze_returns_json() {
    let alg = load("ex2");
    let take = CString::new("k").unwrap();
    let target = CString::new("eps").unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { tb_analyze_json(alg, take.as_ptr(), target.as_ptr(), 3, 1, 0, &mut out) };
    assert_eq!(s, TbStatus::Ok);
    let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    assert!(json.contains("\"kind\": \"PERIODIC\""), "{json}");
    assert!(tb_last_error().is_null());
    unsafe {
        tb_string_free(out);
        tb_algebra_free(alg);
    }
}

#[test]
fn errors_are_reported() {
    let mut alg = ptr::null_mut();
    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { tb_algebra_load_builtin(bad.as_ptr(), &mut alg) }, TbStatus::InvalidArgument);
    assert!(last_error().contains("nope"));

    assert_eq!(unsafe { tb_algebra_load_builtin(ptr::null(), &mut alg) }, TbStatus::NullArgument);

    let text = CString::new("ALGEBRA broken\nFIELD p=3\n").unwrap();
    assert_eq!(unsafe { tb_algebra_load_text(text.as_ptr(), &mut alg) }, TbStatus::Validation);
    assert!(last_error().contains("unexpected end of file"), "{}", last_error());

    let missing = CString::new("/nonexistent/input.alg").unwrap();
    assert_eq!(unsafe { tb_algebra_load_file(missing.as_ptr(), &mut alg) }, TbStatus::Io);

    let alg = load("ex1");
    let take = CString::new("zz").unwrap();
    let target = CString::new("eps").unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { tb_analyze_json(alg, take.as_ptr(), target.as_ptr(), 3, 0, 0, &mut out) };
    assert_eq!(s, TbStatus::InvalidArgument);
    assert!(out.is_null());
    unsafe { tb_algebra_free(alg) };

    let mut dim = 0usize;
    assert_eq!(unsafe { tb_algebra_dim(ptr::null(), &mut dim) }, TbStatus::NullArgument);
    unsafe {
        tb_algebra_free(ptr::null_mut());
        tb_string_free(ptr::null_mut());
    }
}

#[test]
fn cap_maps_to_status() {
    let alg = load("ex1");
    let take = CString::new("k").unwrap();
    let target = CString::new("eps").unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { tb_analyze_json(alg, take.as_ptr(), target.as_ptr(), 2, 2, 5, &mut out) };
    assert_eq!(s, TbStatus::CapExceeded);
    unsafe { tb_algebra_free(alg) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(tb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/tiltbench.h");
    for sym in [
        "tb_algebra_load_builtin",
        "tb_algebra_load_file",
        "tb_algebra_load_text",
        "tb_algebra_free",
        "tb_algebra_dim",
        "tb_algebra_num_simples",
        "tb_algebra_cartan",
        "tb_analyze_json",
        "tb_string_free",
        "tb_last_error",
        "tb_version",
        "typedef struct TbAlgebra TbAlgebra",
        "TB_STATUS_CAP_EXCEEDED = 4",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/tiltbench.h");
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", "-Wall", "-Werror", header]).output()
    else {
        eprintln!("no C compiler available, skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
