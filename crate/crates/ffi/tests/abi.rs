use functcat_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0 as libc::c_char; 256];
    unsafe { fc_last_error(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn load(name: &str) -> *mut FcInstance {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fc_instance_fixture(cs(name).as_ptr(), &mut h) }, FcStatus::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn z6_through_the_abi() {
    let h = load("z6.cat");
    let mut n = 0usize;
    assert_eq!(unsafe { fc_vertex_count(h, &mut n) }, FcStatus::Ok);
    assert_eq!(n, 6);
    let mut gl = 0i64;
    assert_eq!(unsafe { fc_global_dimension(h, 8, &mut gl) }, FcStatus::Ok);
    assert_eq!(gl, 5);
    assert_eq!(unsafe { fc_global_dimension(h, 3, &mut gl) }, FcStatus::Ok);
    assert_eq!(gl, -1);
    let mut level = 0usize;
    assert_eq!(unsafe { fc_idempotency_level(h, cs("P23").as_ptr(), 6, &mut level) }, FcStatus::Ok);
    assert_eq!(level, 2);
    assert_eq!(unsafe { fc_idempotency_level(h, cs("1,2,3").as_ptr(), 6, &mut level) }, FcStatus::Ok);
    assert_eq!(level, 6);
    let mut dims = [9usize; 4];
    assert_eq!(
        unsafe { fc_ext_dims(h, cs("S1").as_ptr(), cs("S4").as_ptr(), 3, dims.as_mut_ptr(), dims.len()) },
        FcStatus::Ok
    );
    assert_eq!(dims, [0, 0, 0, 1]);
    unsafe { fc_instance_free(h) };
}

#[test]
fn error_statuses() {
    let mut h = ptr::null_mut();
    let st = unsafe { fc_instance_parse(cs("vertex 1\narrow a 1 -> 1\n").as_ptr(), &mut h) };
    assert_eq!(st, FcStatus::ParseError);
    assert!(h.is_null());
    assert!(last_error().contains("line 2"));

    let st = unsafe { fc_instance_parse(cs("vertex 1\narrow a: 1 -> 9\n").as_ptr(), &mut h) };
    assert_eq!(st, FcStatus::SemanticError);
    assert!(last_error().contains("unknown vertex"));

    assert_eq!(unsafe { fc_instance_fixture(cs("nope").as_ptr(), &mut h) }, FcStatus::UnknownName);
    assert_eq!(unsafe { fc_instance_parse(ptr::null(), &mut h) }, FcStatus::NullPointer);

    let h = load("a2");
    let mut dims = [0usize; 2];
    let st = unsafe { fc_ext_dims(h, cs("S1").as_ptr(), cs("S2").as_ptr(), 3, dims.as_mut_ptr(), dims.len()) };
    assert_eq!(st, FcStatus::BufferTooSmall);
    let st = unsafe { fc_ext_dims(h, cs("S7").as_ptr(), cs("S2").as_ptr(), 1, dims.as_mut_ptr(), dims.len()) };
    assert_eq!(st, FcStatus::UnknownName);
    let mut v = 0usize;
    assert_eq!(unsafe { fc_vertex_count(h, &mut v) }, FcStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { fc_instance_free(h) };
    unsafe { fc_instance_free(ptr::null_mut()) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(fc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/functcat.h");
    let src = format!("#include \"{header}\"\nint main(void) {{ FcInstance *h = 0; return (int)fc_instance_fixture(\"a2\", &h); }}\n");
    let dir = std::env::temp_dir().join(format!("functcat-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("check.c");
    std::fs::write(&file, src).unwrap();
    let Ok(out) = std::process::Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&file).output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
