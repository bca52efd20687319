use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use quasigalois_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { qg_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qg_last_error_message()) }.to_str().unwrap().to_string()
}

fn corpus(spec: &str) -> *mut QgCurve {
    let spec = CString::new(spec).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { qg_curve_from_corpus(spec.as_ptr(), &mut c) }, QgStatus::Ok);
    c
}

#[test]
fn analyze_fermat_vertex() {
    let c = corpus("fermat:4");
    assert_eq!(unsafe { qg_curve_degree(c) }, 4);
    let p = CString::new("1:0:0").unwrap();
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { qg_analyze(c, p.as_ptr(), &mut cert) }, QgStatus::Ok);
    unsafe {
        assert_eq!(qg_certificate_order(cert), 4);
        assert_eq!(qg_certificate_projection_degree(cert), 4);
        assert!(qg_certificate_is_galois(cert));
        assert!(!qg_certificate_on_curve(cert));
    }
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qg_certificate_to_json(cert, &mut json) }, QgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["axis"], "[1:0:0]");
    unsafe {
        qg_certificate_free(cert);
        qg_curve_free(c);
    }
}

#[test]
fn discover_klein() {
    let c = corpus("klein");
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { qg_discover(c, 0, &mut list) }, QgStatus::Ok);
    assert_eq!(unsafe { qg_certificate_list_len(list) }, 21);
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { qg_certificate_list_get(list, 20, &mut cert) }, QgStatus::Ok);
    assert_eq!(unsafe { qg_certificate_order(cert) }, 2);
    assert_eq!(unsafe { qg_certificate_list_get(list, 21, &mut cert) }, QgStatus::OutOfRange);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qg_certificate_list_to_json(list, &mut json) }, QgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["census"]["outer"]["2"], 21);
    unsafe {
        qg_certificate_free(cert);
        qg_certificate_list_free(list);
        qg_curve_free(c);
    }
}

#[test]
fn json_round_trip_and_errors() {
    let c = corpus("hessian");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qg_curve_to_json(c, &mut json) }, QgStatus::Ok);
    let text = CString::new(take_string(json)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { qg_curve_from_json(text.as_ptr(), &mut back) }, QgStatus::Ok);
    assert_eq!(unsafe { qg_curve_degree(back) }, 6);

    let bad = CString::new("1:0:").unwrap();
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { qg_analyze(back, bad.as_ptr(), &mut cert) }, QgStatus::Parse);
    assert!(last_error().contains("PARSE"), "{}", last_error());
    assert!(cert.is_null());

    assert_eq!(unsafe { qg_analyze(back, ptr::null(), &mut cert) }, QgStatus::NullPointer);
    assert_eq!(unsafe { qg_curve_from_corpus(c"nonsense".as_ptr(), &mut back) }, QgStatus::InvalidInput);
    assert!(last_error().contains("UNKNOWN_NAME"));
    assert_eq!(unsafe { qg_curve_from_json(c"{".as_ptr(), &mut back) }, QgStatus::InvalidInput);
    unsafe {
        qg_curve_free(back);
        qg_curve_free(c);
        qg_curve_free(ptr::null_mut());
        qg_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { qg_curve_degree(ptr::null()) }, 0);
}

#[test]
fn scenarios() {
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qg_verify_scenario(c"hessian12".as_ptr(), 0, &mut json) }, QgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(
        unsafe { qg_verify_scenario(c"fermat:6".as_ptr(), 3, ptr::null_mut()) },
        QgStatus::VerificationFailed
    );
    assert_eq!(unsafe { qg_verify_scenario(c"bogus".as_ptr(), 0, ptr::null_mut()) }, QgStatus::InvalidInput);
    let v = unsafe { CStr::from_ptr(qg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quasigalois.h")).unwrap();
    for name in [
        "qg_curve_from_json",
        "qg_curve_from_corpus",
        "qg_curve_free",
        "qg_curve_to_json",
        "qg_analyze",
        "qg_certificate_order",
        "qg_certificate_to_json",
        "qg_discover",
        "qg_certificate_list_get",
        "qg_verify_scenario",
        "qg_last_error_message",
        "qg_string_free",
        "qg_version",
        "QG_STATUS_VERIFICATION_FAILED",
        "typedef struct QgCurve QgCurve",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a small C program against the static library.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().unwrap().parent().unwrap();
    let lib = target.join("libquasigalois_ffi.a");
    if !lib.exists() {
        panic!("static library not found at {}", lib.display());
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "quasigalois.h"
int main(void) {
    QgCurve *c = NULL;
    QgCertificate *cert = NULL;
    if (qg_curve_from_corpus("fermat:6", &c) != QG_STATUS_OK) return 10;
    if (qg_analyze(c, "0:0:1", &cert) != QG_STATUS_OK) return 11;
    unsigned order = qg_certificate_order(cert);
    qg_certificate_free(cert);
    if (qg_analyze(c, "1:0", &cert) != QG_STATUS_PARSE) return 12;
    qg_curve_free(c);
    printf("order %u\n", order);
    return order == 6 ? 0 : 13;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "order 6");
}
