use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use taufact_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = tf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn ring(spec: &str) -> *mut TfRing {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { tf_ring_new(c(spec).as_ptr(), &mut r) }, TfStatus::Ok);
    r
}

fn tau(r: *const TfRing, name: &str) -> *mut TfTau {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { tf_tau_new(r, c(name).as_ptr(), &mut t) }, TfStatus::Ok);
    t
}

#[test]
fn ring_basics() {
    unsafe {
        let r = ring("GF(2) x Z/4");
        assert_eq!(tf_ring_order(r), 8);
        let mut a = 0;
        assert_eq!(tf_ring_parse_elem(r, c("(1,2)").as_ptr(), &mut a), TfStatus::Ok);
        let mut sq = 0;
        assert_eq!(tf_ring_mul(r, a, a, &mut sq), TfStatus::Ok);
        let s = tf_ring_format_elem(r, sq);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "(1,0)");
        tf_string_free(s);
        let mut unit = true;
        assert_eq!(tf_ring_is_unit(r, a, &mut unit), TfStatus::Ok);
        assert!(!unit);
        let mut omega = 0;
        assert_eq!(tf_ring_clique_number(r, &mut omega), TfStatus::Ok);
        assert_eq!(omega, 2);
        let info = tf_ring_info_json(r);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(info).to_str().unwrap()).unwrap();
        assert_eq!(v["ring"]["order"], 8);
        tf_string_free(info);
        tf_ring_free(r);
    }
}

#[test]
fn errors() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(tf_ring_new(c("Q/3").as_ptr(), &mut r), TfStatus::Parse);
        assert!(r.is_null());
        assert!(last_error().contains("Q/3"));
        assert_eq!(tf_ring_new(ptr::null(), &mut r), TfStatus::NullArgument);

        let r = ring("Z/6");
        let mut out = 0;
        assert_eq!(tf_ring_mul(r, 6, 1, &mut out), TfStatus::BadElement);
        assert_eq!(tf_ring_parse_elem(r, c("9").as_ptr(), &mut out), TfStatus::BadElement);
        let mut t = ptr::null_mut();
        assert_eq!(tf_tau_new(r, c("subset:5").as_ptr(), &mut t), TfStatus::BadElement);
        assert_eq!(tf_tau_new(r, c("bogus").as_ptr(), &mut t), TfStatus::Parse);
        let t = tau(r, "tau_z");
        let mut flags = TfIrrFlags::default();
        assert_eq!(tf_classify(t, 5, &mut flags), TfStatus::BadElement);
        assert_eq!(
            tf_check(t, c("nope").as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null_mut(), ptr::null_mut()),
            TfStatus::Parse
        );
        tf_tau_free(t);
        tf_ring_free(r);
        tf_ring_free(ptr::null_mut());
    }
}

#[test]
fn classify_and_check() {
    unsafe {
        let r = ring("Z/12");
        let t = tau(r, "tau_z");
        // the relation keeps the ring alive
        tf_ring_free(r);
        let mut related = false;
        assert_eq!(tf_tau_relates(t, 2, 6, &mut related), TfStatus::Ok);
        assert!(related);

        let mut flags = TfIrrFlags::default();
        assert_eq!(tf_classify(t, 6, &mut flags), TfStatus::Ok);
        assert!(flags.irreducible && flags.strongly_irreducible && flags.m_irreducible);

        let mut witness = ptr::null_mut();
        let status = tf_check(t, c("bfr").as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null_mut(), &mut witness);
        assert_eq!(status, TfStatus::No);
        assert_eq!(CStr::from_ptr(witness).to_str().unwrap(), "0 = 6·6 = 6·6·6");
        tf_string_free(witness);

        let status = tf_check(
            t,
            c("ufr").as_ptr(),
            c("atomic").as_ptr(),
            c("strong").as_ptr(),
            ptr::null(),
            ptr::null_mut(),
            ptr::null_mut(),
        );
        assert_eq!(status, TfStatus::No);
        tf_tau_free(t);

        let r = ring("Z/6");
        let t = tau(r, "tau_z");
        let status = tf_check(t, c("ufr").as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(status, TfStatus::Ok);
        tf_tau_free(t);
        tf_ring_free(r);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/taufact.h");
    let src = format!("#include \"{header}\"\nint main(void) {{ TfRing *r = 0; return (int)tf_ring_new(\"Z/4\", &r); }}\n");
    let dir = std::env::temp_dir().join(format!("taufact_header_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("main.c");
    std::fs::write(&file, src).unwrap();
    match Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&file).status() {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler; skipping"),
    }
    std::fs::remove_dir_all(&dir).ok();
}
