use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::ptr;

use crext::*;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn doc(rel: &str) -> CString {
    CString::new(std::fs::read_to_string(root().join(rel)).unwrap()).unwrap()
}

fn last_error() -> String {
    let p = crext_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    crext_string_free(p);
    s
}

unsafe fn load(ring: &str, bimod: &str) -> (*mut CrextRing, *mut CrextBimodule) {
    let mut r = ptr::null_mut();
    assert_eq!(
        crext_ring_from_json(doc(ring).as_ptr(), &mut r),
        CrextStatus::Ok
    );
    let mut b = ptr::null_mut();
    assert_eq!(
        crext_bimodule_from_json(r, doc(bimod).as_ptr(), &mut b),
        CrextStatus::Ok
    );
    (r, b)
}

#[test]
fn ring_documents_round_trip() {
    unsafe {
        let text = doc("rings/dual.json");
        let mut r = ptr::null_mut();
        assert_eq!(crext_ring_from_json(text.as_ptr(), &mut r), CrextStatus::Ok);
        assert_eq!(crext_ring_size(r), 4);
        let mut s = ptr::null_mut();
        assert_eq!(crext_ring_to_json(r, &mut s), CrextStatus::Ok);
        assert_eq!(take_string(s), text.to_str().unwrap());
        crext_ring_free(r);
    }
}

#[test]
fn h3_of_dual_z2() {
    unsafe {
        let (r, b) = load("rings/dual.json", "bimods/dual-z2.json");
        assert_eq!(crext_bimodule_order(b), 2);
        let mut factors = [0u64; 8];
        let mut len = factors.len();
        assert_eq!(
            crext_h3(b, CrextMethod::Snf, factors.as_mut_ptr(), &mut len),
            CrextStatus::Ok
        );
        assert_eq!(&factors[..len], &[2, 2]);

        let mut len = 1;
        assert_eq!(
            crext_h3(b, CrextMethod::Snf, factors.as_mut_ptr(), &mut len),
            CrextStatus::Capacity
        );
        assert_eq!(len, 2);
        crext_bimodule_free(b);
        crext_ring_free(r);
    }
}

#[test]
fn enumeration_agrees_on_z2() {
    unsafe {
        let (r, b) = load("rings/z2.json", "bimods/z2sq-std.json");
        let mut len = 0;
        assert_eq!(
            crext_h3(b, CrextMethod::Both, ptr::null_mut(), &mut len),
            CrextStatus::Ok
        );
        assert_eq!(len, 0);
        crext_bimodule_free(b);
        crext_ring_free(r);
    }
}

#[test]
fn realize_check_and_extract() {
    unsafe {
        let (r, b) = load("rings/z4.json", "bimods/z4-z2sq.json");
        let mut c = ptr::null_mut();
        assert_eq!(
            crext_cochain3_from_json(b, doc("cocycles/z4-z2sq-h3-1.json").as_ptr(), &mut c),
            CrextStatus::Ok
        );
        let mut yes = false;
        assert_eq!(crext_is_cocycle(b, c, &mut yes), CrextStatus::Ok);
        assert!(yes);

        let mut m = ptr::null_mut();
        assert_eq!(crext_realize(b, c, &mut m), CrextStatus::Ok);
        let mut failures = usize::MAX;
        assert_eq!(
            crext_model_check_coherence(m, &mut failures),
            CrextStatus::Ok
        );
        assert_eq!(failures, 0);

        // model JSON survives a round trip
        let mut s = ptr::null_mut();
        assert_eq!(crext_model_to_json(m, &mut s), CrextStatus::Ok);
        let text = CString::new(take_string(s)).unwrap();
        let mut m2 = ptr::null_mut();
        assert_eq!(
            crext_model_from_json(text.as_ptr(), &mut m2),
            CrextStatus::Ok
        );

        let mut pi = ptr::null_mut();
        assert_eq!(crext_model_pi(m2, &mut pi), CrextStatus::Ok);
        assert_eq!(crext_bimodule_order(pi), 4);
        let mut e = ptr::null_mut();
        assert_eq!(crext_extract(m2, &mut e), CrextStatus::Ok);
        assert_eq!(crext_is_cocycle(pi, e, &mut yes), CrextStatus::Ok);
        assert!(yes);
        let mut s = ptr::null_mut();
        assert_eq!(crext_cochain3_to_json(pi, e, &mut s), CrextStatus::Ok);
        assert!(take_string(s).starts_with("{\n  \"kind\": \"cochain3\""));

        crext_cochain3_free(e);
        crext_bimodule_free(pi);
        crext_model_free(m2);
        crext_model_free(m);
        crext_cochain3_free(c);
        crext_bimodule_free(b);
        crext_ring_free(r);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut r = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(
            crext_ring_from_json(bad.as_ptr(), &mut r),
            CrextStatus::Parse
        );
        assert!(r.is_null());
        assert!(last_error().starts_with("parse error"), "{}", last_error());

        let mut v: serde_json::Value =
            serde_json::from_str(doc("rings/z2.json").to_str().unwrap()).unwrap();
        v["mul"][1][1] = serde_json::json!("0");
        let bad = CString::new(v.to_string()).unwrap();
        assert_eq!(
            crext_ring_from_json(bad.as_ptr(), &mut r),
            CrextStatus::Validation
        );

        assert_eq!(
            crext_ring_from_json(ptr::null(), &mut r),
            CrextStatus::NullArgument
        );
        assert_eq!(last_error(), "null argument: json");
        assert_eq!(crext_ring_size(ptr::null()), 0);

        // a success clears the message
        let (r, b) = load("rings/z2.json", "bimods/z2-std.json");
        assert!(crext_last_error().is_null());

        let mut c = ptr::null_mut();
        let unnormalized = CString::new(
            r#"{"kind":"cochain3","version":1,"entries":[{"comp":"dot","args":["0","1","1"],"value":[1]}]}"#,
        )
        .unwrap();
        assert_eq!(
            crext_cochain3_from_json(b, unnormalized.as_ptr(), &mut c),
            CrextStatus::Validation
        );

        // realize accepts any normalized cochain; the defect shows up as incoherence
        let non_cocycle = CString::new(
            r#"{"kind":"cochain3","version":1,"entries":[{"comp":"dot","args":["1","1","1"],"value":[1]}]}"#,
        )
        .unwrap();
        assert_eq!(
            crext_cochain3_from_json(b, non_cocycle.as_ptr(), &mut c),
            CrextStatus::Ok
        );
        let mut yes = true;
        assert_eq!(crext_is_cocycle(b, c, &mut yes), CrextStatus::Ok);
        assert!(!yes);
        let mut m = ptr::null_mut();
        assert_eq!(crext_realize(b, c, &mut m), CrextStatus::Ok);
        let mut failures = 0;
        assert_eq!(
            crext_model_check_coherence(m, &mut failures),
            CrextStatus::Ok
        );
        assert_eq!(failures, 2);
        assert_eq!(
            crext_model_check_coherence(m, ptr::null_mut()),
            CrextStatus::NullArgument
        );
        crext_model_free(m);

        crext_cochain3_free(c);
        crext_bimodule_free(b);
        crext_ring_free(r);
        crext_ring_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(crext_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/crext.h"))
            .unwrap();
    let src =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let mut count = 0;
    for line in src.lines().filter(|l| l.contains("extern \"C\" fn ")) {
        let name = line.split("fn ").nth(1).unwrap().split('(').next().unwrap();
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
        count += 1;
    }
    assert_eq!(count, 23);
    assert!(header.contains("typedef struct CrextModel CrextModel;"));
    assert!(header.contains("CREXT_STATUS_NULL_ARGUMENT = 9"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let c = std::process::Command::new(&cc)
        .args([
            "-std=c11",
            "-Wall",
            "-Wextra",
            "-Werror",
            "-fsyntax-only",
            "-Iinclude",
            "examples/smoke.c",
        ])
        .current_dir(dir)
        .output()
        .unwrap_or_else(|e| panic!("{cc}: {e}"));
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    let cpp = std::process::Command::new(&cc)
        .args([
            "-x",
            "c++",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "include/crext.h",
        ])
        .current_dir(dir)
        .output()
        .unwrap();
    assert!(
        cpp.status.success(),
        "{}",
        String::from_utf8_lossy(&cpp.stderr)
    );
}
