use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use dframe_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { df_string_free(s) };
    out
}

fn last_error() -> String {
    let p = df_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn fixture(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn parse(text: &CString) -> *mut DfDocument {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { df_document_parse(text.as_ptr(), &mut doc) }, DfStatus::Ok);
    doc
}

#[test]
fn document_round_trips_through_the_abi() {
    let text = fixture("dframes.dfrm");
    let doc = parse(&text);
    assert_eq!(unsafe { df_document_len(doc) }, 6);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { df_document_to_text(doc, &mut out) }, DfStatus::Ok);
    assert_eq!(take(out), text.to_str().unwrap());
    unsafe { df_document_free(doc) };
}

#[test]
fn parse_errors_carry_a_message() {
    let bad = CString::new("frame f\n  elem a\n  leq a b\n").unwrap();
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { df_document_parse(bad.as_ptr(), &mut doc) }, DfStatus::InputError);
    assert!(doc.is_null());
    assert!(last_error().contains("line 3"), "{}", last_error());
}

#[test]
fn null_and_missing_arguments_are_reported() {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { df_document_parse(ptr::null(), &mut doc) }, DfStatus::NullPointer);
    let text = fixture("dframes.dfrm");
    let doc = parse(&text);
    let name = CString::new("nope").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { df_document_dframe(doc, name.as_ptr(), &mut d) }, DfStatus::NotFound);
    assert!(last_error().contains("nope"));
    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { df_document_dframe(doc, bytes.as_ptr() as *const c_char, &mut d) },
        DfStatus::Utf8
    );
    unsafe { df_document_free(doc) };
}

#[test]
fn coproduct_of_handles() {
    let (sier, two) = (CString::new("sier").unwrap(), CString::new("two_d").unwrap());
    let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(df_dframe_fixture(sier.as_ptr(), &mut a), DfStatus::Ok);
        assert_eq!(df_dframe_fixture(two.as_ptr(), &mut b), DfStatus::Ok);
        let fam = [a as *const DfDFrame, b as *const DfDFrame];
        assert_eq!(df_dframe_coproduct(fam.as_ptr(), 2, &mut c), DfStatus::Ok);
        let (mut p, mut m) = (0, 0);
        assert_eq!(df_dframe_sizes(c, &mut p, &mut m, ptr::null_mut(), ptr::null_mut()), DfStatus::Ok);
        assert_eq!((p, m), (3, 3));
        assert_eq!(df_dframe_check(c), DfStatus::Ok);
        for h in [a, b, c] {
            df_dframe_free(h);
        }
    }
}

#[test]
fn commands_match_the_cli_status_codes() {
    let text = fixture("inconsistent.dfrm");
    let doc = parse(&text);
    let name = CString::new("bad").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { df_check(doc, name.as_ptr(), true, false, &mut out) }, DfStatus::MathFailure);
    assert!(take(out).contains("con-tot fails"));
    assert_eq!(unsafe { df_validate(doc, true, &mut out) }, DfStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert!(json.is_object() || json.is_array());
    unsafe { df_document_free(doc) };

    assert_eq!(unsafe { df_search(4, 2, false, 0, 0, false, &mut out) }, DfStatus::InputError);
    assert!(last_error().contains('3'));
    assert_eq!(unsafe { df_search(2, 1, false, 0, 0, false, &mut out) }, DfStatus::Ok);
    assert!(take(out).contains("instances"));
}

#[test]
fn coproduct_report_from_a_document() {
    let text = fixture("dframes.dfrm");
    let doc = parse(&text);
    let names = CString::new("sier,sier").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { df_coproduct(doc, names.as_ptr(), false, &mut out) }, DfStatus::Ok);
    let report = take(out);
    assert!(report.contains("# sizes 6 6") && report.contains("# passes yes"), "{report}");
    unsafe { df_document_free(doc) };
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("dframe.h").exists());
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libdframe_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = tempfile::tempdir().unwrap();
    let bin = exe.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&header_dir)
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("run cc");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(out.stdout, b"ok\n");
}
