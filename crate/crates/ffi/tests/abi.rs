use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use koszul_ffi::*;
use serde_json::Value;

const JORDAN: &str = "gens x, y;\nrel y*x - x*y - x^2;\nparam a = {1, 2};\naut theta { x -> a*x; y -> x + a*y; }\n";

struct Doc(*mut KzDocument);

impl Drop for Doc {
    fn drop(&mut self) {
        unsafe { kz_document_free(self.0) }
    }
}

fn parse(src: &str) -> Result<Doc, (KzStatus, Value)> {
    let src = CString::new(src).unwrap();
    let mut doc = ptr::null_mut();
    let mut error = ptr::null_mut();
    let status = unsafe { kz_document_parse(src.as_ptr(), &mut doc, &mut error) };
    if status == KzStatus::Ok {
        assert!(error.is_null());
        Ok(Doc(doc))
    } else {
        assert!(doc.is_null());
        Err((status, serde_json::from_str(&take(error)).unwrap()))
    }
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { kz_string_free(s) };
    out
}

fn run(
    doc: &Doc,
    command: &str,
    options: KzOptions,
    target: Option<&str>,
    bindings: Option<&str>,
) -> (KzStatus, String) {
    let command = CString::new(command).unwrap();
    let target = target.map(|t| CString::new(t).unwrap());
    let bindings = bindings.map(|b| CString::new(b).unwrap());
    let opt = |s: &Option<CString>| s.as_ref().map_or(ptr::null(), |s| s.as_ptr());
    let mut report = ptr::null_mut();
    let status =
        unsafe { kz_run(doc.0, command.as_ptr(), options, opt(&target), ptr::null(), opt(&bindings), &mut report) };
    (status, take(report))
}

#[test]
fn version_and_defaults() {
    let v = unsafe { CStr::from_ptr(kz_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    let d = kz_options_default();
    assert_eq!((d.degree_bound, d.search_bound, d.sweep, d.text), (6, 20, false, false));
}

#[test]
fn nakayama_and_hdet() {
    let doc = parse(JORDAN).unwrap();
    let (status, report) = run(&doc, "nakayama", kz_options_default(), None, None);
    assert_eq!(status, KzStatus::Ok);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["result"]["nu"], serde_json::json!([["1", "0"], ["2", "1"]]));

    let (status, report) = run(&doc, "hdet", kz_options_default(), Some("theta"), Some("a = -3/2"));
    assert_eq!(status, KzStatus::Ok);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["result"]["hdet"], "9/4");
    assert_eq!(v["parameters"]["a"], "-3/2");
}

#[test]
fn sweeps_and_text() {
    let doc = parse(JORDAN).unwrap();
    let opts = KzOptions { sweep: true, text: true, ..kz_options_default() };
    let (status, report) = run(&doc, "hdet", opts, None, None);
    assert_eq!(status, KzStatus::Ok);
    assert!(report.ends_with("2 row(s)\n"), "{report}");
}

#[test]
fn errors_carry_status_and_payload() {
    let (status, err) = parse("gens x, y;\nrel x*y*x;").err().unwrap();
    assert_eq!(status, KzStatus::InputError);
    assert_eq!((err["error"]["line"].as_u64(), err["error"]["kind"].as_str()), (Some(2), Some("ParseError")));

    let doc = parse(JORDAN).unwrap();
    let (status, report) = run(&doc, "hdet", kz_options_default(), Some("theta"), None);
    assert_eq!(status, KzStatus::InputError, "a has two values: {report}");
    let (status, _) = run(&doc, "frobnicate", kz_options_default(), None, None);
    assert_eq!(status, KzStatus::InvalidArgument);
    let (status, _) = run(&doc, "hdet", kz_options_default(), Some("theta"), Some("a"));
    assert_eq!(status, KzStatus::InvalidArgument);

    let free = parse("gens x, y;").unwrap();
    let (status, report) = run(&free, "nakayama", kz_options_default(), None, None);
    assert_eq!(status, KzStatus::EngineError);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["error"]["kind"], "NotFrobenius");
}

#[test]
fn null_arguments_are_rejected() {
    let mut report = ptr::null_mut();
    let cmd = CString::new("nakayama").unwrap();
    let status = unsafe {
        kz_run(ptr::null(), cmd.as_ptr(), kz_options_default(), ptr::null(), ptr::null(), ptr::null(), &mut report)
    };
    assert_eq!(status, KzStatus::NullArgument);
    take(report);
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { kz_document_parse(ptr::null(), &mut doc, ptr::null_mut()) }, KzStatus::NullArgument);
    assert!(doc.is_null());
    unsafe { kz_document_free(ptr::null_mut()) };
    unsafe { kz_string_free(ptr::null_mut()) };
}

#[test]
fn pretty_round_trips() {
    let doc = parse(JORDAN).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kz_document_pretty(doc.0, &mut out) }, KzStatus::Ok);
    let text = take(out);
    let again = parse(&text).unwrap();
    let mut out = ptr::null_mut();
    unsafe { kz_document_pretty(again.0, &mut out) };
    assert_eq!(take(out), text);
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(manifest_dir().join("include/koszul.h")).unwrap();
    for decl in [
        "typedef struct KzDocument KzDocument;",
        "KZ_STATUS_ENGINE_ERROR = 2",
        "enum KzStatus kz_document_parse(",
        "enum KzStatus kz_run(",
        "void kz_string_free(char *s);",
    ] {
        assert!(header.contains(decl), "missing {decl}");
    }
}

/// Compiles and runs a C client against the header and the static library.
#[test]
fn c_client() {
    let target = manifest_dir().join("../../target/debug");
    let lib = target.join("libkoszul_ffi.a");
    let Some(cc) = ["cc", "clang", "gcc"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("koszul-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "koszul.h"

int main(void) {
    KzDocument *doc = NULL;
    char *err = NULL;
    if (kz_document_parse("gens x, y; rel y*x - x*y - x^2;", &doc, &err) != KZ_STATUS_OK) return 10;
    char *report = NULL;
    KzStatus s = kz_run(doc, "nakayama", kz_options_default(), NULL, NULL, NULL, &report);
    int ok = s == KZ_STATUS_OK && strstr(report, "y -> 2*x + y") != NULL;
    kz_string_free(report);
    kz_document_free(doc);
    if (kz_document_parse("gens x;\nrel x*x*x;", &doc, &err) != KZ_STATUS_INPUT_ERROR) return 11;
    ok = ok && strstr(err, "\"line\": 2") != NULL;
    kz_string_free(err);
    printf("%s\n", kz_version());
    return ok ? 0 : 12;
}
"#,
    )
    .unwrap();
    let exe = dir.join("client");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), env!("CARGO_PKG_VERSION"));
}
