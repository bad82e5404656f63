//! C interface to the koszul engine.
//!
//! Documents are parsed once into an opaque [`KzDocument`] and then run any
//! number of times. Every report comes back as a NUL-terminated JSON (or
//! text) string owned by the caller, released with [`kz_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use koszul::cli::{self, Bindings, Command, Document, FieldSpec, Format, Invocation, Options};
use serde_json::json;

/// Result of a call. The first three match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KzStatus {
    Ok = 0,
    InputError = 1,
    EngineError = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    InvalidArgument = 5,
    Panic = 6,
}

/// A parsed presentation document.
pub struct KzDocument {
    doc: Document,
}

/// Engine settings for [`kz_run`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct KzOptions {
    pub degree_bound: usize,
    pub search_bound: i64,
    /// Run over the whole parameter grid.
    pub sweep: bool,
    /// Aligned text instead of JSON.
    pub text: bool,
}

#[no_mangle]
pub extern "C" fn kz_options_default() -> KzOptions {
    let d = Options::default();
    KzOptions { degree_bound: d.degree_bound, search_bound: d.search_bound, sweep: false, text: false }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn kz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

struct Failure(KzStatus, String);

fn error_json(kind: &str, message: &str) -> String {
    let v = json!({ "schema": 1, "error": { "kind": kind, "message": message } });
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn invalid(status: KzStatus, message: impl Into<String>) -> Failure {
    let kind = match status {
        KzStatus::NullArgument => "NullArgument",
        KzStatus::InvalidUtf8 => "InvalidUtf8",
        _ => "InvalidArgument",
    };
    Failure(status, error_json(kind, &message.into()))
}

unsafe fn required<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(invalid(KzStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(KzStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        Ok(None)
    } else {
        required(s, what).map(Some)
    }
}

fn status_of(code: i32) -> KzStatus {
    match code {
        0 => KzStatus::Ok,
        1 => KzStatus::InputError,
        _ => KzStatus::EngineError,
    }
}

fn into_c(s: String) -> *mut c_char {
    // Reports never contain NUL; strip defensively rather than fail.
    CString::new(s.replace('\0', "")).expect("no interior NUL").into_raw()
}

/// Runs `body`, storing its string in `out` (when non-null) and mapping panics.
unsafe fn guarded(out: *mut *mut c_char, body: impl FnOnce() -> Result<(KzStatus, String), Failure>) -> KzStatus {
    if !out.is_null() {
        *out = ptr::null_mut();
    }
    let (status, text) = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(r)) => r,
        Ok(Err(Failure(s, text))) => (s, text),
        Err(_) => (KzStatus::Panic, error_json("Panic", "internal error")),
    };
    if !out.is_null() {
        *out = into_c(text);
    }
    status
}

/// Parses `source`. On success `*doc` receives a handle to release with
/// [`kz_document_free`]; on failure `*error` (if non-null) receives a JSON
/// error with line and column.
///
/// # Safety
/// `source` must be a NUL-terminated string; `doc` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kz_document_parse(
    source: *const c_char,
    doc: *mut *mut KzDocument,
    error: *mut *mut c_char,
) -> KzStatus {
    if doc.is_null() {
        return guarded(error, || Err(invalid(KzStatus::NullArgument, "doc is null")));
    }
    *doc = ptr::null_mut();
    let status = guarded(error, || {
        let text = required(source, "source")?;
        let parsed = cli::parse(text).map_err(|e| {
            let e = cli::CliError::from(e);
            let v = json!({ "schema": 1, "error": e.payload() });
            Failure(KzStatus::InputError, serde_json::to_string_pretty(&v).expect("serializable") + "\n")
        })?;
        *doc = Box::into_raw(Box::new(KzDocument { doc: parsed }));
        Ok((KzStatus::Ok, String::new()))
    });
    if status == KzStatus::Ok && !error.is_null() {
        kz_string_free(*error);
        *error = ptr::null_mut();
    }
    status
}

/// # Safety
/// `doc` must come from [`kz_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn kz_document_free(doc: *mut KzDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Canonical text of a document; parsing it gives the same document.
///
/// # Safety
/// `doc` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kz_document_pretty(doc: *const KzDocument, out: *mut *mut c_char) -> KzStatus {
    if out.is_null() {
        return KzStatus::NullArgument;
    }
    guarded(out, || {
        let d = doc.as_ref().ok_or_else(|| invalid(KzStatus::NullArgument, "doc is null"))?;
        Ok((KzStatus::Ok, cli::pretty(&d.doc)))
    })
}

fn parse_bindings(s: &str) -> Result<Bindings, Failure> {
    s.split([';', ','])
        .map(str::trim)
        .filter(|b| !b.is_empty())
        .map(|b| cli::parse_binding(b).map_err(|e| invalid(KzStatus::InvalidArgument, format!("binding `{b}`: {e}"))))
        .collect()
}

/// Runs `command` (for example `"nakayama"` or `"cy-double-ore"`).
///
/// `target`, `field` (`"q"` or `"F<p>"`) and `bindings` (`"f=1; g=-1/2"`) may
/// be null. `*report` receives the report on success and the error payload
/// otherwise; the status mirrors the command-line exit code.
///
/// # Safety
/// Strings must be NUL-terminated or null; `doc` must be a live handle and
/// `report` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kz_run(
    doc: *const KzDocument,
    command: *const c_char,
    options: KzOptions,
    target: *const c_char,
    field: *const c_char,
    bindings: *const c_char,
    report: *mut *mut c_char,
) -> KzStatus {
    if report.is_null() {
        return KzStatus::NullArgument;
    }
    guarded(report, || {
        let d = doc.as_ref().ok_or_else(|| invalid(KzStatus::NullArgument, "doc is null"))?;
        let name = required(command, "command")?;
        let command = Command::from_name(name)
            .ok_or_else(|| invalid(KzStatus::InvalidArgument, format!("unknown command `{name}`")))?;
        let field = match optional(field, "field")? {
            None => None,
            Some(f) => Some(
                FieldSpec::parse(f).ok_or_else(|| invalid(KzStatus::InvalidArgument, format!("bad field `{f}`")))?,
            ),
        };
        let inv = Invocation {
            command,
            sweep: options.sweep,
            options: Options {
                degree_bound: options.degree_bound,
                search_bound: options.search_bound,
                field,
                target: optional(target, "target")?.map(String::from),
                bindings: optional(bindings, "bindings")?.map(parse_bindings).transpose()?.unwrap_or_default(),
            },
            format: if options.text { Format::Text } else { Format::Json },
        };
        let out = cli::execute_document(&inv, &d.doc);
        let text = if out.stdout.is_empty() { out.stderr } else { out.stdout };
        Ok((status_of(out.code), text))
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn kz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
