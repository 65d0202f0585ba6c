//! C ABI over the dframe toolkit.
//!
//! Every fallible function returns a [`DfStatus`]. On anything other than
//! `DF_STATUS_OK` a message is available from [`df_last_error`] on the same
//! thread. Strings handed out by the library must be released with
//! [`df_string_free`]; handles are released with their own `*_free`.
//!
//! Capacity guards are read from `DFRM_CAPACITY` on every call, as in the CLI.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dframe::cli::{
    cmd_check, cmd_coproduct, cmd_gen, cmd_search, cmd_validate, CommandError, Outcome, Status,
};
use dframe::coproduct::dframe_coproduct;
use dframe::dframe::{check_axioms, fixtures, DFrame};
use dframe::search::{SearchConfig, SearchMode};
use dframe::text::{parse, Document};
use dframe::Capacity;

/// Result code of every fallible call. The first four match the `dfrm`
/// exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfStatus {
    Ok = 0,
    MathFailure = 1,
    InputError = 2,
    Capacity = 3,
    NullPointer = 4,
    NotFound = 5,
    Utf8 = 6,
    Panic = 7,
}

/// A parsed document.
pub struct DfDocument(Document);

/// A finite d-frame.
pub struct DfDFrame(DFrame);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(DfStatus, String);

type FfiResult<T> = Result<T, Failure>;

impl From<CommandError> for Failure {
    fn from(e: CommandError) -> Self {
        let status = match e.status() {
            Status::Capacity => DfStatus::Capacity,
            _ => DfStatus::InputError,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> FfiResult<DfStatus>) -> DfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            DfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(DfStatus::Utf8, format!("{what}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

fn out_arg<T>(p: *mut T, what: &str) -> FfiResult<*mut T> {
    if p.is_null() {
        Err(null(what))
    } else {
        Ok(p)
    }
}

fn capacity() -> FfiResult<Capacity> {
    Capacity::from_env().map_err(|e| Failure(DfStatus::InputError, format!("DFRM_CAPACITY: {e}")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior nul removed")
        .into_raw()
}

/// Writes the report and maps the command status.
unsafe fn emit(outcome: Outcome, json: bool, out: *mut *mut c_char) -> DfStatus {
    let text = if json {
        serde_json::to_string_pretty(&outcome.json).expect("json")
    } else {
        outcome.text
    };
    *out = to_c_string(text);
    match outcome.status {
        Status::Success => DfStatus::Ok,
        Status::MathFailure => DfStatus::MathFailure,
        Status::InputError => DfStatus::InputError,
        Status::Capacity => DfStatus::Capacity,
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn df_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn df_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a document in the `.dfrm` text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_document_parse(
    text: *const c_char,
    out: *mut *mut DfDocument,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        let doc = parse(text).map_err(|e| Failure(DfStatus::InputError, e.to_string()))?;
        *out = Box::into_raw(Box::new(DfDocument(doc)));
        Ok(DfStatus::Ok)
    })
}

/// # Safety
/// `doc` must come from [`df_document_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn df_document_free(doc: *mut DfDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Number of declarations, or 0 for a null handle.
///
/// # Safety
/// `doc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_document_len(doc: *const DfDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.0.len())
}

/// Canonical text of the document.
///
/// # Safety
/// `doc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_document_to_text(
    doc: *const DfDocument,
    out: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = to_c_string(ref_arg(doc, "doc")?.0.to_text());
        Ok(DfStatus::Ok)
    })
}

/// Copies the d-frame declared as `name` out of a document.
///
/// # Safety
/// `doc` must be a live handle, `name` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn df_document_dframe(
    doc: *const DfDocument,
    name: *const c_char,
    out: *mut *mut DfDFrame,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let doc = ref_arg(doc, "doc")?;
        let name = str_arg(name, "name")?;
        let d = doc
            .0
            .dframe(name)
            .ok_or_else(|| Failure(DfStatus::NotFound, format!("no dframe named `{name}`")))?;
        *out = Box::into_raw(Box::new(DfDFrame(d.clone())));
        Ok(DfStatus::Ok)
    })
}

/// One of the built-in d-frames: `two_d`, `sier` or `trivial`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_dframe_fixture(
    name: *const c_char,
    out: *mut *mut DfDFrame,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let d = match str_arg(name, "name")? {
            "two_d" => fixtures::two_d(),
            "sier" => fixtures::sier(),
            "trivial" => fixtures::trivial(),
            other => {
                return Err(Failure(
                    DfStatus::NotFound,
                    format!("no fixture named `{other}`"),
                ))
            }
        };
        *out = Box::into_raw(Box::new(DfDFrame(d)));
        Ok(DfStatus::Ok)
    })
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_dframe_free(d: *mut DfDFrame) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Element counts of the two frames and sizes of `con` and `tot`. Any of
/// the output pointers may be null.
///
/// # Safety
/// `d` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_dframe_sizes(
    d: *const DfDFrame,
    plus: *mut usize,
    minus: *mut usize,
    con: *mut usize,
    tot: *mut usize,
) -> DfStatus {
    guard(|| {
        let d = &ref_arg(d, "d")?.0;
        for (p, v) in [
            (plus, d.plus.len()),
            (minus, d.minus.len()),
            (con, d.con.len()),
            (tot, d.tot.len()),
        ] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(DfStatus::Ok)
    })
}

/// Checks the seven d-frame axioms. Returns `DF_STATUS_MATH_FAILURE` with
/// the failing axioms in the error message when any fails.
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_dframe_check(d: *const DfDFrame) -> DfStatus {
    guard(|| {
        let report = check_axioms(&ref_arg(d, "d")?.0);
        if report.is_dframe() {
            Ok(DfStatus::Ok)
        } else {
            let names: Vec<&str> = report.failures().map(|r| r.axiom.name()).collect();
            Err(Failure(
                DfStatus::MathFailure,
                format!("axioms fail: {}", names.join(", ")),
            ))
        }
    })
}

/// Coproduct of `n` d-frames.
///
/// # Safety
/// `family` must point to `n` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_dframe_coproduct(
    family: *const *const DfDFrame,
    n: usize,
    out: *mut *mut DfDFrame,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if family.is_null() && n > 0 {
            return Err(null("family"));
        }
        let mut fam = Vec::with_capacity(n);
        for i in 0..n {
            fam.push(ref_arg(*family.add(i), "family member")?.0.clone());
        }
        let cop = dframe_coproduct(&fam, &capacity()?).map_err(|e| Failure::from(CommandError::from(e)))?;
        *out = Box::into_raw(Box::new(DfDFrame(cop.dframe().clone())));
        Ok(DfStatus::Ok)
    })
}

/// Same report as `dfrm validate`.
///
/// # Safety
/// `doc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_validate(
    doc: *const DfDocument,
    json: bool,
    out: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        Ok(emit(cmd_validate(&ref_arg(doc, "doc")?.0), json, out))
    })
}

/// Same report as `dfrm gen --name NAME`.
///
/// # Safety
/// `doc` must be a live handle, `name` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn df_gen(
    doc: *const DfDocument,
    name: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let outcome = cmd_gen(&ref_arg(doc, "doc")?.0, str_arg(name, "name")?, &capacity()?)?;
        Ok(emit(outcome, json, out))
    })
}

/// Same report as `dfrm check --name NAME [--conditions]`.
///
/// # Safety
/// `doc` must be a live handle, `name` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn df_check(
    doc: *const DfDocument,
    name: *const c_char,
    conditions: bool,
    json: bool,
    out: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let outcome = cmd_check(
            &ref_arg(doc, "doc")?.0,
            str_arg(name, "name")?,
            conditions,
            &capacity()?,
        )?;
        Ok(emit(outcome, json, out))
    })
}

/// Same report as `dfrm coproduct --names a,b,...`; `names` is the
/// comma-separated list.
///
/// # Safety
/// `doc` must be a live handle, `names` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn df_coproduct(
    doc: *const DfDocument,
    names: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let names: Vec<String> = str_arg(names, "names")?
            .split(',')
            .map(|s| s.trim().to_string())
            .collect();
        let outcome = cmd_coproduct(&ref_arg(doc, "doc")?.0, &names, &capacity()?)?;
        Ok(emit(outcome, json, out))
    })
}

/// Same report as `dfrm search`. `random` selects random mode; `samples`
/// and `seed` only apply there.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_search(
    max_b: usize,
    max_rel: usize,
    random: bool,
    samples: usize,
    seed: u64,
    json: bool,
    out: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let config = SearchConfig {
            max_b,
            max_rel,
            mode: if random {
                SearchMode::Random
            } else {
                SearchMode::Exhaustive
            },
            samples,
            seed,
        };
        Ok(emit(cmd_search(&config, &capacity()?)?, json, out))
    })
}
