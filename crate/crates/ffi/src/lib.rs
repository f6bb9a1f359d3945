//! C interface to polyfun.
//!
//! A document is parsed once into an opaque handle; subcommands then run
//! against it and return an opaque report. Strings handed out by the
//! library are owned by the handle they came from, except the error text
//! returned by [`pf_last_error`], which lives until the next call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polyfun::cli::document::SourceDocument;
use polyfun::cli::{run_document, CliError, ExitStatus};

/// Status codes. The first five agree with the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfStatus {
    PfOk = 0,
    PfFailure = 1,
    PfInconclusive = 2,
    PfInputError = 3,
    PfUnsupported = 4,
    PfNullArgument = 5,
    PfPanic = 6,
}

impl From<ExitStatus> for PfStatus {
    fn from(s: ExitStatus) -> Self {
        match s {
            ExitStatus::Success => PfStatus::PfOk,
            ExitStatus::Failure => PfStatus::PfFailure,
            ExitStatus::Inconclusive => PfStatus::PfInconclusive,
            ExitStatus::InputError => PfStatus::PfInputError,
            ExitStatus::Unsupported => PfStatus::PfUnsupported,
        }
    }
}

/// A parsed input document.
pub struct PfDocument {
    doc: SourceDocument,
    printed: CString,
}

/// The result of one subcommand.
pub struct PfReport {
    status: PfStatus,
    body: CString,
    rendered: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn c_string(s: String) -> CString {
    CString::new(s.replace('\0', " ")).unwrap_or_default()
}

/// Run `f`, turning panics into `PfPanic`.
fn guarded(f: impl FnOnce() -> PfStatus) -> PfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            PfStatus::PfPanic
        }
    }
}

unsafe fn utf8<'a>(p: *const c_char) -> Result<&'a str, PfStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(PfStatus::PfNullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        PfStatus::PfInputError
    })
}

/// Parse a document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
/// On success `*out` holds a handle to release with [`pf_document_free`].
#[no_mangle]
pub unsafe extern "C" fn pf_document_parse(text: *const c_char, out: *mut *mut PfDocument) -> PfStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null argument");
            return PfStatus::PfNullArgument;
        }
        *out = ptr::null_mut();
        let text = match utf8(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match SourceDocument::parse(text) {
            Ok(doc) => {
                let printed = c_string(doc.to_string());
                *out = Box::into_raw(Box::new(PfDocument { doc, printed }));
                PfStatus::PfOk
            }
            Err(e) => {
                set_error(e.to_string());
                CliError::from(e).status().into()
            }
        }
    })
}

/// The document in canonical printed form. Owned by the handle.
///
/// # Safety
/// `doc` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_document_print(doc: *const PfDocument) -> *const c_char {
    doc.as_ref().map_or(ptr::null(), |d| d.printed.as_ptr())
}

/// Number of declarations in the document, or 0 for a null handle.
///
/// # Safety
/// `doc` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_document_len(doc: *const PfDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.doc.decls.len())
}

/// # Safety
/// `doc` must come from [`pf_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pf_document_free(doc: *mut PfDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Run a subcommand, given as `argc` arguments without the program name
/// (for example `certify waring2 mixed --max-d1 1`), against `doc`.
///
/// The returned status is the command's exit code. When a report was
/// produced, `*out` holds it, including for `PfInconclusive`.
///
/// # Safety
/// `doc` must be a live handle, `argv` must point to `argc` NUL-terminated
/// strings, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_run(
    doc: *const PfDocument,
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut PfReport,
) -> PfStatus {
    guarded(|| {
        if out.is_null() || doc.is_null() || (argc > 0 && argv.is_null()) {
            set_error("null argument");
            return PfStatus::PfNullArgument;
        }
        *out = ptr::null_mut();
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            match utf8(*argv.add(i)) {
                Ok(a) => args.push(a.to_string()),
                Err(s) => return s,
            }
        }
        match run_document(&(*doc).doc, &args) {
            Ok(r) => {
                let status = PfStatus::from(r.status);
                let report = PfReport { status, body: c_string(r.report.body()), rendered: c_string(r.report.render()) };
                *out = Box::into_raw(Box::new(report));
                status
            }
            Err(e) => {
                set_error(e.to_string());
                e.status().into()
            }
        }
    })
}

/// The report without timings. Owned by the handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_report_body(report: *const PfReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.body.as_ptr())
}

/// The full report, timings included. Owned by the handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_report_text(report: *const PfReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.rendered.as_ptr())
}

/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_report_status(report: *const PfReport) -> PfStatus {
    report.as_ref().map_or(PfStatus::PfNullArgument, |r| r.status)
}

/// # Safety
/// `report` must come from [`pf_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pf_report_free(report: *mut PfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Message for the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn pf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
