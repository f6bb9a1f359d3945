use std::ffi::{CStr, CString};
use std::ptr;

use polyfun_ffi::*;

const VERONESE: &str = include_str!("../../core/corpus/veronese.pf");

fn parse(text: &str) -> (PfStatus, *mut PfDocument) {
    let text = CString::new(text).unwrap();
    let mut doc = ptr::null_mut();
    let status = unsafe { pf_document_parse(text.as_ptr(), &mut doc) };
    (status, doc)
}

fn run(doc: *const PfDocument, args: &[&str]) -> (PfStatus, *mut PfReport) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let argv: Vec<*const std::ffi::c_char> = owned.iter().map(|a| a.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let status = unsafe { pf_run(doc, argv.len(), argv.as_ptr(), &mut report) };
    (status, report)
}

fn text(p: *const std::ffi::c_char) -> String {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn parse_print_and_free() {
    let (status, doc) = parse(VERONESE);
    assert_eq!(status, PfStatus::PfOk);
    assert_eq!(unsafe { pf_document_len(doc) }, 2);
    let printed = text(unsafe { pf_document_print(doc) });
    let (again, doc2) = parse(&printed);
    assert_eq!(again, PfStatus::PfOk);
    assert_eq!(text(unsafe { pf_document_print(doc2) }), printed);
    unsafe {
        pf_document_free(doc);
        pf_document_free(doc2);
    }
}

#[test]
fn syntax_errors_report_input_status() {
    let (status, doc) = parse("field Q;\nmorphism oops :");
    assert_eq!(status, PfStatus::PfInputError);
    assert!(doc.is_null());
    assert!(!text(pf_last_error()).is_empty());
}

#[test]
fn null_arguments_are_rejected() {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { pf_document_parse(ptr::null(), &mut doc) }, PfStatus::PfNullArgument);
    assert_eq!(unsafe { pf_document_parse(ptr::null(), ptr::null_mut()) }, PfStatus::PfNullArgument);
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { pf_run(ptr::null(), 0, ptr::null(), &mut report) }, PfStatus::PfNullArgument);
    assert!(unsafe { pf_document_print(ptr::null()) }.is_null());
    assert_eq!(unsafe { pf_report_status(ptr::null()) }, PfStatus::PfNullArgument);
    unsafe {
        pf_document_free(ptr::null_mut());
        pf_report_free(ptr::null_mut());
    }
}

#[test]
fn implicitise_through_the_handle() {
    let (_, doc) = parse(VERONESE);
    let (status, report) = run(doc, &["implicitise", "square", "--max-n", "4"]);
    assert_eq!(status, PfStatus::PfOk);
    assert_eq!(unsafe { pf_report_status(report) }, PfStatus::PfOk);
    let body = text(unsafe { pf_report_body(report) });
    assert!(body.contains("y.0.0.12^2"), "{}", body);
    let full = text(unsafe { pf_report_text(report) });
    assert!(full.starts_with(&body) && full.contains("elapsed_ms"));
    unsafe {
        pf_report_free(report);
        pf_document_free(doc);
    }
}

#[test]
fn bad_arguments_and_unknown_names() {
    let (_, doc) = parse(VERONESE);
    let (status, report) = run(doc, &["implicitise", "--bogus"]);
    assert_eq!(status, PfStatus::PfInputError);
    assert!(report.is_null());
    let (status, _) = run(doc, &["instances", "nothing", "--dim", "1"]);
    assert_eq!(status, PfStatus::PfInputError);
    assert!(text(pf_last_error()).contains("nothing"));
    unsafe { pf_document_free(doc) };
}
