//! Exercise the C surface through the exported symbols, the way a
//! foreign binding would.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use esgames_capi::{
    esg_build, esg_bundle_free, esg_bundle_parse, esg_bundle_validate, esg_export_dot,
    esg_last_error, esg_schema_version, esg_search_uniform, esg_string_free, EsgBundle,
    EsgStatus,
};

fn catalog_bundle(name: &str) -> CString {
    let bundles = esgames::fixtures::catalog().unwrap();
    CString::new(bundles[name].to_json()).unwrap()
}

unsafe fn parse(json: &CString) -> *mut EsgBundle {
    let mut handle: *mut EsgBundle = ptr::null_mut();
    let status = esg_bundle_parse(json.as_ptr(), &mut handle);
    assert!(status == EsgStatus::Ok, "{}", last_error());
    assert!(!handle.is_null());
    handle
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(esg_last_error()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = CStr::from_ptr(ptr).to_string_lossy().into_owned();
    esg_string_free(ptr);
    text
}

#[test]
fn schema_version_is_exposed() {
    assert_eq!(esg_schema_version(), 1);
}

#[test]
fn parse_validate_free_round_trip() {
    let json = catalog_bundle("column_swap");
    unsafe {
        let handle = parse(&json);
        let mut report: *mut c_char = ptr::null_mut();
        let status = esg_bundle_validate(handle, &mut report);
        assert!(status == EsgStatus::Ok, "{}", last_error());
        let text = take_string(report);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["ok"], serde_json::json!(true));
        assert_eq!(parsed["schema_version"], serde_json::json!(1));
        esg_bundle_free(handle);
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    let bad = CString::new("{ not json").unwrap();
    let mut handle: *mut EsgBundle = ptr::null_mut();
    let status = unsafe { esg_bundle_parse(bad.as_ptr(), &mut handle) };
    assert!(status == EsgStatus::InputError);
    assert!(last_error().contains("parse error"));
    assert!(handle.is_null());
}

#[test]
fn validation_failure_returns_status_one_with_a_report() {
    // Strip the expect-fail tag so the negative fixture actually fails.
    let bundles = esgames::fixtures::catalog().unwrap();
    let mut value: serde_json::Value =
        serde_json::from_str(&bundles["negative"].to_json()).unwrap();
    value["documents"]["broken-heredity"]
        .as_object_mut()
        .unwrap()
        .remove("expect_fail");
    let json = CString::new(value.to_string()).unwrap();
    unsafe {
        let handle = parse(&json);
        let mut report: *mut c_char = ptr::null_mut();
        let status = esg_bundle_validate(handle, &mut report);
        assert!(status == EsgStatus::ValidationFailed);
        let text = take_string(report);
        assert!(text.contains("conflict.hereditary"));
        esg_bundle_free(handle);
    }
}

#[test]
fn build_dual_returns_a_valid_bundle() {
    let json = catalog_bundle("column_swap");
    let construction = CString::new("dual").unwrap();
    let args = CString::new(r#"{"game":"column-swap"}"#).unwrap();
    unsafe {
        let handle = parse(&json);
        let mut out: *mut c_char = ptr::null_mut();
        let status = esg_build(handle, construction.as_ptr(), args.as_ptr(), &mut out);
        assert!(status == EsgStatus::Ok, "{}", last_error());
        let text = take_string(out);
        let built = CString::new(text).unwrap();
        let rebuilt = parse(&built);
        let mut report: *mut c_char = ptr::null_mut();
        assert!(esg_bundle_validate(rebuilt, &mut report) == EsgStatus::Ok);
        esg_string_free(report);
        esg_bundle_free(rebuilt);
        esg_bundle_free(handle);
    }
}

#[test]
fn search_uniform_reports_both_verdicts() {
    let token2 = catalog_bundle("token2");
    let echo = CString::new("echo").unwrap();
    unsafe {
        let handle = parse(&token2);
        let mut out: *mut c_char = ptr::null_mut();
        let status = esg_search_uniform(handle, echo.as_ptr(), 0, true, &mut out);
        assert!(status == EsgStatus::Ok, "{}", last_error());
        let text = take_string(out);
        assert!(text.contains("uniform-strategy"));
        esg_bundle_free(handle);
    }
    let token3 = catalog_bundle("token3");
    let trigger = CString::new("single-trigger").unwrap();
    unsafe {
        let handle = parse(&token3);
        let mut out: *mut c_char = ptr::null_mut();
        let status = esg_search_uniform(handle, trigger.as_ptr(), 0, true, &mut out);
        assert!(status == EsgStatus::Ok, "{}", last_error());
        let text = take_string(out);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["result"], serde_json::json!("none"));
        assert!(parsed["certificate"]["elements"].as_array().is_some());
        esg_bundle_free(handle);
    }
}

#[test]
fn export_dot_is_deterministic_through_the_abi() {
    let json = catalog_bundle("token2");
    let doc = CString::new("echo").unwrap();
    let view = CString::new("causality").unwrap();
    unsafe {
        let handle = parse(&json);
        let mut first: *mut c_char = ptr::null_mut();
        let mut second: *mut c_char = ptr::null_mut();
        assert!(esg_export_dot(handle, doc.as_ptr(), view.as_ptr(), &mut first) == EsgStatus::Ok);
        assert!(esg_export_dot(handle, doc.as_ptr(), view.as_ptr(), &mut second) == EsgStatus::Ok);
        let a = take_string(first);
        let b = take_string(second);
        assert_eq!(a, b);
        assert!(a.starts_with("digraph es {"));
        esg_bundle_free(handle);
    }
}

#[test]
fn null_arguments_are_input_errors() {
    unsafe {
        let mut handle: *mut EsgBundle = ptr::null_mut();
        assert!(esg_bundle_parse(ptr::null(), &mut handle) == EsgStatus::InputError);
        let mut out: *mut c_char = ptr::null_mut();
        assert!(esg_bundle_validate(ptr::null(), &mut out) == EsgStatus::InputError);
        assert!(!last_error().is_empty());
        esg_bundle_free(ptr::null_mut());
        esg_string_free(ptr::null_mut());
    }
}
