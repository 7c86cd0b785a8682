//! Exercises the C ABI from Rust: lifecycle, the text round-trip through
//! build / extract / verify, status codes for every failure class, and the
//! null-safety of the free functions.

use std::ffi::{c_char, CStr, CString};

use gallai_capi::{
    gallai_build_set, gallai_engine_free, gallai_engine_new, gallai_extract, gallai_last_error,
    gallai_random_sweep, gallai_string_free, gallai_verify, GallaiEngine, GallaiStatus,
};

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(gallai_last_error())
            .to_str()
            .unwrap()
            .to_string()
    }
}

/// Copy an out-string into Rust and free the C side.
fn take(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null(), "expected an out-string, got null");
    unsafe {
        let text = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        gallai_string_free(ptr);
        text
    }
}

fn fig1_engine() -> *mut GallaiEngine {
    let spec = c("fig1");
    let engine = unsafe { gallai_engine_new(spec.as_ptr(), 0) };
    assert!(!engine.is_null(), "engine_new failed: {}", last_error());
    engine
}

/// `delta(3,2,1)` over the fig1 base, every point the same color.
const CONSTANT_COLORING: &str = "gallai-coloring v1\n\
     k 2\n\
     0 0 0\n\
     10 0 0\n\
     10 5 0\n\
     20 0 0\n\
     20 5 0\n\
     20 10 0\n";

#[test]
fn engine_builds_the_documented_segment() {
    let engine = fig1_engine();
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { gallai_build_set(engine, 2, 2, 0, &mut out) };
    assert_eq!(status, GallaiStatus::Ok);
    assert_eq!(take(out), "gallai-set v1\n0 0\n10 0\n20 0\n");
    assert_eq!(last_error(), "");
    unsafe { gallai_engine_free(engine) };
}

#[test]
fn engine_accepts_base_text() {
    let spec = c("gallai-base v1\n0 0\n10 0\n10 5\n0 13\n");
    let engine = unsafe { gallai_engine_new(spec.as_ptr(), 0) };
    assert!(!engine.is_null(), "{}", last_error());
    let mut from_text: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { gallai_build_set(engine, 3, 2, 1, &mut from_text) },
        GallaiStatus::Ok
    );
    unsafe { gallai_engine_free(engine) };

    let preset = fig1_engine();
    let mut from_preset: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { gallai_build_set(preset, 3, 2, 1, &mut from_preset) },
        GallaiStatus::Ok
    );
    unsafe { gallai_engine_free(preset) };

    assert_eq!(take(from_text), take(from_preset));
}

#[test]
fn bad_base_spec_returns_null_with_message() {
    let spec = c("momnt");
    let engine = unsafe { gallai_engine_new(spec.as_ptr(), 0) };
    assert!(engine.is_null());
    assert!(
        last_error().contains("gallai-base v1"),
        "unexpected message: {}",
        last_error()
    );

    let engine = unsafe { gallai_engine_new(std::ptr::null(), 0) };
    assert!(engine.is_null());
    assert!(last_error().contains("must not be null"));
}

#[test]
fn resource_budget_is_enforced() {
    let spec = c("fig1");
    let engine = unsafe { gallai_engine_new(spec.as_ptr(), 10) };
    assert!(!engine.is_null());
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { gallai_build_set(engine, 3, 2, 0, &mut out) };
    assert_eq!(status, GallaiStatus::Resource);
    assert!(out.is_null(), "out must stay null on failure");
    assert!(
        last_error().contains("limit"),
        "unexpected message: {}",
        last_error()
    );
    unsafe { gallai_engine_free(engine) };
}

#[test]
fn extract_verify_tamper_cycle() {
    let engine = fig1_engine();

    let mut set_out: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { gallai_build_set(engine, 3, 2, 1, &mut set_out) },
        GallaiStatus::Ok
    );
    let set_text = take(set_out);

    let coloring = c(CONSTANT_COLORING);
    let mut witness_out: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { gallai_extract(engine, 3, 2, 1, coloring.as_ptr(), &mut witness_out) },
        GallaiStatus::Ok
    );
    let witness_text = take(witness_out);
    assert_eq!(
        witness_text,
        "gallai-witness v1\nn 3\nm 1\na 0 0\nlambda 0 0\nlambda 1 1\n"
    );

    let witness = c(&witness_text);
    let set = c(&set_text);
    assert_eq!(
        unsafe { gallai_verify(engine, witness.as_ptr(), coloring.as_ptr(), set.as_ptr()) },
        GallaiStatus::Ok
    );
    assert_eq!(last_error(), "");

    let tampered_text = witness_text.replace("lambda 1 1", "lambda 1 5");
    assert_ne!(tampered_text, witness_text);
    let tampered = c(&tampered_text);
    assert_eq!(
        unsafe { gallai_verify(engine, tampered.as_ptr(), coloring.as_ptr(), set.as_ptr()) },
        GallaiStatus::Invalid
    );
    assert!(
        last_error().contains("containment"),
        "unexpected message: {}",
        last_error()
    );

    unsafe { gallai_engine_free(engine) };
}

#[test]
fn extraction_is_deterministic_across_calls() {
    let engine = fig1_engine();
    let coloring = c(CONSTANT_COLORING);
    let mut texts = Vec::new();
    for _ in 0..3 {
        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            unsafe { gallai_extract(engine, 3, 2, 1, coloring.as_ptr(), &mut out) },
            GallaiStatus::Ok
        );
        texts.push(take(out));
    }
    assert!(texts.windows(2).all(|w| w[0] == w[1]));
    unsafe { gallai_engine_free(engine) };
}

#[test]
fn malformed_text_is_a_format_error() {
    let engine = fig1_engine();

    let garbage = c("not a coloring at all");
    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { gallai_extract(engine, 3, 2, 1, garbage.as_ptr(), &mut out) },
        GallaiStatus::Format
    );
    assert!(out.is_null());

    let witness = c("gallai-witness v1\nn 3\nh oops 0 1\n");
    let coloring = c(CONSTANT_COLORING);
    let set = c("gallai-set v1\n0 0\n");
    assert_eq!(
        unsafe { gallai_verify(engine, witness.as_ptr(), coloring.as_ptr(), set.as_ptr()) },
        GallaiStatus::Format
    );
    assert!(last_error().contains("line"));

    unsafe { gallai_engine_free(engine) };
}

#[test]
fn coloring_arity_above_k_is_a_usage_error() {
    let engine = fig1_engine();
    let coloring = c(&CONSTANT_COLORING.replace("k 2", "k 3"));
    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { gallai_extract(engine, 3, 2, 1, coloring.as_ptr(), &mut out) },
        GallaiStatus::Usage
    );
    assert!(
        last_error().contains("exceeds"),
        "unexpected message: {}",
        last_error()
    );
    unsafe { gallai_engine_free(engine) };
}

#[test]
fn null_arguments_are_usage_errors() {
    let engine = fig1_engine();
    let coloring = c(CONSTANT_COLORING);
    let mut out: *mut c_char = std::ptr::null_mut();
    unsafe {
        assert_eq!(
            gallai_build_set(std::ptr::null(), 2, 2, 0, &mut out),
            GallaiStatus::Usage
        );
        assert_eq!(
            gallai_build_set(engine, 2, 2, 0, std::ptr::null_mut()),
            GallaiStatus::Usage
        );
        assert_eq!(
            gallai_extract(engine, 3, 2, 1, std::ptr::null(), &mut out),
            GallaiStatus::Usage
        );
        assert_eq!(
            gallai_verify(engine, std::ptr::null(), coloring.as_ptr(), std::ptr::null()),
            GallaiStatus::Usage
        );
        assert_eq!(
            gallai_random_sweep(std::ptr::null(), 3, 2, 1, 5, 0, &mut out),
            GallaiStatus::Usage
        );
        gallai_engine_free(engine);
    }
}

#[test]
fn free_functions_ignore_null() {
    unsafe {
        gallai_engine_free(std::ptr::null_mut());
        gallai_string_free(std::ptr::null_mut());
    }
}

#[test]
fn random_sweep_reports_deterministic_totals() {
    let engine = fig1_engine();
    let mut first: *mut c_char = std::ptr::null_mut();
    let mut second: *mut c_char = std::ptr::null_mut();
    unsafe {
        assert_eq!(
            gallai_random_sweep(engine, 3, 2, 1, 25, 7, &mut first),
            GallaiStatus::Ok
        );
        assert_eq!(
            gallai_random_sweep(engine, 3, 2, 1, 25, 7, &mut second),
            GallaiStatus::Ok
        );
        gallai_engine_free(engine);
    }
    let report = take(first);
    assert_eq!(
        report,
        "gallai-sweep v1\ntotal 25\npassed 25\nfirst_failure none\n"
    );
    assert_eq!(report, take(second));
}
