//! C ABI for the witness-set engine.
//!
//! Everything crosses the boundary as NUL-terminated UTF-8 text in the same
//! `gallai-* v1` formats the CLI reads and writes, so a C caller can pipe
//! engine output straight into files the CLI understands and vice versa.
//! Handles are opaque, strings returned through out-parameters are owned by
//! the caller and released with [`gallai_string_free`], and every entry point
//! catches panics.
//!
//! Status codes mirror the CLI exit codes:
//!
//! * 0 success (for verification: the witness is valid)
//! * 1 verification failed, or an internal proof invariant broke
//! * 2 usage error (null pointer, bad argument, unsatisfiable precondition)
//! * 3 resource budget exceeded
//! * 4 malformed input text
//!
//! After any non-zero status, [`gallai_last_error`] returns a human-readable
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigUint;

use gallai_core::base::BaseSequence;
use gallai_core::budget::ResourceBudget;
use gallai_core::construct::Builder;
use gallai_core::error::Error;
use gallai_core::extract::Extractor;
use gallai_core::io::{
    parse_base, parse_coloring, parse_set, parse_witness, write_delta_witness, write_phi_witness,
    write_set, write_sweep_report, WitnessFile,
};
use gallai_core::verify::{check_delta_witness, check_phi_witness, random_sweep, SweepTarget};

/// Largest base-sequence index materialized for the `moment` preset.
const MOMENT_PRESET_MAX_INDEX: usize = 8;

/// Result of an engine call. Numeric values are stable and match the CLI
/// exit codes, so a wrapper can forward them unchanged.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GallaiStatus {
    /// The call succeeded. For `gallai_verify`: the witness is valid.
    Ok = 0,
    /// A witness or sweep failed verification, or an internal invariant broke.
    Invalid = 1,
    /// A usage error: null pointer, invalid UTF-8, or an argument that
    /// violates a precondition (for example a coloring with more colors
    /// than the requested k).
    Usage = 2,
    /// The construction would exceed the engine's resource budget.
    Resource = 3,
    /// Input text did not parse in the expected `gallai-* v1` format.
    Format = 4,
}

/// Opaque engine handle. Owns the base point sequence and the resource
/// budget shared by every operation. Create with `gallai_engine_new`,
/// release with `gallai_engine_free`. The handle is immutable after
/// creation, so sharing one engine across threads is safe.
pub struct GallaiEngine {
    builder: Builder,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).expect("NUL bytes were just removed");
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

fn status_of(err: &Error) -> GallaiStatus {
    match err {
        Error::ResourceLimit { .. } => GallaiStatus::Resource,
        Error::Format { .. } => GallaiStatus::Format,
        Error::InternalProof(_) => GallaiStatus::Invalid,
        _ => GallaiStatus::Usage,
    }
}

fn fail(err: &Error) -> GallaiStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Run `body` with a panic guard. A panic is reported like a broken internal
/// invariant: status 1 plus a message, never an unwind across the ABI.
fn guarded<F>(body: F) -> GallaiStatus
where
    F: FnOnce() -> GallaiStatus,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let detail = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(&format!("internal panic: {detail}"));
            GallaiStatus::Invalid
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn text_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, GallaiStatus> {
    if ptr.is_null() {
        set_error(&format!("{name} must not be null"));
        return Err(GallaiStatus::Usage);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{name} must be valid UTF-8"));
        GallaiStatus::Usage
    })
}

/// # Safety
/// `ptr` must be null or a pointer obtained from `gallai_engine_new`.
unsafe fn engine_arg<'a>(ptr: *const GallaiEngine) -> Result<&'a GallaiEngine, GallaiStatus> {
    if ptr.is_null() {
        set_error("engine must not be null");
        return Err(GallaiStatus::Usage);
    }
    Ok(&*ptr)
}

/// # Safety
/// `out` must be null or a valid write target.
unsafe fn out_arg(out: *mut *mut c_char, name: &str) -> Result<(), GallaiStatus> {
    if out.is_null() {
        set_error(&format!("{name} must not be null"));
        return Err(GallaiStatus::Usage);
    }
    *out = std::ptr::null_mut();
    Ok(())
}

/// # Safety
/// `out` was validated by `out_arg`.
unsafe fn hand_out(out: *mut *mut c_char, text: String) -> Result<(), GallaiStatus> {
    match CString::new(text) {
        Ok(owned) => {
            *out = owned.into_raw();
            Ok(())
        }
        Err(_) => {
            set_error("engine produced text with an interior NUL byte");
            Err(GallaiStatus::Invalid)
        }
    }
}

fn resolve_base(spec: &str) -> gallai_core::Result<BaseSequence> {
    match spec.trim() {
        "moment" | "fig1" => BaseSequence::preset(spec.trim(), MOMENT_PRESET_MAX_INDEX),
        text => parse_base(text),
    }
}

fn sweep_target(n: usize, k: u64, m: u64) -> SweepTarget {
    if m == 0 {
        SweepTarget::Phi { n, k }
    } else {
        SweepTarget::Delta { n, k, m }
    }
}

/// Create an engine.
///
/// `base_spec` is either a preset name (`moment` or `fig1`) or the complete
/// text of a `gallai-base v1` file describing the point sequence whose
/// prefixes are the sets all homothetic copies replicate. `max_points` caps
/// the size of any constructed point set; pass 0 for the default cap of
/// 1,000,000 points.
///
/// Returns null on failure; `gallai_last_error` then describes the problem.
///
/// # Safety
/// `base_spec` must be null or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gallai_engine_new(
    base_spec: *const c_char,
    max_points: usize,
) -> *mut GallaiEngine {
    let result = catch_unwind(AssertUnwindSafe(|| {
        clear_error();
        let spec = match text_arg(base_spec, "base_spec") {
            Ok(s) => s,
            Err(_) => return std::ptr::null_mut(),
        };
        let base = match resolve_base(spec) {
            Ok(base) => base,
            Err(err) => {
                fail(&err);
                return std::ptr::null_mut();
            }
        };
        let budget = if max_points == 0 {
            ResourceBudget::default()
        } else {
            match ResourceBudget::new(max_points, ResourceBudget::default().max_color_count) {
                Ok(budget) => budget,
                Err(err) => {
                    fail(&err);
                    return std::ptr::null_mut();
                }
            }
        };
        Box::into_raw(Box::new(GallaiEngine {
            builder: Builder::new(base, budget),
        }))
    }));
    match result {
        Ok(ptr) => ptr,
        Err(_) => {
            set_error("internal panic while creating the engine");
            std::ptr::null_mut()
        }
    }
}

/// Release an engine created by `gallai_engine_new`. Null is ignored.
///
/// # Safety
/// `engine` must be null or a pointer obtained from `gallai_engine_new`
/// that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn gallai_engine_free(engine: *mut GallaiEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Message for the most recent failure on the calling thread, empty after a
/// success. The pointer stays valid until the next engine call on the same
/// thread; copy the text if it must outlive that.
#[no_mangle]
pub extern "C" fn gallai_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Build a witness set and return it as `gallai-set v1` text in `*out_text`.
///
/// With `m == 0` the full set `phi(n, k)` is built: every k-coloring of it
/// contains a monochromatic homothetic copy of the first n base points.
/// With `m >= 1` the intermediate set `delta(n, k, m)` is built instead.
/// The caller owns `*out_text` and releases it with `gallai_string_free`.
///
/// # Safety
/// `engine` must come from `gallai_engine_new`; `out_text` must be a valid
/// write target.
#[no_mangle]
pub unsafe extern "C" fn gallai_build_set(
    engine: *const GallaiEngine,
    n: usize,
    k: u64,
    m: u64,
    out_text: *mut *mut c_char,
) -> GallaiStatus {
    guarded(|| {
        clear_error();
        let engine = match engine_arg(engine) {
            Ok(e) => e,
            Err(status) => return status,
        };
        if let Err(status) = out_arg(out_text, "out_text") {
            return status;
        }
        let kk = BigUint::from(k);
        let set = if m == 0 {
            engine.builder.phi(n, &kk)
        } else {
            engine.builder.delta(n, &kk, m)
        };
        match set {
            Ok(set) => match hand_out(out_text, write_set(&set)) {
                Ok(()) => GallaiStatus::Ok,
                Err(status) => status,
            },
            Err(err) => fail(&err),
        }
    })
}

/// Run the extraction algorithm on a coloring and return the witness as
/// `gallai-witness v1` text in `*out_witness`.
///
/// `coloring_text` is a `gallai-coloring v1` document whose domain must
/// cover the target set. With `m == 0` the target is `phi(n, k)` and the
/// witness is a single homothety; with `m >= 1` the target is
/// `delta(n, k, m)` and the witness is an anchored scalar system. The
/// coloring may use fewer than `k` colors but never more. The caller owns
/// `*out_witness`.
///
/// # Safety
/// `engine` must come from `gallai_engine_new`; `coloring_text` must be a
/// valid NUL-terminated string; `out_witness` must be a valid write target.
#[no_mangle]
pub unsafe extern "C" fn gallai_extract(
    engine: *const GallaiEngine,
    n: usize,
    k: u64,
    m: u64,
    coloring_text: *const c_char,
    out_witness: *mut *mut c_char,
) -> GallaiStatus {
    guarded(|| {
        clear_error();
        let engine = match engine_arg(engine) {
            Ok(e) => e,
            Err(status) => return status,
        };
        let text = match text_arg(coloring_text, "coloring_text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        if let Err(status) = out_arg(out_witness, "out_witness") {
            return status;
        }
        let f = match parse_coloring(text) {
            Ok(f) => f,
            Err(err) => return fail(&err),
        };
        let kk = BigUint::from(k);
        if f.arity() > &kk {
            set_error(&format!("coloring arity {} exceeds k {k}", f.arity()));
            return GallaiStatus::Usage;
        }
        let extractor = Extractor::new(&engine.builder);
        let witness = if m == 0 {
            extractor.extract_phi(n, &kk, &f).map(|w| write_phi_witness(&w))
        } else {
            extractor
                .extract_delta(n, &kk, m, &f)
                .map(|w| write_delta_witness(&w))
        };
        match witness {
            Ok(text) => match hand_out(out_witness, text) {
                Ok(()) => GallaiStatus::Ok,
                Err(status) => status,
            },
            Err(err) => fail(&err),
        }
    })
}

/// Check a witness against a coloring and a target set, all given as text.
///
/// Returns `Ok` when the witness is valid. Returns `Invalid` when it is
/// well-formed but wrong; `gallai_last_error` then lists the violations
/// (containment, monochromaticity, or a broken scalar ladder).
///
/// # Safety
/// `engine` must come from `gallai_engine_new`; the three text arguments
/// must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn gallai_verify(
    engine: *const GallaiEngine,
    witness_text: *const c_char,
    coloring_text: *const c_char,
    set_text: *const c_char,
) -> GallaiStatus {
    guarded(|| {
        clear_error();
        let engine = match engine_arg(engine) {
            Ok(e) => e,
            Err(status) => return status,
        };
        let witness = match text_arg(witness_text, "witness_text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let coloring = match text_arg(coloring_text, "coloring_text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let set = match text_arg(set_text, "set_text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let w = match parse_witness(witness) {
            Ok(w) => w,
            Err(err) => return fail(&err),
        };
        let f = match parse_coloring(coloring) {
            Ok(f) => f,
            Err(err) => return fail(&err),
        };
        let target = match parse_set(set) {
            Ok(v) => v,
            Err(err) => return fail(&err),
        };
        let base = engine.builder.base();
        let report = match &w {
            WitnessFile::Phi(w) => check_phi_witness(&f, w, &target, base),
            WitnessFile::Delta(w) => check_delta_witness(&f, w, &target, base),
        };
        match report {
            Ok(report) if report.valid() => GallaiStatus::Ok,
            Ok(report) => {
                set_error(&report.summary());
                GallaiStatus::Invalid
            }
            Err(err) => fail(&err),
        }
    })
}

/// Re-verify the extraction pipeline on `trials` pseudorandom colorings and
/// return the outcome as `gallai-sweep v1` text in `*out_report`.
///
/// The target set is `phi(n, k)` when `m == 0`, otherwise `delta(n, k, m)`.
/// Colorings are derived deterministically from `seed`, so a run is exactly
/// reproducible. Returns `Ok` when every trial passed and `Invalid` when at
/// least one failed; in both cases `*out_report` is set and the report's
/// `first_failure` field names the first failing seed. The caller owns
/// `*out_report`.
///
/// # Safety
/// `engine` must come from `gallai_engine_new`; `out_report` must be a
/// valid write target.
#[no_mangle]
pub unsafe extern "C" fn gallai_random_sweep(
    engine: *const GallaiEngine,
    n: usize,
    k: u64,
    m: u64,
    trials: u64,
    seed: u64,
    out_report: *mut *mut c_char,
) -> GallaiStatus {
    guarded(|| {
        clear_error();
        let engine = match engine_arg(engine) {
            Ok(e) => e,
            Err(status) => return status,
        };
        if let Err(status) = out_arg(out_report, "out_report") {
            return status;
        }
        let report = match random_sweep(&engine.builder, sweep_target(n, k, m), trials, seed) {
            Ok(report) => report,
            Err(err) => return fail(&err),
        };
        let all_passed = report.all_passed();
        let first = report.first_failure;
        if let Err(status) = hand_out(out_report, write_sweep_report(&report)) {
            return status;
        }
        if all_passed {
            GallaiStatus::Ok
        } else {
            match first {
                Some(seed) => set_error(&format!("sweep failed, first failing seed {seed}")),
                None => set_error("sweep failed"),
            }
            GallaiStatus::Invalid
        }
    })
}

/// Release a string returned through any `out` parameter. Null is ignored.
///
/// # Safety
/// `text` must be null or a string returned by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn gallai_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
