//! C ABI over `hns-core`.
//!
//! Names and registries are opaque heap handles released with their
//! `*_free` function. Strings returned through `char **` out-parameters are
//! owned by the caller and released with [`hns_string_free`]. Every call
//! returns an [`HnsStatus`]; on failure [`hns_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hns_core::codec::to_json;
use hns_core::flat::DigestStatus;
use hns_core::sim::{run, ScenarioConfig, SimError};
use hns_core::{
    compute_fc, parse_with, serialize, verify_fc, DigestEncoding, FlatError, Name, ParseOptions,
    Registry,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HnsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    VerifyMismatch = 4,
    MissingFc = 5,
    TruncatedFc = 6,
    ConfigError = 7,
    SimError = 8,
    UnknownCode = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HnsEncoding {
    Hex = 0,
    Base64 = 1,
}

/// Opaque parsed name.
pub struct HnsName {
    inner: Name,
}

/// Opaque application category registry.
pub struct HnsRegistry {
    inner: Registry,
}

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

struct Fail(HnsStatus, String);

type FfiResult = Result<(), Fail>;

fn guard(f: impl FnOnce() -> FfiResult) -> HnsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HnsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HnsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HnsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(HnsStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(HnsStatus::NullArgument, format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(HnsStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next `hns_*` call on the same thread.
#[no_mangle]
pub extern "C" fn hns_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses canonical name text. `lenient` accepts truncated hex digests.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_name_parse(
    text: *const c_char,
    lenient: bool,
    out: *mut *mut HnsName,
) -> HnsStatus {
    guard(|| {
        out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        let opts = if lenient {
            ParseOptions::lenient()
        } else {
            ParseOptions::default()
        };
        let name = parse_with(text, opts).map_err(|e| Fail(HnsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(HnsName { inner: name }));
        Ok(())
    })
}

/// # Safety
/// `name` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hns_name_free(name: *mut HnsName) {
    if !name.is_null() {
        drop(Box::from_raw(name));
    }
}

/// Canonical text of `name`.
///
/// # Safety
/// `name` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_name_serialize(name: *const HnsName, out: *mut *mut c_char) -> HnsStatus {
    guard(|| {
        out_arg(out, "out")?;
        let name = ref_arg(name, "name")?;
        *out = c_string(serialize(&name.inner));
        Ok(())
    })
}

/// Structured JSON dump of `name`.
///
/// # Safety
/// `name` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_name_to_json(name: *const HnsName, out: *mut *mut c_char) -> HnsStatus {
    guard(|| {
        out_arg(out, "out")?;
        let name = ref_arg(name, "name")?;
        *out = c_string(to_json(&name.inner).to_string());
        Ok(())
    })
}

/// New handle: `name` with a freshly computed flat component.
///
/// # Safety
/// `name` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_name_with_fc(
    name: *const HnsName,
    encoding: HnsEncoding,
    out: *mut *mut HnsName,
) -> HnsStatus {
    guard(|| {
        out_arg(out, "out")?;
        let name = ref_arg(name, "name")?;
        let enc = match encoding {
            HnsEncoding::Hex => DigestEncoding::Hex,
            HnsEncoding::Base64 => DigestEncoding::Base64,
        };
        let fc = compute_fc(name.inner.hc(), enc);
        let named = name
            .inner
            .with_fc(Some(fc))
            .map_err(|e| Fail(HnsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(HnsName { inner: named }));
        Ok(())
    })
}

/// `HNS_STATUS_OK` when every stored digest matches the recomputed one.
/// With `lenient`, truncated digests pass on a hex-prefix match.
///
/// # Safety
/// `name` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hns_name_verify(name: *const HnsName, lenient: bool) -> HnsStatus {
    guard(|| {
        let name = ref_arg(name, "name")?;
        let report = verify_fc(&name.inner, lenient).map_err(|e| match e {
            FlatError::MissingFlatComponent => Fail(HnsStatus::MissingFc, e.to_string()),
            FlatError::TruncatedDigest(_) => Fail(HnsStatus::TruncatedFc, e.to_string()),
        })?;
        if report.overall() || (lenient && report.prefix_consistent()) {
            Ok(())
        } else {
            let bad: Vec<_> = report
                .checks
                .iter()
                .filter(|c| matches!(c.status, DigestStatus::Mismatch | DigestStatus::PrefixMismatch))
                .map(|c| c.field)
                .collect();
            Err(Fail(
                HnsStatus::VerifyMismatch,
                format!("digest mismatch: {}", bad.join(", ")),
            ))
        }
    })
}

/// The built-in registry.
#[no_mangle]
pub extern "C" fn hns_registry_default() -> *mut HnsRegistry {
    Box::into_raw(Box::new(HnsRegistry {
        inner: Registry::default_registry(),
    }))
}

/// Registry from `CODE<TAB>Title<TAB>Description` lines.
///
/// # Safety
/// `tsv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_registry_from_tsv(tsv: *const c_char, out: *mut *mut HnsRegistry) -> HnsStatus {
    guard(|| {
        out_arg(out, "out")?;
        let tsv = str_arg(tsv, "tsv")?;
        let reg = Registry::from_tsv(tsv).map_err(|e| Fail(HnsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(HnsRegistry { inner: reg }));
        Ok(())
    })
}

/// # Safety
/// `registry` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hns_registry_free(registry: *mut HnsRegistry) {
    if !registry.is_null() {
        drop(Box::from_raw(registry));
    }
}

/// Number of categories; 0 for NULL.
///
/// # Safety
/// `registry` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hns_registry_len(registry: *const HnsRegistry) -> usize {
    registry.as_ref().map_or(0, |r| r.inner.len())
}

/// Title of the category registered under `code`.
///
/// # Safety
/// `registry` must be a live handle, `code` a NUL-terminated string and
/// `title_out` writable.
#[no_mangle]
pub unsafe extern "C" fn hns_registry_lookup(
    registry: *const HnsRegistry,
    code: *const c_char,
    title_out: *mut *mut c_char,
) -> HnsStatus {
    guard(|| {
        out_arg(title_out, "title_out")?;
        let registry = ref_arg(registry, "registry")?;
        let code = str_arg(code, "code")?;
        let cat = registry
            .inner
            .lookup(code)
            .map_err(|e| Fail(HnsStatus::UnknownCode, e.to_string()))?;
        *title_out = c_string(cat.title().to_string());
        Ok(())
    })
}

/// Runs a scenario document. `seed` overrides the scenario seed unless NULL.
/// `metrics_out` receives the JSON metrics report; `trace_out`, if not NULL,
/// receives the effect trace.
///
/// # Safety
/// `scenario_json` must be a NUL-terminated string; `seed` NULL or readable;
/// `metrics_out` writable; `trace_out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hns_sim_run_json(
    scenario_json: *const c_char,
    seed: *const u64,
    metrics_out: *mut *mut c_char,
    trace_out: *mut *mut c_char,
) -> HnsStatus {
    guard(|| {
        out_arg(metrics_out, "metrics_out")?;
        let text = str_arg(scenario_json, "scenario_json")?;
        let config = |e: hns_core::sim::ConfigError| Fail(HnsStatus::ConfigError, e.to_string());
        let mut scenario = ScenarioConfig::from_json(text).map_err(config)?.validate().map_err(config)?;
        if let Some(s) = seed.as_ref() {
            scenario.seed = *s;
        }
        let output = run(&scenario).map_err(|e: SimError| Fail(HnsStatus::SimError, e.to_string()))?;
        *metrics_out = c_string(output.metrics.to_json());
        if !trace_out.is_null() {
            *trace_out = c_string(output.trace_text());
        }
        Ok(())
    })
}
