//! C ABI over the verification toolkit.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free` function. Every fallible call returns an
//! [`EnrStatus`]; on failure [`enr_last_error`] describes the error. Strings
//! returned through out-pointers are owned by the caller and released with
//! [`enr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use enriques::cli::CliError;
use enriques::constructions::{self, CheckStatus};
use enriques::enriques_rules::{classify, EnriquesClass, FibrationFacts};
use enriques::report::Report;
use enriques::suite::run_suite;
use enriques::weierstrass::{builtins, WeierstrassCurve};

/// Result codes. The first five match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnrStatus {
    Ok = 0,
    CheckFailed = 1,
    Internal = 2,
    Parse = 3,
    UnknownBuiltin = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnrCheckStatus {
    Pass = 0,
    Fail = 1,
    Open = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnrSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub open: usize,
}

/// Bits of a class mask returned by [`enr_classify`].
pub const ENR_CLASS_SINGULAR: u32 = 1;
pub const ENR_CLASS_CLASSICAL: u32 = 2;
pub const ENR_CLASS_SUPERSINGULAR: u32 = 4;

/// A verification report.
pub struct EnrReport {
    report: Report,
    ids: Vec<CString>,
}

/// A Weierstrass curve.
pub struct EnrCurve {
    curve: WeierstrassCurve,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(EnrStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Parse(_) => EnrStatus::Parse,
            CliError::UnknownBuiltin(_) => EnrStatus::UnknownBuiltin,
            CliError::Internal(_) => EnrStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn cli<E: Into<CliError>>(e: E) -> Failure {
    e.into().into()
}

fn guard(f: impl FnOnce() -> Result<EnrStatus, Failure>) -> EnrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EnrStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(EnrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(EnrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(EnrStatus::NullPointer, "output pointer is null".into()));
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn enr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn enr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned through an out-pointer of this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn enr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the verification suite. `only` is null or a module name; `jobs` = 0
/// uses all logical processors. Returns `CHECK_FAILED` (with the report
/// still written to `out`) when any check failed.
///
/// # Safety
/// `only` is null or a nul-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_verify_all(only: *const c_char, jobs: u32, out: *mut *mut EnrReport) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let only = if only.is_null() { None } else { Some(read_str(only, "only")?) };
        let jobs = (jobs > 0).then_some(jobs as usize);
        let report = run_suite(only, jobs).map_err(cli)?;
        let ids = report.checks.iter().map(|c| CString::new(c.check_id.clone()).expect("no nul")).collect();
        let failed = report.has_failures();
        *out = Box::into_raw(Box::new(EnrReport { report, ids }));
        Ok(if failed { EnrStatus::CheckFailed } else { EnrStatus::Ok })
    })
}

/// # Safety
/// `report` is null or a live handle from [`enr_verify_all`].
#[no_mangle]
pub unsafe extern "C" fn enr_report_free(report: *mut EnrReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_report_summary(report: *const EnrReport, out: *mut EnrSummary) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let r = report.as_ref().ok_or(Failure(EnrStatus::NullPointer, "report is null".into()))?;
        let s = &r.report.summary;
        *out = EnrSummary { total: s.total, pass: s.pass, fail: s.fail, open: s.open };
        Ok(EnrStatus::Ok)
    })
}

/// The id of check `index`, owned by the report.
///
/// # Safety
/// `report` is a live handle and `id` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_report_check(
    report: *const EnrReport,
    index: usize,
    id: *mut *const c_char,
    status: *mut EnrCheckStatus,
) -> EnrStatus {
    guard(|| {
        check_out(id)?;
        check_out(status)?;
        let r = report.as_ref().ok_or(Failure(EnrStatus::NullPointer, "report is null".into()))?;
        let c = r.report.checks.get(index).ok_or_else(|| {
            Failure(EnrStatus::OutOfRange, format!("index {index} out of range ({} checks)", r.ids.len()))
        })?;
        *id = r.ids[index].as_ptr();
        *status = match c.status {
            CheckStatus::Pass => EnrCheckStatus::Pass,
            CheckStatus::Fail => EnrCheckStatus::Fail,
            CheckStatus::Open => EnrCheckStatus::Open,
        };
        Ok(EnrStatus::Ok)
    })
}

/// Renders the report as JSON (`markdown` = false) or markdown.
///
/// # Safety
/// `report` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_report_render(
    report: *const EnrReport,
    markdown: bool,
    out: *mut *mut c_char,
) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let r = report.as_ref().ok_or(Failure(EnrStatus::NullPointer, "report is null".into()))?;
        *out = into_c_string(if markdown { r.report.to_markdown() } else { r.report.to_json() });
        Ok(EnrStatus::Ok)
    })
}

/// Loads a built-in curve (`E`, `R`, `Ystar`, `kummerEF`).
///
/// # Safety
/// `name` is a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_curve_builtin(name: *const c_char, out: *mut *mut EnrCurve) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let curve = builtins::curve(read_str(name, "name")?).map_err(cli)?;
        *out = Box::into_raw(Box::new(EnrCurve { curve }));
        Ok(EnrStatus::Ok)
    })
}

/// Parses a curve from its JSON file format.
///
/// # Safety
/// `json` is a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_curve_from_json(json: *const c_char, out: *mut *mut EnrCurve) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let curve = WeierstrassCurve::from_json(read_str(json, "json")?).map_err(cli)?;
        *out = Box::into_raw(Box::new(EnrCurve { curve }));
        Ok(EnrStatus::Ok)
    })
}

/// # Safety
/// `curve` is null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn enr_curve_free(curve: *mut EnrCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Writes the discriminant of `curve` as a string.
///
/// # Safety
/// `curve` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_curve_discriminant(curve: *const EnrCurve, out: *mut *mut c_char) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let c = curve.as_ref().ok_or(Failure(EnrStatus::NullPointer, "curve is null".into()))?;
        *out = into_c_string(c.curve.discriminant().map_err(cli)?.to_string());
        Ok(EnrStatus::Ok)
    })
}

/// Writes the bad fibers of a curve over GF(2^k)(t) as a JSON array.
///
/// # Safety
/// `curve` is a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_curve_fibers_json(curve: *const EnrCurve, out: *mut *mut c_char) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let c = curve.as_ref().ok_or(Failure(EnrStatus::NullPointer, "curve is null".into()))?;
        let fibers = c.curve.place_analysis().map_err(cli)?;
        *out = into_c_string(serde_json::to_string(&fibers).expect("serializable"));
        Ok(EnrStatus::Ok)
    })
}

/// Admissible Enriques classes for built-in facts (`factsI` .. `factsVII`)
/// as a mask of `ENR_CLASS_*` bits; 0 means non-existent.
///
/// # Safety
/// `facts` is a nul-terminated string and `mask` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_classify(facts: *const c_char, mask: *mut u32) -> EnrStatus {
    guard(|| {
        check_out(mask)?;
        let facts = FibrationFacts::builtin(read_str(facts, "facts")?).map_err(cli)?;
        let set = classify(&facts).map_err(cli)?;
        *mask = set
            .0
            .iter()
            .map(|c| match c {
                EnriquesClass::Singular => ENR_CLASS_SINGULAR,
                EnriquesClass::Classical => ENR_CLASS_CLASSICAL,
                EnriquesClass::Supersingular => ENR_CLASS_SUPERSINGULAR,
            })
            .fold(0, |a, b| a | b);
        Ok(EnrStatus::Ok)
    })
}

/// Runs the identity checks of one construction and writes them as JSON.
/// Returns `CHECK_FAILED` (with the output written) if any check failed.
///
/// # Safety
/// `name` is a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enr_construction_json(name: *const c_char, out: *mut *mut c_char) -> EnrStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(name, "name")?;
        let reports = constructions::verify_construction(name)
            .ok_or_else(|| Failure(EnrStatus::UnknownBuiltin, format!("unknown construction `{name}`")))?;
        let failed = reports.iter().any(|r| r.status == CheckStatus::Fail);
        *out = into_c_string(serde_json::to_string_pretty(&reports).expect("serializable"));
        Ok(if failed { EnrStatus::CheckFailed } else { EnrStatus::Ok })
    })
}
