//! C ABI over the afinv library.
//!
//! Conventions:
//! * Every fallible function returns an `AfinvStatus`; on failure a message
//!   is available from `afinv_last_error_message` on the same thread.
//! * Objects are opaque handles created by `*_new`/`*_parse` functions and
//!   released by the matching `*_free`. Passing NULL to a free is a no-op.
//! * Strings returned through `char **` are NUL-terminated UTF-8 owned by the
//!   caller, to be released with `afinv_string_free`.
//! * Panics never cross the boundary; they surface as `AFINV_STATUS_PANIC`.

use afinv::bratteli::{build_diagram, to_dot, to_json as diagram_json};
use afinv::classify::{bundle, check_witness, compare, InvariantBundle, VerdictKind, WitnessCheck};
use afinv::cli::{parse_witness, CliError};
use afinv::decomp::torsion_tensor;
use afinv::enumerate::{classify_family, ClassifyOptions, FamilySpec};
use afinv::specimen::{Specimen, SpecimenError};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AfinvStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Text input (specimen or witness JSON) could not be parsed.
    ParseError = 3,
    /// The specimen violates an invariant, e.g. its support has gcd > 1.
    InvalidSpecimen = 4,
    /// An iteration or size cap was hit; the answer is unknown.
    CapExceeded = 5,
    /// A numeric argument is out of range.
    InvalidArgument = 6,
    ComputationError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AfinvVerdict {
    Isomorphic = 0,
    NonIsomorphic = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AfinvWitnessStatus {
    Verified = 0,
    Refuted = 1,
    Undetermined = 2,
}

/// Opaque specimen handle.
pub struct AfinvSpecimen(Specimen);

/// Opaque invariant bundle handle.
pub struct AfinvBundle(InvariantBundle);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(AfinvStatus, String);

impl Failure {
    fn new(s: AfinvStatus, msg: impl Into<String>) -> Self {
        Failure(s, msg.into())
    }
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e: CliError = e.into();
        let status = match &e {
            CliError::Specimen(SpecimenError::Parse(_)) => AfinvStatus::ParseError,
            CliError::Specimen(_) => AfinvStatus::InvalidSpecimen,
            CliError::Usage(_) => AfinvStatus::ParseError,
            _ => match e.exit_code() {
                afinv::cli::exit::INCONCLUSIVE => AfinvStatus::CapExceeded,
                afinv::cli::exit::USAGE => AfinvStatus::InvalidArgument,
                _ => AfinvStatus::ComputationError,
            },
        };
        Failure(status, format!("{}: {e}", e.kind()))
    }
}

/// Runs `f`, records any failure and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AfinvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AfinvStatus::Ok,
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("Panic: {msg}"));
            AfinvStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure::new(AfinvStatus::NullArgument, format!("NullArgument: {name} is NULL"))
}

/// # Safety
/// `p` is NULL or points to a live value of type `T`.
unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

/// # Safety
/// `p` is NULL or a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(AfinvStatus::InvalidUtf8, format!("InvalidUtf8: {name} is not UTF-8")))
}

/// # Safety
/// `out` is NULL or writable.
unsafe fn put<T>(out: *mut T, v: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(v);
    Ok(())
}

/// # Safety
/// `out` is NULL or writable.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(AfinvStatus::ComputationError, "output contains NUL"))?;
    put(out, c.into_raw(), "out")
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn afinv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failure on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn afinv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is NULL or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn afinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `m=1,0,4`, `L=1,2,4` or a bare column `1,0,4`.
///
/// # Safety
/// `spec` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_specimen_parse(spec: *const c_char, out: *mut *mut AfinvSpecimen) -> AfinvStatus {
    guard(|| {
        let s: Specimen = text(spec, "spec")?.parse()?;
        put(out, Box::into_raw(Box::new(AfinvSpecimen(s))), "out")
    })
}

/// Builds a specimen from the first column m₁, …, m_N.
///
/// # Safety
/// `m` points to `len` readable values and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_specimen_from_m(m: *const u64, len: usize, out: *mut *mut AfinvSpecimen) -> AfinvStatus {
    guard(|| {
        if m.is_null() && len > 0 {
            return Err(null("m"));
        }
        let col = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(m, len).to_vec() };
        let s = Specimen::from_m(col)?;
        put(out, Box::into_raw(Box::new(AfinvSpecimen(s))), "out")
    })
}

/// # Safety
/// `s` is NULL or a live specimen handle.
#[no_mangle]
pub unsafe extern "C" fn afinv_specimen_free(s: *mut AfinvSpecimen) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` is a live specimen handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_specimen_rank(s: *const AfinvSpecimen, out: *mut usize) -> AfinvStatus {
    guard(|| put(out, deref(s, "specimen")?.0.n(), "out"))
}

/// Canonical text `m=…`.
///
/// # Safety
/// `s` is a live specimen handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_specimen_to_string(s: *const AfinvSpecimen, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| put_string(out, deref(s, "specimen")?.0.to_string()))
}

/// Computes the invariant bundle.
///
/// # Safety
/// `s` is a live specimen handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_new(s: *const AfinvSpecimen, out: *mut *mut AfinvBundle) -> AfinvStatus {
    guard(|| {
        let b = bundle(&deref(s, "specimen")?.0)?;
        put(out, Box::into_raw(Box::new(AfinvBundle(b))), "out")
    })
}

/// # Safety
/// `b` is NULL or a live bundle handle.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_free(b: *mut AfinvBundle) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Degree D of the minimal polynomial of 1/λ.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_degree(b: *const AfinvBundle, out: *mut usize) -> AfinvStatus {
    guard(|| put(out, deref(b, "bundle")?.0.d, "out"))
}

/// Rank N − D of ker τ.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_kernel_rank(b: *const AfinvBundle, out: *mut usize) -> AfinvStatus {
    guard(|| put(out, deref(b, "bundle")?.0.ker_tau_rank, "out"))
}

/// λ as exact text: an integer, or its minimal polynomial and an interval.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_lambda(b: *const AfinvBundle, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| put_string(out, deref(b, "bundle")?.0.lambda.clone()))
}

/// τ(v) as exact text, e.g. `9/4`.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_tau(b: *const AfinvBundle, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| put_string(out, deref(b, "bundle")?.0.tau_v.clone()))
}

/// I(J) in decimal; `*out` is set to NULL when λ ≠ m_N.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_i_j(b: *const AfinvBundle, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| match &deref(b, "bundle")?.0.i_j {
        Some(i) => put_string(out, i.to_string()),
        None => put(out, std::ptr::null_mut(), "out"),
    })
}

/// dim G₀ ⊗ ℤ_p for a prime p.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_torsion_dim(b: *const AfinvBundle, p: u64, out: *mut usize) -> AfinvStatus {
    guard(|| {
        let r = torsion_tensor(&deref(b, "bundle")?.0.specimen, p)?;
        let dim = r
            .dimension
            .ok_or_else(|| Failure::new(AfinvStatus::InvalidArgument, format!("InvalidArgument: {p} is not prime")))?;
        put(out, dim, "out")
    })
}

/// The whole bundle as JSON.
///
/// # Safety
/// `b` is a live bundle handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_bundle_to_json(b: *const AfinvBundle, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| {
        let j = serde_json::to_string_pretty(&deref(b, "bundle")?.0).expect("bundle serializes");
        put_string(out, j)
    })
}

/// Isomorphism verdict; `out_json` may be NULL.
///
/// # Safety
/// `a`, `b` are live specimen handles, `out_kind` is writable and
/// `out_json` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_compare(
    a: *const AfinvSpecimen,
    b: *const AfinvSpecimen,
    out_kind: *mut AfinvVerdict,
    out_json: *mut *mut c_char,
) -> AfinvStatus {
    guard(|| {
        let v = compare(&deref(a, "a")?.0, &deref(b, "b")?.0)?;
        let kind = match v.kind {
            VerdictKind::Isomorphic => AfinvVerdict::Isomorphic,
            VerdictKind::NonIsomorphic => AfinvVerdict::NonIsomorphic,
            VerdictKind::Inconclusive => AfinvVerdict::Inconclusive,
        };
        put(out_kind, kind, "out_kind")?;
        if !out_json.is_null() {
            put_string(out_json, serde_json::to_string_pretty(&v).expect("verdict serializes"))?;
        }
        Ok(())
    })
}

/// Checks a witness given in the JSON form that `compare` emits, with the
/// integrality conditions tested to `depth`.
///
/// # Safety
/// `a`, `b` are live specimen handles, `witness_json` is a NUL-terminated
/// string and `out_status` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_witness_check(
    a: *const AfinvSpecimen,
    b: *const AfinvSpecimen,
    witness_json: *const c_char,
    depth: usize,
    out_status: *mut AfinvWitnessStatus,
) -> AfinvStatus {
    guard(|| {
        let w = parse_witness(text(witness_json, "witness_json")?)?;
        let status = match check_witness(&deref(a, "a")?.0, &deref(b, "b")?.0, &w, depth)? {
            WitnessCheck::Verified { .. } => AfinvWitnessStatus::Verified,
            WitnessCheck::Refuted { condition } => {
                set_error(&format!("Refuted: {condition}"));
                AfinvWitnessStatus::Refuted
            }
            WitnessCheck::Undetermined { condition } => {
                set_error(&format!("Undetermined: {condition}"));
                AfinvWitnessStatus::Undetermined
            }
        };
        put(out_status, status, "out_status")
    })
}

/// Bratteli diagram to `depth` in DOT.
///
/// # Safety
/// `s` is a live specimen handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_diagram_dot(s: *const AfinvSpecimen, depth: usize, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| put_string(out, to_dot(&build_diagram(&deref(s, "specimen")?.0.weights(), depth)?)))
}

/// Bratteli diagram to `depth` in JSON.
///
/// # Safety
/// `s` is a live specimen handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_diagram_json(s: *const AfinvSpecimen, depth: usize, out: *mut *mut c_char) -> AfinvStatus {
    guard(|| put_string(out, diagram_json(&build_diagram(&deref(s, "specimen")?.0.weights(), depth)?)))
}

/// Enumerates and classifies the rank-N family with Perron eigenvalue λ.
/// `jobs` = 0 uses the default thread pool. `out_classes` may be NULL.
///
/// # Safety
/// `out_json` is writable and `out_classes` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn afinv_classify_family(
    lambda: u64,
    n: usize,
    jobs: usize,
    out_json: *mut *mut c_char,
    out_classes: *mut usize,
) -> AfinvStatus {
    guard(|| {
        let opts = ClassifyOptions { jobs: (jobs > 0).then_some(jobs), ..Default::default() };
        let c = classify_family(&FamilySpec::new(lambda, n), &opts)?;
        if !c.inconclusive.is_empty() {
            set_error(&format!("{} pairs remain inconclusive", c.inconclusive.len()));
        }
        if !out_classes.is_null() {
            out_classes.write(c.classes.len());
        }
        put_string(out_json, serde_json::to_string_pretty(&c).expect("classification serializes"))
    })
}
