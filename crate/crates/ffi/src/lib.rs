//! C interface to `surgeq`.
//!
//! Links are opaque handles created from the JSON presentation format.
//! Every fallible call returns a [`SurgeqStatus`]; on failure the message is
//! available from [`surgeq_last_error`] on the same thread. Strings handed
//! out by this library must be released with [`surgeq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use surgeq::format::{parse_presentation, write_presentation};
use surgeq::milnor::{free_nilpotent_h3_rank, DEFAULT_MAX_LENGTH};
use surgeq::presentation::FramedLink;
use surgeq::report::{invariants_report, verdict_report};
use surgeq::verdict::{compare, lens_compare, Options, Relation, Status, VerdictError};

/// Opaque framed-link presentation.
pub struct SurgeqLink {
    link: FramedLink,
}

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurgeqStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// Malformed presentation, relation name or other input.
    Parse = 3,
    /// Input well-formed but outside the operation's preconditions.
    Precondition = 4,
    /// Result does not fit the output type.
    Overflow = 5,
    /// Internal error; the library state is unaffected.
    Panic = 6,
}

/// Surgery-equivalence verdict; values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurgeqVerdict {
    Equivalent = 0,
    NotEquivalent = 1,
    Unknown = 4,
}

impl From<Status> for SurgeqVerdict {
    fn from(s: Status) -> Self {
        match s {
            Status::Equivalent => SurgeqVerdict::Equivalent,
            Status::NotEquivalent => SurgeqVerdict::NotEquivalent,
            Status::Unknown => SurgeqVerdict::Unknown,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    // Interior NULs cannot be represented; they never occur in our messages.
    let c = CString::new(msg.replace('\0', " ")).expect("NUL-free");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SurgeqStatus, String);

impl From<VerdictError> for Failure {
    fn from(e: VerdictError) -> Self {
        let code = match e {
            VerdictError::UnknownRelation(_) => SurgeqStatus::Parse,
            _ => SurgeqStatus::Precondition,
        };
        Failure(code, e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SurgeqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SurgeqStatus::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal error");
            SurgeqStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SurgeqStatus::NullArgument, format!("`{what}` is null"))
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SurgeqStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

/// # Safety
/// `p` is null or a handle from this library that has not been freed.
unsafe fn read_link<'a>(p: *const SurgeqLink, what: &str) -> Result<&'a FramedLink, Failure> {
    p.as_ref().map(|h| &h.link).ok_or_else(|| null(what))
}

fn hand_out(text: String) -> *mut c_char {
    CString::new(text).expect("JSON output has no NUL").into_raw()
}

/// Parses a JSON presentation into a new handle stored in `*out`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn surgeq_link_from_json(json: *const c_char, out: *mut *mut SurgeqLink) -> SurgeqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let link = parse_presentation(text).map_err(|e| Failure(SurgeqStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(SurgeqLink { link }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `link` is null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn surgeq_link_free(link: *mut SurgeqLink) {
    if !link.is_null() {
        drop(Box::from_raw(link));
    }
}

/// Number of components, or 0 for a null handle.
///
/// # Safety
/// `link` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn surgeq_link_components(link: *const SurgeqLink) -> usize {
    link.as_ref().map_or(0, |h| h.link.components())
}

/// Writes the presentation back as JSON.
///
/// # Safety
/// `link` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn surgeq_link_to_json(link: *const SurgeqLink, out: *mut *mut c_char) -> SurgeqStatus {
    guard(|| {
        let link = read_link(link, "link")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = hand_out(write_presentation(link));
        Ok(())
    })
}

/// New handle for the integral expansion of `link`.
///
/// # Safety
/// `link` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn surgeq_link_expand(link: *const SurgeqLink, out: *mut *mut SurgeqLink) -> SurgeqStatus {
    guard(|| {
        let link = read_link(link, "link")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(SurgeqLink {
            link: link.expand_to_integral(),
        }));
        Ok(())
    })
}

/// Invariants report as JSON; `max_length == 0` selects the default.
///
/// # Safety
/// `link` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn surgeq_invariants_json(
    link: *const SurgeqLink,
    max_length: usize,
    out: *mut *mut c_char,
) -> SurgeqStatus {
    guard(|| {
        let link = read_link(link, "link")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let max_length = if max_length == 0 { DEFAULT_MAX_LENGTH } else { max_length };
        *out = hand_out(invariants_report(link, max_length).to_string());
        Ok(())
    })
}

/// Compares two links under `relation` (`"integral2"`, `"rational2"` or
/// `"k=K"`). The verdict goes to `*verdict`; if `certificate` is not null it
/// receives the full verdict as JSON.
///
/// # Safety
/// Handles are live, `relation` is a NUL-terminated string, `verdict` is
/// valid and `certificate` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn surgeq_compare(
    a: *const SurgeqLink,
    b: *const SurgeqLink,
    relation: *const c_char,
    verdict: *mut SurgeqVerdict,
    certificate: *mut *mut c_char,
) -> SurgeqStatus {
    guard(|| {
        let (a, b) = (read_link(a, "a")?, read_link(b, "b")?);
        let relation: Relation = read_str(relation, "relation")?.parse()?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let v = compare(a, b, relation, &Options::default())?;
        *verdict = v.status.into();
        if !certificate.is_null() {
            *certificate = hand_out(verdict_report(&v, true).to_string());
        }
        Ok(())
    })
}

/// `L(n, q)` against `L(n2, q2)` under integral 2-surgery equivalence.
///
/// # Safety
/// `verdict` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn surgeq_lens_compare(
    n: i64,
    q: i64,
    n2: i64,
    q2: i64,
    verdict: *mut SurgeqVerdict,
) -> SurgeqStatus {
    guard(|| {
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        *verdict = lens_compare(n, q, n2, q2)?.status.into();
        Ok(())
    })
}

/// Rank of `H₃(F/F_k)` for the free group `F` of rank `m`.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn surgeq_nilpotent_h3_rank(m: u64, k: u32, out: *mut u64) -> SurgeqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = free_nilpotent_h3_rank(m, k).map_err(|e| Failure(SurgeqStatus::Precondition, e.to_string()))?;
        *out = u64::try_from(&r).map_err(|_| Failure(SurgeqStatus::Overflow, format!("rank {r} exceeds 64 bits")))?;
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn surgeq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or a string from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn surgeq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
