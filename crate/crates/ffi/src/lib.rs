//! C ABI for `sucfix`.
//!
//! Permutations cross the boundary as opaque `SucfixPermutation` handles
//! created by `sucfix_perm_parse` / `sucfix_perm_from_values` (or returned by
//! `sucfix_phi` and friends) and released with `sucfix_perm_free`. Every
//! fallible call returns a `SucfixStatus`; on anything other than
//! `SUCFIX_STATUS_OK` a message is available from `sucfix_last_error` on the
//! same thread. Strings handed out by the library are freed with
//! `sucfix_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use sucfix::{Permutation, Statistic, Verifier};

/// Opaque permutation handle.
pub struct SucfixPermutation(Permutation);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SucfixStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    BufferTooSmall = 4,
    InvalidSize = 5,
    /// The verifier ran to completion and found a counterexample.
    VerificationFailed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SucfixStatistic {
    Suc = 0,
    FixBar = 1,
    NajSuc = 2,
    Pred = 3,
    DropBar = 4,
    ExcBar = 5,
}

impl From<SucfixStatistic> for Statistic {
    fn from(s: SucfixStatistic) -> Self {
        match s {
            SucfixStatistic::Suc => Statistic::Suc,
            SucfixStatistic::FixBar => Statistic::FixBar,
            SucfixStatistic::NajSuc => Statistic::NajSuc,
            SucfixStatistic::Pred => Statistic::Pred,
            SucfixStatistic::DropBar => Statistic::DropBar,
            SucfixStatistic::ExcBar => Statistic::ExcBar,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SucfixCheck {
    Relations = 0,
    Pfee = 1,
    Counting = 2,
    Triple = 3,
}

impl From<SucfixCheck> for Verifier {
    fn from(c: SucfixCheck) -> Self {
        match c {
            SucfixCheck::Relations => Verifier::Relations,
            SucfixCheck::Pfee => Verifier::Pfee,
            SucfixCheck::Counting => Verifier::Counting,
            SucfixCheck::Triple => Verifier::Triple,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Failure = (SucfixStatus, String);

/// Runs `f`, recording its error message and turning panics into
/// `SucfixStatus::Panic`.
fn guard<F>(f: F) -> SucfixStatus
where
    F: FnOnce() -> Result<SucfixStatus, Failure>,
{
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside sucfix".to_string());
            SucfixStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (SucfixStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn perm_ref<'a>(p: *const SucfixPermutation) -> Result<&'a Permutation, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("perm"))
}

unsafe fn write_handle(out: *mut *mut SucfixPermutation, p: Permutation) -> Result<SucfixStatus, Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(SucfixPermutation(p)));
    Ok(SucfixStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .map_err(|e| (SucfixStatus::Panic, e.to_string()))?
        .into_raw();
    Ok(())
}

/// Parses one-line notation (integers separated by spaces and/or commas).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sucfix_perm_parse(
    text: *const c_char,
    out: *mut *mut SucfixPermutation,
) -> SucfixStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (SucfixStatus::InvalidUtf8, e.to_string()))?;
        let p = s
            .parse::<Permutation>()
            .map_err(|e| (SucfixStatus::ParseError, e.to_string()))?;
        write_handle(out, p)
    })
}

/// Builds a permutation from `len` one-line values, which must be a
/// rearrangement of `1..=len`.
///
/// # Safety
/// `values` must point to `len` readable `size_t`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_perm_from_values(
    values: *const size_t,
    len: size_t,
    out: *mut *mut SucfixPermutation,
) -> SucfixStatus {
    guard(|| {
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let vals = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(values, len).to_vec()
        };
        let p = Permutation::new(vals).map_err(|e| (SucfixStatus::ParseError, e.to_string()))?;
        write_handle(out, p)
    })
}

/// # Safety
/// `perm` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sucfix_perm_free(perm: *mut SucfixPermutation) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

/// Size `n` of the permutation, or 0 for a null handle.
///
/// # Safety
/// `perm` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sucfix_perm_len(perm: *const SucfixPermutation) -> size_t {
    perm.as_ref().map_or(0, |h| h.0.len())
}

/// Copies the one-line values into `out`, which must hold at least
/// `sucfix_perm_len(perm)` entries.
///
/// # Safety
/// `perm` must be a live handle and `out` must point to `cap` writable
/// `size_t`s.
#[no_mangle]
pub unsafe extern "C" fn sucfix_perm_values(
    perm: *const SucfixPermutation,
    out: *mut size_t,
    cap: size_t,
) -> SucfixStatus {
    guard(|| {
        let p = perm_ref(perm)?;
        copy_out(p.values(), out, cap)
    })
}

unsafe fn copy_out(xs: &[usize], out: *mut size_t, cap: size_t) -> Result<SucfixStatus, Failure> {
    if xs.len() > cap {
        return Err((
            SucfixStatus::BufferTooSmall,
            format!("need {} entries, buffer holds {cap}", xs.len()),
        ));
    }
    if xs.is_empty() {
        return Ok(SucfixStatus::Ok);
    }
    if out.is_null() {
        return Err(null("out"));
    }
    ptr::copy_nonoverlapping(xs.as_ptr(), out, xs.len());
    Ok(SucfixStatus::Ok)
}

/// Space-separated one-line notation; free with `sucfix_string_free`.
/// Returns null for a null handle.
///
/// # Safety
/// `perm` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sucfix_perm_to_string(perm: *const SucfixPermutation) -> *mut c_char {
    match perm.as_ref() {
        Some(h) => CString::new(h.0.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sucfix_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `sucfix_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sucfix_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `*out = phi(sigma)` as a new handle.
///
/// # Safety
/// `sigma` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_phi(
    sigma: *const SucfixPermutation,
    out: *mut *mut SucfixPermutation,
) -> SucfixStatus {
    guard(|| write_handle(out, sucfix::phi(perm_ref(sigma)?)))
}

/// `*out = phi_inverse(tau)` as a new handle.
///
/// # Safety
/// `tau` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_phi_inverse(
    tau: *const SucfixPermutation,
    out: *mut *mut SucfixPermutation,
) -> SucfixStatus {
    guard(|| write_handle(out, sucfix::phi_inverse(perm_ref(tau)?)))
}

/// Every stage of `phi(sigma)` as a JSON object with keys `sigma`,
/// `sigma_bar`, `sigma_hat`, `cycle_form`, `tau_bar`, `tau_bar_inv`, `tau`.
///
/// # Safety
/// `sigma` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_phi_trace_json(
    sigma: *const SucfixPermutation,
    out: *mut *mut c_char,
) -> SucfixStatus {
    guard(|| {
        let trace = sucfix::phi_with_trace(perm_ref(sigma)?);
        let json = serde_json::to_string(&trace).map_err(|e| (SucfixStatus::Panic, e.to_string()))?;
        write_string(out, json)?;
        Ok(SucfixStatus::Ok)
    })
}

/// Writes the sorted members of one statistic into `out` and their count
/// into `*out_len`. `*out_len` is set even when the buffer is too small.
///
/// # Safety
/// `perm` must be a live handle, `out` must point to `cap` writable
/// `size_t`s and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_statistic(
    perm: *const SucfixPermutation,
    stat: SucfixStatistic,
    out: *mut size_t,
    cap: size_t,
    out_len: *mut size_t,
) -> SucfixStatus {
    guard(|| {
        let p = perm_ref(perm)?;
        if out_len.is_null() {
            return Err(null("out_len"));
        }
        let set = Statistic::from(stat).compute(p);
        *out_len = set.len();
        copy_out(set.as_slice(), out, cap)
    })
}

/// Runs one exhaustive verifier over `S_n` and stores the JSON report in
/// `*out_json`. Returns `SUCFIX_STATUS_VERIFICATION_FAILED` (with the report
/// still written) when a counterexample was found.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_verify_json(
    n: size_t,
    check: SucfixCheck,
    jobs: size_t,
    out_json: *mut *mut c_char,
) -> SucfixStatus {
    guard(|| {
        let report = sucfix::verify(check.into(), n, jobs)
            .map_err(|e| (SucfixStatus::InvalidSize, e.to_string()))?;
        let json = serde_json::to_string(&report).map_err(|e| (SucfixStatus::Panic, e.to_string()))?;
        write_string(out_json, json)?;
        if report.passed {
            Ok(SucfixStatus::Ok)
        } else {
            Err((SucfixStatus::VerificationFailed, format!("{} failed at n={n}", check_name(check))))
        }
    })
}

fn check_name(c: SucfixCheck) -> &'static str {
    Verifier::from(c).name()
}

unsafe fn table_out(
    n: size_t,
    stat: SucfixStatistic,
    out: *mut *mut c_char,
    render: impl FnOnce(&sucfix::DistributionTable) -> String,
) -> SucfixStatus {
    guard(|| {
        let table = sucfix::distribution_table(n, stat.into())
            .map_err(|e| (SucfixStatus::InvalidSize, e.to_string()))?;
        write_string(out, render(&table))?;
        Ok(SucfixStatus::Ok)
    })
}

/// Distribution table of one statistic over `S_n` as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_table_json(
    n: size_t,
    stat: SucfixStatistic,
    out: *mut *mut c_char,
) -> SucfixStatus {
    table_out(n, stat, out, |t| serde_json::to_string(t).unwrap_or_default())
}

/// Distribution table of one statistic over `S_n` as `subset,count` CSV.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sucfix_table_csv(
    n: size_t,
    stat: SucfixStatistic,
    out: *mut *mut c_char,
) -> SucfixStatus {
    table_out(n, stat, out, sucfix::DistributionTable::to_csv)
}
