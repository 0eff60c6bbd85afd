//! C ABI for treeperc.
//!
//! Objects cross the boundary as opaque handles (`TpPoly`, `TpBettiTable`)
//! that the caller releases with the matching `*_free` function. Every
//! fallible call returns a `TpStatus`; on failure a message is available
//! from `tp_last_error_message` on the same thread. Strings returned through
//! `char **` outputs are owned by the caller and released with
//! `tp_string_free`. Rationals are passed as decimal strings such as
//! `"3/4"` or `"0.75"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;
use treeperc::percolation::{self, BoundKind};
use treeperc::resolution::{self, BettiTable, Budget, GeneratingFunction};
use treeperc::{BivarPoly, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Domain = 4,
    Parse = 5,
    Overflow = 6,
    Internal = 7,
}

/// Which truncation bound a value is, or `Exact` when nothing was dropped.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpBoundKind {
    Exact = 0,
    PathLower = 1,
    PathUpper = 2,
    CutLower = 3,
    CutUpper = 4,
}

/// Resource caps; pass NULL for the library defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TpBudget {
    pub max_terms: u64,
    pub max_coeff_bits: u64,
}

/// Polynomial in `x` and `t` with integer coefficients.
pub struct TpPoly(BivarPoly);

/// Graded Betti table in the quotient convention.
pub struct TpBettiTable(BettiTable);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> TpStatus {
    match err {
        Error::Budget { .. } | Error::TooLarge { .. } => TpStatus::BudgetExceeded,
        Error::InvalidArgument(_) => TpStatus::InvalidArgument,
        Error::Domain { .. } | Error::Pole { .. } | Error::NoRealRoot(_) => TpStatus::Domain,
        Error::Parse(_) => TpStatus::Parse,
        Error::NotDivisible { .. } | Error::Invariant(_) => TpStatus::Internal,
    }
}

struct Failure(TpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn null(what: &str) -> Failure {
    Failure(TpStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, records any error and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> TpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            TpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(TpStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn read_budget(budget: *const TpBudget) -> Budget {
    match budget.as_ref() {
        None => Budget::default(),
        Some(b) => Budget {
            max_terms: usize::try_from(b.max_terms).unwrap_or(usize::MAX),
            max_coeff_bits: b.max_coeff_bits,
        },
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| Failure(TpStatus::Internal, "interior NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> FfiResult<&'a T> {
    h.as_ref().ok_or_else(|| null(what))
}

fn truncation(m: i64) -> Option<u32> {
    u32::try_from(m).ok()
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or an empty string.
/// Valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn tp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generating function of the path ideal of the `k`-ary tree of depth `n`.
/// A negative `m` computes it in full; otherwise only x-degrees up to `m`.
///
/// # Safety
/// `budget` must be NULL or valid; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_path_gf(
    k: u32,
    n: u32,
    m: i64,
    budget: *const TpBudget,
    out: *mut *mut TpPoly,
) -> TpStatus {
    guard(|| {
        let g = resolution::path_gf_with(k, n, &read_budget(budget), truncation(m))?;
        write_handle(out, TpPoly(g.into_poly()))
    })
}

/// Generating function of the cut ideal; see `tp_path_gf`.
///
/// # Safety
/// `budget` must be NULL or valid; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_cut_gf(
    k: u32,
    n: u32,
    m: i64,
    budget: *const TpBudget,
    out: *mut *mut TpPoly,
) -> TpStatus {
    guard(|| {
        let g = resolution::cut_gf_with(k, n, &read_budget(budget), truncation(m))?;
        write_handle(out, TpPoly(g.into_poly()))
    })
}

/// Hilbert numerator `-G(-x, t)` of a generating function.
///
/// # Safety
/// `gf` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_poly_numerator(gf: *const TpPoly, out: *mut *mut TpPoly) -> TpStatus {
    guard(|| {
        let gf = handle(gf, "gf")?;
        let h = resolution::gf_to_numerator(&GeneratingFunction::new(gf.0.clone()));
        write_handle(out, TpPoly(h.into_poly()))
    })
}

/// Number of nonzero terms.
///
/// # Safety
/// `poly` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tp_poly_term_count(poly: *const TpPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.0.len())
}

/// JSON array of `{"x", "t", "c"}` terms, coefficients as decimal strings.
///
/// # Safety
/// `poly` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_poly_to_json(poly: *const TpPoly, out: *mut *mut c_char) -> TpStatus {
    guard(|| write_string(out, handle(poly, "poly")?.0.to_json()))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_poly_from_json(json: *const c_char, out: *mut *mut TpPoly) -> TpStatus {
    guard(|| {
        let poly = BivarPoly::from_json(read_str(json, "json")?)?;
        write_handle(out, TpPoly(poly))
    })
}

/// # Safety
/// `poly` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_poly_free(poly: *mut TpPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Betti table read off a generating function.
///
/// # Safety
/// `gf` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_from_gf(
    gf: *const TpPoly,
    out: *mut *mut TpBettiTable,
) -> TpStatus {
    guard(|| {
        let gf = handle(gf, "gf")?;
        let table = resolution::betti_table(&GeneratingFunction::new(gf.0.clone()))?;
        write_handle(out, TpBettiTable(table))
    })
}

/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_max_degree(table: *const TpBettiTable) -> u32 {
    table.as_ref().map_or(0, |t| t.0.max_homological_degree())
}

/// `beta_{i,j}` as a decimal string.
///
/// # Safety
/// `table` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_get(
    table: *const TpBettiTable,
    i: u32,
    j: u32,
    out: *mut *mut c_char,
) -> TpStatus {
    guard(|| write_string(out, handle(table, "table")?.0.get(i, j).to_string()))
}

/// `beta_{i,j}` as an integer; `Overflow` if it does not fit.
///
/// # Safety
/// `table` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_get_u64(
    table: *const TpBettiTable,
    i: u32,
    j: u32,
    out: *mut u64,
) -> TpStatus {
    guard(|| {
        let value = handle(table, "table")?.0.get(i, j);
        let value = value.to_u64().ok_or_else(|| {
            Failure(
                TpStatus::Overflow,
                format!("beta_({i},{j}) = {value} exceeds 64 bits"),
            )
        })?;
        write_out(out, value)
    })
}

/// CSV with header `i,j,beta`.
///
/// # Safety
/// `table` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_to_csv(
    table: *const TpBettiTable,
    out: *mut *mut c_char,
) -> TpStatus {
    guard(|| write_string(out, handle(table, "table")?.0.to_csv()))
}

/// JSON array of `{"i", "j", "beta"}` entries.
///
/// # Safety
/// `table` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_to_json(
    table: *const TpBettiTable,
    out: *mut *mut c_char,
) -> TpStatus {
    guard(|| write_string(out, handle(table, "table")?.0.to_json()))
}

/// # Safety
/// `table` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_betti_free(table: *mut TpBettiTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Exact `P_{k,n}(p)` as a reduced fraction string.
///
/// # Safety
/// `p` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_percolation_exact(
    k: u32,
    n: u32,
    p: *const c_char,
    out: *mut *mut c_char,
) -> TpStatus {
    guard(|| {
        let p = treeperc::parse_rational(read_str(p, "p")?)?;
        write_string(out, percolation::percolation_exact(k, n, &p)?.to_string())
    })
}

/// `P_{k,n}(p)` in floating point.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_percolation_f64(k: u32, n: u32, p: f64, out: *mut f64) -> TpStatus {
    guard(|| write_out(out, percolation::percolation_recursive_f64(k, n, p)?))
}

/// Percolation probability of the infinite `k`-ary tree.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_percolation_infinite(k: u32, p: f64, out: *mut f64) -> TpStatus {
    guard(|| write_out(out, percolation::percolation_infinite(k, p)?))
}

fn kind(k: BoundKind) -> TpBoundKind {
    match k {
        BoundKind::Exact => TpBoundKind::Exact,
        BoundKind::PathLower => TpBoundKind::PathLower,
        BoundKind::PathUpper => TpBoundKind::PathUpper,
        BoundKind::CutLower => TpBoundKind::CutLower,
        BoundKind::CutUpper => TpBoundKind::CutUpper,
    }
}

unsafe fn bound(
    at: *const c_char,
    out_value: *mut *mut c_char,
    out_kind: *mut TpBoundKind,
    f: impl FnOnce(&treeperc::ExactRational) -> treeperc::Result<percolation::BoundResult>,
) -> TpStatus {
    guard(|| {
        if out_kind.is_null() {
            return Err(null("out_kind"));
        }
        let x = treeperc::parse_rational(read_str(at, "probability")?)?;
        let result = f(&x)?;
        write_string(out_value, result.value.to_string())?;
        write_out(out_kind, kind(result.kind))
    })
}

/// Truncated path bound on `P_{k,n}(p)`; odd `m` bounds from above.
///
/// # Safety
/// `p` must be a NUL-terminated string; both outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tp_path_bound(
    k: u32,
    n: u32,
    m: u32,
    p: *const c_char,
    out_value: *mut *mut c_char,
    out_kind: *mut TpBoundKind,
) -> TpStatus {
    bound(p, out_value, out_kind, |p| {
        percolation::path_bound(k, n, m, p)
    })
}

/// Truncated cut bound on the failure probability at `q`.
///
/// # Safety
/// `q` must be a NUL-terminated string; both outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tp_cut_bound(
    k: u32,
    n: u32,
    m: u32,
    q: *const c_char,
    out_value: *mut *mut c_char,
    out_kind: *mut TpBoundKind,
) -> TpStatus {
    bound(q, out_value, out_kind, |q| {
        percolation::cut_bound(k, n, m, q)
    })
}

/// Threshold `q*_k` above which the depth-wise cut bounds diverge.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_q_star(k: u32, out: *mut f64) -> TpStatus {
    guard(|| write_out(out, percolation::q_star(k)?))
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn error_codes_cover_every_variant() {
        assert_eq!(status_of(&Error::Parse("x".into())), TpStatus::Parse);
        assert_eq!(status_of(&Error::NoRealRoot("x".into())), TpStatus::Domain);
        assert_eq!(
            status_of(&Error::TooLarge {
                op: "x",
                size: 2,
                cap: 1
            }),
            TpStatus::BudgetExceeded
        );
    }

    #[test]
    fn panics_become_internal() {
        assert_eq!(guard(|| panic!("boom")), TpStatus::Internal);
        let msg = unsafe { CStr::from_ptr(tp_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn truncation_sign() {
        assert_eq!(truncation(-1), None);
        assert_eq!(truncation(3), Some(3));
    }

    #[test]
    fn version_is_terminated() {
        let v = unsafe { CStr::from_ptr(tp_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn null_handles() {
        assert_eq!(unsafe { tp_poly_term_count(ptr::null()) }, 0);
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { tp_betti_from_gf(ptr::null(), &mut out) },
            TpStatus::NullPointer
        );
    }
}
