//! C ABI over `dethyp`.
//!
//! Every fallible call returns a [`DhStatus`]; results go through out
//! pointers. Handles are opaque and must be released with the matching
//! `*_free`. The message of the most recent failure on the calling thread
//! is available from [`dh_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dethyp::cli::{self, CliError, Command, RunConfig};
use dethyp::grading::Grading;
use dethyp::pencilmap::{char_poly, expected_rank, jacobian, MatrixTuple};
use dethyp::{field, Error, FieldCtx, Fp, Monomial, QContext, WeylPair};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    NoRootOfUnity = 4,
    ShapeMismatch = 5,
    Domain = 6,
    Precondition = 7,
    InvariantViolation = 8,
    BufferTooSmall = 9,
    CheckFailed = 10,
    Internal = 99,
}

/// A field with a primitive root of unity `q` and its q-combinatorics.
pub struct DhQContext {
    inner: QContext,
}

/// An `r`-tuple of `n x n` matrices over `F_p`.
pub struct DhTuple {
    inner: MatrixTuple,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> DhStatus {
    match err {
        Error::NotPrime(_) => DhStatus::NotPrime,
        Error::NoRootOfUnity { .. } | Error::NotPrimitiveRoot { .. } | Error::MissingRoot => {
            DhStatus::NoRootOfUnity
        }
        Error::ShapeMismatch(_) => DhStatus::ShapeMismatch,
        Error::Domain(_) | Error::DivisionByZero => DhStatus::Domain,
        Error::Precondition(_) => DhStatus::Precondition,
        Error::InvariantViolation(_) => DhStatus::InvariantViolation,
        Error::CharacteristicTooSmall { .. } | Error::InvalidArgument(_) => {
            DhStatus::InvalidArgument
        }
    }
}

fn fail(err: Error) -> DhStatus {
    set_error(err.to_string());
    status_of(&err)
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> DhStatus) -> DhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            DhStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!(stringify!($p), " is null"));
            return DhStatus::NullPointer;
        })+
    };
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Smallest prime above `n`, additionally `= 1 mod n` when `need_root`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dh_find_prime(n: u64, need_root: bool, out: *mut u64) -> DhStatus {
    non_null!(out);
    if n < 2 {
        set_error("n must be at least 2");
        return DhStatus::InvalidArgument;
    }
    guard(|| {
        *out = field::find_prime(n, need_root);
        DhStatus::Ok
    })
}

#[no_mangle]
pub extern "C" fn dh_is_prime(n: u64) -> bool {
    field::is_prime(n)
}

/// Smallest primitive `n`-th root of unity in `F_p`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dh_primitive_root(p: u64, n: u64, out: *mut u64) -> DhStatus {
    non_null!(out);
    guard(|| match field::primitive_root_of_unity(p, n) {
        Ok(q) => {
            *out = q.value();
            DhStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Predicted generic rank of the differential:
/// `min(r n^2, (r - 1) n^2 + 1, binom(r + n, n) - 1)`.
#[no_mangle]
pub extern "C" fn dh_expected_rank(n: usize, r: usize) -> usize {
    expected_rank(n, r)
}

/// Creates a q-context for size `n`. With `p == 0` the smallest prime
/// `= 1 mod n` is used.
///
/// # Safety
/// `out` must be a valid pointer. The handle is released by
/// [`dh_qcontext_free`].
#[no_mangle]
pub unsafe extern "C" fn dh_qcontext_new(n: usize, p: u64, out: *mut *mut DhQContext) -> DhStatus {
    non_null!(out);
    guard(|| {
        let ctx = if p == 0 {
            FieldCtx::default_with_root(n)
        } else {
            FieldCtx::with_root(p, n)
        };
        match ctx.and_then(QContext::new) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DhQContext { inner }));
                DhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ctx` must come from [`dh_qcontext_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dh_qcontext_free(ctx: *mut DhQContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// All pointers must be valid; `ctx` must be live.
#[no_mangle]
pub unsafe extern "C" fn dh_qcontext_field(
    ctx: *const DhQContext,
    p: *mut u64,
    q: *mut u64,
) -> DhStatus {
    non_null!(ctx, p, q);
    let qc = &(*ctx).inner;
    *p = qc.p();
    *q = qc.q().value();
    DhStatus::Ok
}

/// `[d; a, b]_q`, zero when `a` or `b` is negative.
///
/// # Safety
/// All pointers must be valid; `ctx` must be live.
#[no_mangle]
pub unsafe extern "C" fn dh_qbinom(
    ctx: *const DhQContext,
    d: i64,
    a: i64,
    b: i64,
    out: *mut u64,
) -> DhStatus {
    non_null!(ctx, out);
    guard(|| match (*ctx).inner.q_binom(d, a, b) {
        Ok(v) => {
            *out = v.value();
            DhStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// `[d; a, b, c]_q`.
///
/// # Safety
/// All pointers must be valid; `ctx` must be live.
#[no_mangle]
pub unsafe extern "C" fn dh_qtrinom(
    ctx: *const DhQContext,
    d: i64,
    a: i64,
    b: i64,
    c: i64,
    out: *mut u64,
) -> DhStatus {
    non_null!(ctx, out);
    guard(|| match (*ctx).inner.q_trinom(d, a, b, c) {
        Ok(v) => {
            *out = v.value();
            DhStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Dimension of the kernel component of character `(e1, e2)` at the Weyl
/// triple built on `ctx`.
///
/// # Safety
/// All pointers must be valid; `ctx` must be live.
#[no_mangle]
pub unsafe extern "C" fn dh_grading_dim_v(
    ctx: *const DhQContext,
    e1: i64,
    e2: i64,
    out: *mut usize,
) -> DhStatus {
    non_null!(ctx, out);
    guard(|| {
        let w = match WeylPair::new((*ctx).inner.clone()) {
            Ok(w) => w,
            Err(e) => return fail(e),
        };
        match Grading::new(&w).dim_v(e1, e2) {
            Ok(d) => {
                *out = d;
                DhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds a tuple from `r * n * n` integers, matrix by matrix, each row-major.
/// Entries are reduced mod `p`.
///
/// # Safety
/// `entries` must point to `len` readable values; `out` must be valid. The
/// handle is released by [`dh_tuple_free`].
#[no_mangle]
pub unsafe extern "C" fn dh_tuple_new(
    n: usize,
    r: usize,
    p: u64,
    entries: *const i64,
    len: usize,
    out: *mut *mut DhTuple,
) -> DhStatus {
    non_null!(entries, out);
    guard(|| {
        if let Err(e) = FieldCtx::new(p, n) {
            return fail(e);
        }
        let raw = std::slice::from_raw_parts(entries, len);
        let flat: Vec<Fp> = raw.iter().map(|&v| Fp::from_i64(v, p)).collect();
        match MatrixTuple::from_flat(n, r, &flat) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DhTuple { inner }));
                DhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `t` must come from [`dh_tuple_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dh_tuple_free(t: *mut DhTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of coefficients written by [`dh_tuple_char_coeffs`]: `binom(r + n, n)`.
///
/// # Safety
/// All pointers must be valid; `t` must be live.
#[no_mangle]
pub unsafe extern "C" fn dh_tuple_coeff_count(t: *const DhTuple, out: *mut usize) -> DhStatus {
    non_null!(t, out);
    let a = &(*t).inner;
    *out = dethyp::pencilmap::binomial(a.r() + a.n(), a.n());
    DhStatus::Ok
}

/// All coefficients of `det(x_0 I + sum_m x_m A_m)` in descending graded
/// lex order, starting with `x_0^n`. `written` always receives the required
/// length; if `cap` is smaller nothing else is written and
/// `BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `out` must have room for `cap` values; `t` and `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dh_tuple_char_coeffs(
    t: *const DhTuple,
    out: *mut u64,
    cap: usize,
    written: *mut usize,
) -> DhStatus {
    non_null!(t, written);
    guard(|| {
        let a = &(*t).inner;
        let monos = Monomial::all_of_degree(a.r() + 1, a.n());
        *written = monos.len();
        if cap < monos.len() {
            set_error(format!("need {} slots, got {cap}", monos.len()));
            return DhStatus::BufferTooSmall;
        }
        if out.is_null() {
            set_error("out is null");
            return DhStatus::NullPointer;
        }
        let poly = char_poly(a);
        let dst = std::slice::from_raw_parts_mut(out, monos.len());
        for (slot, m) in dst.iter_mut().zip(&monos) {
            match poly.coeff(m) {
                Ok(c) => *slot = c.value(),
                Err(e) => return fail(e),
            }
        }
        DhStatus::Ok
    })
}

/// Rank of the differential of the coefficient map at `t`.
///
/// # Safety
/// All pointers must be valid; `t` must be live.
#[no_mangle]
pub unsafe extern "C" fn dh_tuple_jacobian_rank(t: *const DhTuple, out: *mut usize) -> DhStatus {
    non_null!(t, out);
    guard(|| {
        *out = jacobian(&(*t).inner).rank();
        DhStatus::Ok
    })
}

/// Runs one of `rank`, `grading`, `qbinom`, `fiber`, `all` and hands back
/// the JSON report. `p == 0` selects the default prime. A report with a
/// failing check still returns its JSON, with status `CHECK_FAILED`.
///
/// # Safety
/// `command` must be a NUL-terminated string; `json_out` must be valid.
/// The string is released by [`dh_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dh_run_report(
    command: *const c_char,
    n: usize,
    r: usize,
    p: u64,
    seed: u64,
    trials: usize,
    json_out: *mut *mut c_char,
) -> DhStatus {
    non_null!(command, json_out);
    guard(|| {
        let cmd = match CStr::from_ptr(command).to_str() {
            Ok("rank") => Command::Rank,
            Ok("grading") => Command::Grading,
            Ok("qbinom") => Command::Qbinom,
            Ok("fiber") => Command::Fiber,
            Ok("all") => Command::All,
            _ => {
                set_error("unknown command");
                return DhStatus::InvalidArgument;
            }
        };
        let mut cfg = RunConfig::new(cmd).with_n(n).with_r(r).with_seed(seed);
        cfg.trials = trials;
        if p != 0 {
            cfg = cfg.with_prime(p);
        }
        match cli::run(&cfg) {
            Ok(report) => {
                let json = CString::new(report.to_json()).expect("JSON has no NUL");
                *json_out = json.into_raw();
                if report.passed() {
                    DhStatus::Ok
                } else {
                    set_error("report has failing checks");
                    DhStatus::CheckFailed
                }
            }
            Err(CliError::Config(msg)) => {
                set_error(msg);
                DhStatus::InvalidArgument
            }
            Err(e) => {
                set_error(e.to_string());
                DhStatus::InvalidArgument
            }
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
