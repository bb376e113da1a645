//! C ABI for heiscalc.
//!
//! Objects are opaque handles created by `hc_*_new`/`hc_*_parse` and released with the
//! matching `hc_*_free`. Every fallible call returns an [`HcStatus`]; on failure the
//! message is available from [`hc_last_error`] until the next failing call on the same thread.
//! Strings returned to the caller are owned by it and must be released with [`hc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use heiscalc::expr::{parse_op, parse_symbol};
use heiscalc::quantize::{is_contact_resonant, is_projectively_resonant, subsymbol, Quantizer};
use heiscalc::rational::{parse_rational, Rational};
use heiscalc::{Basis, Context, DiffOp, Error, SymbolPoly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Resonance = 4,
    Domain = 5,
    Mismatch = 6,
    Panic = 7,
}

/// Dimension and density weights used to elaborate expressions.
pub struct HcContext {
    ctx: Context,
    lambda: Rational,
    mu: Rational,
}

/// A weight-tagged differential operator.
pub struct HcOp(DiffOp);

/// A symbol polynomial.
pub struct HcSymbol(SymbolPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::Parse { .. } | Error::Unknown { .. } => HcStatus::Parse,
        Error::ProjectiveResonance { .. } | Error::ContactResonance { .. } | Error::SubsymbolExcluded { .. } => {
            HcStatus::Resonance
        }
        Error::WeightMismatch { .. } | Error::DimensionMismatch(..) | Error::BasisMismatch { .. } => HcStatus::Mismatch,
        _ => HcStatus::Domain,
    }
}

struct Fail(HcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HcStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn rational_arg(p: *const c_char, what: &str) -> Result<Rational, Fail> {
    let s = str_arg(p, what)?;
    parse_rational(s).ok_or_else(|| Fail(HcStatus::Parse, format!("{what}: not a rational number: {s}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(HcStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(HcStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context. `lambda` and `mu` are rationals such as `"1/3"`; null means `0`.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_context_new(
    ell: usize,
    lambda: *const c_char,
    mu: *const c_char,
    out: *mut *mut HcContext,
) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let lam = if lambda.is_null() {
            Rational::from_integer(0.into())
        } else {
            rational_arg(lambda, "lambda")?
        };
        let mu = if mu.is_null() {
            lam.clone()
        } else {
            rational_arg(mu, "mu")?
        };
        let ctx = Context::with_weights(ell, lam.clone(), mu.clone())?;
        *out = Box::into_raw(Box::new(HcContext { ctx, lambda: lam, mu }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must be null or a handle from [`hc_context_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_context_free(ctx: *mut HcContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Parses an operator expression such as `"z*Dz^2"` or `"Xf{x1*y1}"`.
///
/// # Safety
/// `ctx` must be a live context, `src` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_op_parse(ctx: *const HcContext, src: *const c_char, out: *mut *mut HcOp) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let c = handle(ctx, "ctx")?;
        let t = parse_op(str_arg(src, "src")?, &c.ctx)?;
        *out = Box::into_raw(Box::new(HcOp(t)));
        Ok(())
    })
}

/// # Safety
/// `op` must be null or an operator handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_op_free(op: *mut HcOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Normal-ordered text form; free with [`hc_string_free`]. Null if `op` is null.
///
/// # Safety
/// `op` must be null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn hc_op_to_string(op: *const HcOp) -> *mut c_char {
    match op.as_ref() {
        Some(t) => to_c_string(t.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// `a` after `b`. Weights must chain: `mu(b) = lambda(a)`.
///
/// # Safety
/// `a`, `b` must be live operator handles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_op_compose(a: *const HcOp, b: *const HcOp, out: *mut *mut HcOp) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let t = handle(a, "a")?.0.compose(&handle(b, "b")?.0)?;
        *out = Box::into_raw(Box::new(HcOp(t)));
        Ok(())
    })
}

/// Order `k` and Heisenberg order `d` of a nonzero operator.
///
/// # Safety
/// `op` must be a live operator handle; `k`, `d` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_op_bidegree(op: *const HcOp, k: *mut u32, d: *mut u32) -> HcStatus {
    guard(|| {
        out_ptr(k, "k")?;
        out_ptr(d, "d")?;
        let (a, b) = handle(op, "op")?.0.bidegree()?;
        *k = a;
        *d = b;
        Ok(())
    })
}

/// Subsymbol of an operator of order at most `k`, an element of `Sigma^{k-1, 2(k-1)}`.
///
/// # Safety
/// `op` must be a live operator handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_subsymbol(op: *const HcOp, k: u32, out: *mut *mut HcSymbol) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let t = &handle(op, "op")?.0;
        let s = subsymbol(t, k, t.lambda(), t.mu())?;
        *out = Box::into_raw(Box::new(HcSymbol(s.part)));
        Ok(())
    })
}

/// Parses a symbol in `zeta, alpha<i>, beta<i>` or `xiz, xix<i>, xiy<i>`.
///
/// # Safety
/// `ctx` must be a live context, `src` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_symbol_parse(
    ctx: *const HcContext,
    src: *const c_char,
    out: *mut *mut HcSymbol,
) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let c = handle(ctx, "ctx")?;
        let delta = &c.mu - &c.lambda;
        let p = parse_symbol(str_arg(src, "src")?, c.ctx.ell(), &delta)?;
        *out = Box::into_raw(Box::new(HcSymbol(p)));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a symbol handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_symbol_free(s: *mut HcSymbol) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be null or a live symbol handle.
#[no_mangle]
pub unsafe extern "C" fn hc_symbol_to_string(s: *const HcSymbol) -> *mut c_char {
    match s.as_ref() {
        Some(p) => to_c_string(p.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// Contact-projectively equivariant quantization at the context weights.
///
/// # Safety
/// `ctx`, `sym` must be live handles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_quantize(ctx: *const HcContext, sym: *const HcSymbol, out: *mut *mut HcOp) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let c = handle(ctx, "ctx")?;
        let p = &handle(sym, "sym")?.0;
        let p = if p.basis() == Basis::AlphaBeta {
            p.clone()
        } else {
            p.to_fine_basis()?
        };
        let qz = Quantizer::new(c.ctx.ell(), c.lambda.clone(), c.mu.clone())?;
        *out = Box::into_raw(Box::new(HcOp(qz.quantize(&p)?)));
        Ok(())
    })
}

/// # Safety
/// `delta` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_is_contact_resonant(ell: usize, delta: *const c_char, out: *mut bool) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = is_contact_resonant(&rational_arg(delta, "delta")?, ell);
        Ok(())
    })
}

/// # Safety
/// `delta` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_is_projectively_resonant(ell: usize, delta: *const c_char, out: *mut bool) -> HcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = is_projectively_resonant(&rational_arg(delta, "delta")?, 2 * ell + 1);
        Ok(())
    })
}
