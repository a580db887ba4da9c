//! C ABI over `hardgap`.
//!
//! All entry points take an opaque [`HgContext`] created by
//! [`hg_context_new`], write results through out-pointers, and return an
//! [`HgStatus`]. On failure the context keeps a message retrievable with
//! [`hg_last_error`] until the next call on the same context.
//!
//! A context must not be used from two threads at once.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hardgap::gap::{self, E0Variant};
use hardgap::mc::{self, EnsembleSpec};
use hardgap::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    ParameterQuantization = 2,
    Domain = 3,
    InvalidArgument = 4,
    LowerParameterPole = 5,
    Cancellation = 6,
    NonConvergence = 7,
    BranchInconsistency = 8,
    Resource = 9,
    Panic = 10,
}

impl From<&Error> for HgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ParameterQuantization(_) => HgStatus::ParameterQuantization,
            Error::Domain(_) => HgStatus::Domain,
            Error::InvalidArgument(_) => HgStatus::InvalidArgument,
            Error::LowerParameterPole { .. } => HgStatus::LowerParameterPole,
            Error::Cancellation { .. } => HgStatus::Cancellation,
            Error::NonConvergence { .. } => HgStatus::NonConvergence,
            Error::BranchInconsistency(_) => HgStatus::BranchInconsistency,
            Error::Resource(_) => HgStatus::Resource,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgAsymptoticVariant {
    Pu = 0,
    Mg = 1,
    Limit = 2,
}

/// Opaque evaluation context.
pub struct HgContext {
    tol: f64,
    last_error: Option<CString>,
}

impl HgContext {
    fn call<F>(&mut self, f: F) -> HgStatus
    where
        F: FnOnce(f64) -> Result<(), Error>,
    {
        let tol = self.tol;
        let outcome = catch_unwind(AssertUnwindSafe(|| f(tol)));
        let (status, msg) = match outcome {
            Ok(Ok(())) => (HgStatus::Ok, None),
            Ok(Err(e)) => (HgStatus::from(&e), Some(e.to_string())),
            Err(_) => (HgStatus::Panic, Some("internal panic".to_string())),
        };
        self.last_error = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
        status
    }
}

/// # Safety
/// `ctx` must be null or a pointer returned by [`hg_context_new`] that has not
/// been freed.
unsafe fn context<'a>(ctx: *mut HgContext) -> Option<&'a mut HgContext> {
    ctx.as_mut()
}

/// New context with tolerance `1e-12`. Free with [`hg_context_free`].
#[no_mangle]
pub extern "C" fn hg_context_new() -> *mut HgContext {
    Box::into_raw(Box::new(HgContext { tol: 1e-12, last_error: None }))
}

/// # Safety
/// `ctx` must be null or a live pointer from [`hg_context_new`].
#[no_mangle]
pub unsafe extern "C" fn hg_context_free(ctx: *mut HgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be null or a live pointer from [`hg_context_new`].
#[no_mangle]
pub unsafe extern "C" fn hg_set_tolerance(ctx: *mut HgContext, tol: f64) -> HgStatus {
    let Some(c) = context(ctx) else { return HgStatus::NullPointer };
    let status = c.call(|_| {
        if tol > 0.0 && tol.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")))
        }
    });
    if status == HgStatus::Ok {
        c.tol = tol;
    }
    status
}

/// Message of the last failed call, or null. Owned by the context; valid
/// until the next call on it.
///
/// # Safety
/// `ctx` must be null or a live pointer from [`hg_context_new`].
#[no_mangle]
pub unsafe extern "C" fn hg_last_error(ctx: *const HgContext) -> *const c_char {
    match ctx.as_ref().and_then(|c| c.last_error.as_ref()) {
        Some(m) => m.as_ptr(),
        None => ptr::null(),
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn hg_status_name(status: HgStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        HgStatus::Ok => b"ok\0",
        HgStatus::NullPointer => b"null_pointer\0",
        HgStatus::ParameterQuantization => b"parameter_quantization\0",
        HgStatus::Domain => b"domain\0",
        HgStatus::InvalidArgument => b"invalid_argument\0",
        HgStatus::LowerParameterPole => b"lower_parameter_pole\0",
        HgStatus::Cancellation => b"cancellation\0",
        HgStatus::NonConvergence => b"nonconvergence\0",
        HgStatus::BranchInconsistency => b"branch_inconsistency\0",
        HgStatus::Resource => b"resource\0",
        HgStatus::Panic => b"panic\0",
    };
    s.as_ptr().cast()
}

macro_rules! guard {
    ($ctx:expr, $($out:expr),+) => {{
        let Some(c) = context($ctx) else { return HgStatus::NullPointer };
        if false $(|| $out.is_null())+ {
            c.last_error = Some(CString::new("null output pointer").expect("literal"));
            return HgStatus::NullPointer;
        }
        c
    }};
}

/// Hard-edge `E(0;(0,s))`; requires `βa/2` to be a nonnegative integer.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid `double*`.
#[no_mangle]
pub unsafe extern "C" fn hg_exact_e0_hard(ctx: *mut HgContext, s: f64, a: f64, beta: f64, out: *mut f64) -> HgStatus {
    let c = guard!(ctx, out);
    c.call(|tol| {
        *out = gap::exact_e0_hard(s, a, beta, tol)?.value;
        Ok(())
    })
}

/// Hard-edge `E(n;(0,s))`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid `double*`.
#[no_mangle]
pub unsafe extern "C" fn hg_exact_e_hard(
    ctx: *mut HgContext,
    s: f64,
    a: f64,
    beta: f64,
    n: usize,
    out: *mut f64,
) -> HgStatus {
    let c = guard!(ctx, out);
    c.call(|tol| {
        *out = gap::exact_e_hard(s, a, beta, n, tol.max(1e-10))?.value;
        Ok(())
    })
}

/// `E(0;(0,x))` for `big_n` eigenvalues, weight `λ^{βa/2} e^{-βλ/2}`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid `double*`.
#[no_mangle]
pub unsafe extern "C" fn hg_exact_e0_finite_n(
    ctx: *mut HgContext,
    x: f64,
    a: f64,
    beta: f64,
    big_n: usize,
    out: *mut f64,
) -> HgStatus {
    let c = guard!(ctx, out);
    c.call(|tol| {
        *out = gap::exact_e0_finite_n(x, a, beta, big_n, tol)?.value;
        Ok(())
    })
}

/// Natural log of the large-`s` form of `E(n;(0,s))`.
///
/// # Safety
/// `ctx` must be a live context and `out_ln` a valid `double*`.
#[no_mangle]
pub unsafe extern "C" fn hg_asymptotic_ln_e(
    ctx: *mut HgContext,
    s: f64,
    a: f64,
    beta: f64,
    n: f64,
    variant: HgAsymptoticVariant,
    out_ln: *mut f64,
) -> HgStatus {
    let c = guard!(ctx, out_ln);
    let v = match variant {
        HgAsymptoticVariant::Pu => E0Variant::PU,
        HgAsymptoticVariant::Mg => E0Variant::MG,
        HgAsymptoticVariant::Limit => E0Variant::Limit,
    };
    c.call(|_| {
        *out_ln = gap::asymptotic_en(a, beta, n, v)?.ln_evaluate(s);
        Ok(())
    })
}

/// Natural log of the large-`N` value of `E(0;(0,4N s̃))`.
///
/// # Safety
/// `ctx` must be a live context and `out_ln` a valid `double*`.
#[no_mangle]
pub unsafe extern "C" fn hg_large_deviation_ln_e0(
    ctx: *mut HgContext,
    big_n: usize,
    s_tilde: f64,
    a: f64,
    beta: f64,
    out_ln: *mut f64,
) -> HgStatus {
    let c = guard!(ctx, out_ln);
    c.call(|_| {
        *out_ln = gap::large_deviation_e0(big_n, s_tilde, a, beta)?;
        Ok(())
    })
}

/// Monte Carlo estimate of `E(n;(0,s))` at matrix size `big_n`, interval
/// `(0, s/(4N))`.
///
/// # Safety
/// `ctx` must be a live context; `out_p` and `out_stderr` valid `double*`.
#[no_mangle]
pub unsafe extern "C" fn hg_mc_estimate_gap(
    ctx: *mut HgContext,
    beta: f64,
    a: f64,
    big_n: usize,
    s: f64,
    n: usize,
    samples: usize,
    seed: u64,
    out_p: *mut f64,
    out_stderr: *mut f64,
) -> HgStatus {
    let c = guard!(ctx, out_p, out_stderr);
    c.call(|_| {
        let spec = EnsembleSpec::new(beta, a, big_n)?;
        let est = mc::estimate_gap(&spec, s, n, samples, seed)?;
        *out_p = est.probability;
        *out_stderr = est.stderr;
        Ok(())
    })
}
