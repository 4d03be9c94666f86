//! C ABI for `probinterf`.
//!
//! Conventions:
//! - Every fallible function returns a [`PiStatus`] and writes its result
//!   through an out-pointer. On failure the out-pointer is left untouched and
//!   [`pi_last_error`] describes the failure (per thread).
//! - Heap objects (`PiPadic`, `PiProfile`, strings) are owned by the caller
//!   once returned and must be released with the matching `*_free`.
//! - Panics never cross the boundary; they surface as `PI_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use probinterf::context::ContextTransform;
use probinterf::interference::{self, Regime, Sign};
use probinterf::padic::{Order, PadicRational, Prime};
use probinterf::padic_probability::{padic_interfere, PadicAmplitudePair, PadicCase};
use probinterf::profiles::{self, BrightnessProfile};
use probinterf::{Error, GNumber};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed input: non-UTF-8 text, unparsable numbers, non-prime moduli.
    Parse = 2,
    /// Input outside the operation's domain (probabilities outside [0, 1],
    /// phase overflow, zero divisors, invalid contexts).
    Domain = 3,
    /// `p1 * p2 = 0`: the interference coefficient is undefined.
    Degenerate = 4,
    /// Operands carry different primes.
    PrimeMismatch = 5,
    DivisionByZero = 6,
    /// A caller buffer is shorter than required.
    BufferTooSmall = 7,
    /// An internal panic was caught; this indicates a bug.
    Panic = 8,
}

/// Interference regime of a fitted record.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiRegime {
    Trigonometric = 0,
    Hyperbolic = 1,
    Boundary = 2,
    Degenerate = 3,
}

/// Case of the p-adic amplitude rule.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiPadicCase {
    /// `|α₂|_p < |α₁|_p`.
    A = 0,
    /// `|α₁|_p < |α₂|_p`.
    B = 1,
    /// `|α₁|_p = |α₂|_p`.
    C = 2,
}

/// A hyperbolic number `x + j·y` with `j² = 1`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiGNumber {
    pub x: f64,
    pub y: f64,
}

/// Polar form `sign · modulus · e^{j·phase}`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiGPolar {
    /// `+1` or `-1`.
    pub sign: i32,
    pub modulus: f64,
    pub phase: f64,
}

/// Fitted interference record for a triple `(p1, p2, p)`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiRecord {
    pub p1: f64,
    pub p2: f64,
    pub p: f64,
    pub lambda: f64,
    pub regime: PiRegime,
    pub phase: f64,
    /// `+1` or `-1`; only meaningful for the hyperbolic regime.
    pub sign: i32,
}

/// Validity window of the hyperbolic rule.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiThetaBounds {
    pub q_plus: f64,
    pub q_minus: f64,
    /// False when `q_plus < 1`; `theta_max` is then NaN.
    pub has_theta_max: bool,
    pub theta_max: f64,
    pub theta_min: f64,
}

/// Outcome of the p-adic amplitude rule, converted to floating point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiPadicInterference {
    pub case_: PiPadicCase,
    pub p: f64,
    pub p1: f64,
    pub p2: f64,
    pub lambda: f64,
    pub theta: f64,
}

/// Two-alternative context with trigonometric phases.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiContext {
    pub priors: [f64; 2],
    /// Row-major conditionals `p(a_j | b_i)`.
    pub cond: [[f64; 2]; 2],
    pub theta: [f64; 2],
}

/// Opaque exact p-adic rational.
pub struct PiPadic(PadicRational);

/// Opaque sampled brightness profile.
pub struct PiProfile(BrightnessProfile);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PiStatus {
    match e {
        Error::DegenerateContext { .. } => PiStatus::Degenerate,
        Error::PrimeMismatch { .. } => PiStatus::PrimeMismatch,
        Error::DivisionByZero => PiStatus::DivisionByZero,
        Error::Parse(_) | Error::NotPrime(_) => PiStatus::Parse,
        _ => PiStatus::Domain,
    }
}

fn fail(e: Error) -> PiStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(name: &str) -> PiStatus {
    set_error(format!("{name} is null"));
    PiStatus::NullPointer
}

/// Runs `f`, converting panics into `PiStatus::Panic`.
fn guard(f: impl FnOnce() -> PiStatus) -> PiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == PiStatus::Ok {
                set_error(String::new());
            }
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            PiStatus::Panic
        }
    }
}

/// Writes `value` through `out` after a null check.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut T, value: T) -> PiStatus {
    if out.is_null() {
        return null("out");
    }
    out.write(value);
    PiStatus::Ok
}

/// # Safety
/// `s` must be null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, PiStatus> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        PiStatus::Parse
    })
}

fn sign_of(s: i32) -> Result<Sign, PiStatus> {
    match s {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        other => {
            set_error(format!("sign must be +1 or -1, got {other}"));
            Err(PiStatus::Domain)
        }
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Message for the most recent failure on this thread; empty after a
/// success. The pointer is valid until the next call into this library on
/// the same thread.
#[no_mangle]
pub extern "C" fn pi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Hyperbolic numbers

fn to_g(z: PiGNumber) -> GNumber {
    GNumber::new(z.x, z.y)
}

fn from_g(z: GNumber) -> PiGNumber {
    PiGNumber { x: z.x, y: z.y }
}

/// Product in 𝐆.
#[no_mangle]
pub extern "C" fn pi_g_mul(a: PiGNumber, b: PiGNumber) -> PiGNumber {
    from_g(to_g(a) * to_g(b))
}

/// `x² − y²`; negative outside the light cone.
#[no_mangle]
pub extern "C" fn pi_g_norm_sq(z: PiGNumber) -> f64 {
    to_g(z).norm_sq()
}

/// `e^{jθ} = cosh θ + j sinh θ`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_g_exp(theta: f64, out: *mut PiGNumber) -> PiStatus {
    guard(|| match GNumber::exp(theta) {
        Ok(z) => put(out, from_g(z)),
        Err(e) => fail(e),
    })
}

/// Polar decomposition of `z` with `x² − y² > 0`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_g_polar(z: PiGNumber, out: *mut PiGPolar) -> PiStatus {
    guard(|| match to_g(z).polar() {
        Ok(p) => put(
            out,
            PiGPolar {
                sign: i32::from(p.sign),
                modulus: p.modulus,
                phase: p.phase,
            },
        ),
        Err(e) => fail(e),
    })
}

// ---------------------------------------------------------------------------
// Interference

/// `λ = (p − p1 − p2) / (2√(p1 p2))`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_lambda_of(p1: f64, p2: f64, p: f64, out: *mut f64) -> PiStatus {
    guard(|| match interference::lambda_of(p1, p2, p) {
        Ok(v) => put(out, v),
        Err(e) => fail(e),
    })
}

/// `p1 + p2 + 2√(p1 p2) cos θ`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_interfere_trig(
    p1: f64,
    p2: f64,
    theta: f64,
    out: *mut f64,
) -> PiStatus {
    guard(|| match interference::interfere_trig(p1, p2, theta) {
        Ok(v) => put(out, v),
        Err(e) => fail(e),
    })
}

/// `p1 + p2 ± 2√(p1 p2) cosh θ`; `sign` is `+1` or `-1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_interfere_hyp(
    p1: f64,
    p2: f64,
    theta: f64,
    sign: i32,
    out: *mut f64,
) -> PiStatus {
    guard(|| {
        let sign = match sign_of(sign) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match interference::interfere_hyp(p1, p2, theta, sign) {
            Ok(v) => put(out, v),
            Err(e) => fail(e),
        }
    })
}

/// Fits λ, regime, phase and sign to `(p1, p2, p)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_fit_record(p1: f64, p2: f64, p: f64, out: *mut PiRecord) -> PiStatus {
    guard(|| match interference::fit_record(p1, p2, p) {
        Ok(r) => put(
            out,
            PiRecord {
                p1: r.p1,
                p2: r.p2,
                p: r.p,
                lambda: r.lambda,
                regime: match r.regime {
                    Regime::Trigonometric => PiRegime::Trigonometric,
                    Regime::Hyperbolic => PiRegime::Hyperbolic,
                    Regime::Boundary => PiRegime::Boundary,
                    Regime::Degenerate => PiRegime::Degenerate,
                },
                phase: r.phase,
                sign: r.sign.value() as i32,
            },
        ),
        Err(e) => fail(e),
    })
}

/// Closed-form window `[0, θ_max]` / `[0, θ_min]` of the hyperbolic rule.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_theta_bounds(p1: f64, p2: f64, out: *mut PiThetaBounds) -> PiStatus {
    guard(|| match profiles::theta_bounds(p1, p2) {
        Ok(b) => put(
            out,
            PiThetaBounds {
                q_plus: b.q_plus,
                q_minus: b.q_minus,
                has_theta_max: b.theta_max.is_some(),
                theta_max: b.theta_max.unwrap_or(f64::NAN),
                theta_min: b.theta_min,
            },
        ),
        Err(e) => fail(e),
    })
}

// ---------------------------------------------------------------------------
// p-adic numbers

fn boxed(x: PadicRational) -> *mut PiPadic {
    Box::into_raw(Box::new(PiPadic(x)))
}

/// # Safety
/// `h` must be null or a live handle from this library.
unsafe fn padic_ref<'a>(h: *const PiPadic, name: &str) -> Result<&'a PadicRational, PiStatus> {
    h.as_ref().map(|h| &h.0).ok_or_else(|| null(name))
}

/// Creates `num/den` in ℚ viewed in ℚ_p.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_new(
    p: u64,
    num: i64,
    den: i64,
    out: *mut *mut PiPadic,
) -> PiStatus {
    guard(|| {
        let made = Prime::new(p).and_then(|p| PadicRational::new(p, num.into(), den.into()));
        match made {
            Ok(x) => put(out, boxed(x)),
            Err(e) => fail(e),
        }
    })
}

/// Parses an integer, `a/b` fraction or decimal with arbitrary precision.
///
/// # Safety
/// `text` must be null or NUL-terminated; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_parse(
    p: u64,
    text: *const c_char,
    out: *mut *mut PiPadic,
) -> PiStatus {
    guard(|| {
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(st) => return st,
        };
        match Prime::new(p).and_then(|p| PadicRational::parse(p, text)) {
            Ok(x) => put(out, boxed(x)),
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `h` must be null or a live handle from this library, freed only once.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_free(h: *mut PiPadic) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The p-adic order. For zero, `*is_infinite` is set and `*order` is 0.
///
/// # Safety
/// `h` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_order(
    h: *const PiPadic,
    order: *mut i64,
    is_infinite: *mut bool,
) -> PiStatus {
    guard(|| {
        let x = match padic_ref(h, "handle") {
            Ok(x) => x,
            Err(st) => return st,
        };
        if order.is_null() || is_infinite.is_null() {
            return null("out");
        }
        let (o, inf) = match x.order() {
            Order::Finite(k) => (k, false),
            Order::Infinity => (0, true),
        };
        order.write(o);
        is_infinite.write(inf);
        PiStatus::Ok
    })
}

/// `|x|_p` as a float (exact value available via the order).
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_abs(h: *const PiPadic, out: *mut f64) -> PiStatus {
    guard(|| match padic_ref(h, "handle") {
        Ok(x) => put(out, x.abs_p_f64()),
        Err(st) => st,
    })
}

/// The value as `num/den`; free with [`pi_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_to_string(h: *const PiPadic) -> *mut c_char {
    match h.as_ref() {
        Some(h) => into_c_string(h.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
unsafe fn padic_binop(
    a: *const PiPadic,
    b: *const PiPadic,
    out: *mut *mut PiPadic,
    op: fn(&PadicRational, &PadicRational) -> probinterf::Result<PadicRational>,
) -> PiStatus {
    guard(|| {
        let (a, b) = match (padic_ref(a, "a"), padic_ref(b, "b")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(st), _) | (_, Err(st)) => return st,
        };
        match op(a, b) {
            Ok(x) => put(out, boxed(x)),
            Err(e) => fail(e),
        }
    })
}

/// Sum of two p-adic rationals with the same prime.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_add(
    a: *const PiPadic,
    b: *const PiPadic,
    out: *mut *mut PiPadic,
) -> PiStatus {
    padic_binop(a, b, out, PadicRational::add)
}

/// Product of two p-adic rationals with the same prime.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_mul(
    a: *const PiPadic,
    b: *const PiPadic,
    out: *mut *mut PiPadic,
) -> PiStatus {
    padic_binop(a, b, out, PadicRational::mul)
}

/// The p-adic amplitude rule for `α₁ + ε·α₂`.
///
/// # Safety
/// All handles must be live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_padic_interfere(
    alpha1: *const PiPadic,
    alpha2: *const PiPadic,
    epsilon: *const PiPadic,
    out: *mut PiPadicInterference,
) -> PiStatus {
    guard(|| {
        let args = (
            padic_ref(alpha1, "alpha1"),
            padic_ref(alpha2, "alpha2"),
            padic_ref(epsilon, "epsilon"),
        );
        let (a1, a2, eps) = match args {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(st), _, _) | (_, Err(st), _) | (_, _, Err(st)) => return st,
        };
        let pair = match PadicAmplitudePair::new(a1.clone(), a2.clone(), eps.clone()) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let r = padic_interfere(&pair);
        let f = probinterf::exact::to_f64;
        put(
            out,
            PiPadicInterference {
                case_: match r.case {
                    PadicCase::A => PiPadicCase::A,
                    PadicCase::B => PiPadicCase::B,
                    PadicCase::C => PiPadicCase::C,
                },
                p: f(&r.p),
                p1: f(&r.p1),
                p2: f(&r.p2),
                lambda: f(&r.lambda),
                theta: r.theta(),
            },
        )
    })
}

// ---------------------------------------------------------------------------
// Profiles

/// Trigonometric profile on `n` evenly spaced radii in `[lo, hi]`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_trig(
    p1: f64,
    p2: f64,
    lo: f64,
    hi: f64,
    n: usize,
    out: *mut *mut PiProfile,
) -> PiStatus {
    guard(|| {
        let made =
            profiles::uniform_grid(lo, hi, n).and_then(|g| profiles::profile_trig(p1, p2, &g));
        match made {
            Ok(p) => put(out, Box::into_raw(Box::new(PiProfile(p)))),
            Err(e) => fail(e),
        }
    })
}

/// p-adic two-slit profile over `ε ∈ [1, eps_max]` not divisible by `p`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_padic(
    p: u64,
    l: u32,
    eps_max: u64,
    out: *mut *mut PiProfile,
) -> PiStatus {
    guard(|| match Prime::new(p) {
        Ok(p) => put(
            out,
            Box::into_raw(Box::new(PiProfile(profiles::profile_padic(p, l, eps_max)))),
        ),
        Err(e) => fail(e),
    })
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_len(h: *const PiProfile) -> usize {
    h.as_ref().map_or(0, |h| h.0.len())
}

/// # Safety
/// `buf` must be valid for `len` writes.
unsafe fn copy_out(src: &[f64], buf: *mut f64, len: usize) -> PiStatus {
    if buf.is_null() {
        return null("buf");
    }
    if len < src.len() {
        set_error(format!("buffer holds {len} values, {} required", src.len()));
        return PiStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    PiStatus::Ok
}

/// Copies the sampled probabilities into `buf` (capacity `len`).
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_values(
    h: *const PiProfile,
    buf: *mut f64,
    len: usize,
) -> PiStatus {
    guard(|| match h.as_ref() {
        Some(h) => copy_out(&h.0.values, buf, len),
        None => null("handle"),
    })
}

/// Copies the radii into `buf` (capacity `len`).
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_grid(
    h: *const PiProfile,
    buf: *mut f64,
    len: usize,
) -> PiStatus {
    guard(|| match h.as_ref() {
        Some(h) => copy_out(&h.0.grid, buf, len),
        None => null("handle"),
    })
}

/// The profile as CSV; free with [`pi_string_free`]. Null on a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_csv(h: *const PiProfile) -> *mut c_char {
    match h.as_ref() {
        Some(h) => into_c_string(h.0.to_csv()),
        None => ptr::null_mut(),
    }
}

/// Releases a profile. Null is a no-op.
///
/// # Safety
/// `h` must be null or a live handle, freed only once.
#[no_mangle]
pub unsafe extern "C" fn pi_profile_free(h: *mut PiProfile) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

// ---------------------------------------------------------------------------
// Contexts

fn context(c: &PiContext) -> Result<ContextTransform, PiStatus> {
    ContextTransform::trig(c.priors, c.cond, c.theta).map_err(fail)
}

/// Classical total probability `Σ_i p_i^b p_ij`.
///
/// # Safety
/// `ctx` must be valid for reads; `out` must be valid for two writes.
#[no_mangle]
pub unsafe extern "C" fn pi_total_prob_classical(ctx: *const PiContext, out: *mut f64) -> PiStatus {
    guard(|| {
        let Some(c) = ctx.as_ref() else {
            return null("ctx");
        };
        match context(c).and_then(|t| t.total_prob_classical().map_err(fail)) {
            Ok(v) => copy_out(&v, out, 2),
            Err(st) => st,
        }
    })
}

/// Total probability with the trigonometric interference term.
///
/// # Safety
/// `ctx` must be valid for reads; `out` must be valid for two writes.
#[no_mangle]
pub unsafe extern "C" fn pi_total_prob_quantum(ctx: *const PiContext, out: *mut f64) -> PiStatus {
    guard(|| {
        let Some(c) = ctx.as_ref() else {
            return null("ctx");
        };
        match context(c).and_then(|t| t.total_prob_quantum().map_err(fail)) {
            Ok(v) => copy_out(&v, out, 2),
            Err(st) => st,
        }
    })
}
