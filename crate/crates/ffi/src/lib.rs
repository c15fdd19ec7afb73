//! C interface to the garside toolkit.
//!
//! Systems and elements are opaque heap handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns a
//! [`GarsideStatus`]; on failure the message is available from
//! [`garside_last_error`] until the next failing call on the same thread.
//! Strings returned through out-parameters are released with
//! [`garside_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use garside::{ArtinSystem, GarsideError, GroupElement};

/// Status codes; `Ok` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GarsideStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownFamily = 3,
    RankOutOfRange = 4,
    MalformedMatrix = 5,
    Reducible = 6,
    NotFiniteType = 7,
    InvalidAtom = 8,
    MalformedWord = 9,
    MixedSystems = 10,
    Precondition = 11,
    BudgetExceeded = 12,
    CertificateFailed = 13,
    NotFound = 14,
    Panic = 15,
}

/// An Artin–Tits system of spherical type.
pub struct GarsideSystem(Arc<ArtinSystem>);

/// An element of an Artin–Tits group, in left normal form.
pub struct GarsideElement(GroupElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &GarsideError) -> GarsideStatus {
    use GarsideStatus as S;
    match err {
        GarsideError::UnknownFamily(_) => S::UnknownFamily,
        GarsideError::RankOutOfRange(_) => S::RankOutOfRange,
        GarsideError::MalformedMatrix(_) => S::MalformedMatrix,
        GarsideError::Reducible => S::Reducible,
        GarsideError::NotFiniteType => S::NotFiniteType,
        GarsideError::InvalidAtom(_) => S::InvalidAtom,
        GarsideError::MalformedWord(_) => S::MalformedWord,
        GarsideError::MixedSystems => S::MixedSystems,
        GarsideError::Precondition(_) => S::Precondition,
        GarsideError::BudgetExceeded(_) => S::BudgetExceeded,
        GarsideError::CertificateFailed(_) => S::CertificateFailed,
        GarsideError::NotFound(_) => S::NotFound,
    }
}

enum Fail {
    Status(GarsideStatus, String),
    Core(GarsideError),
}

impl From<GarsideError> for Fail {
    fn from(e: GarsideError) -> Self {
        Fail::Core(e)
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GarsideStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GarsideStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            GarsideStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(GarsideStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(GarsideStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::Status(GarsideStatus::NullPointer, format!("null {what}")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(GarsideStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(value);
    Ok(())
}

fn boxed(g: GroupElement) -> *mut GarsideElement {
    Box::into_raw(Box::new(GarsideElement(g)))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn garside_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a system from a name such as `A4`, `E8` or `I2(7)`.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_system_new(spec: *const c_char, out: *mut *mut GarsideSystem) -> GarsideStatus {
    guard(|| {
        let sys = garside::system(read_str(spec)?)?;
        write_out(out, Box::into_raw(Box::new(GarsideSystem(sys))))
    })
}

/// # Safety
/// `sys` must come from [`garside_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn garside_system_free(sys: *mut GarsideSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of atoms; 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live system handle.
#[no_mangle]
pub unsafe extern "C" fn garside_system_rank(sys: *const GarsideSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.rank())
}

/// Parses a signed word such as `"1 2 -3"` (1-based atoms).
///
/// # Safety
/// `sys` must be live, `word` a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_parse(
    sys: *const GarsideSystem,
    word: *const c_char,
    out: *mut *mut GarsideElement,
) -> GarsideStatus {
    guard(|| {
        let sys = deref(sys, "system")?;
        let g = GroupElement::parse(&sys.0, read_str(word)?)?;
        write_out(out, boxed(g))
    })
}

/// `Δ^k`.
///
/// # Safety
/// `sys` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_delta_power(
    sys: *const GarsideSystem,
    k: i64,
    out: *mut *mut GarsideElement,
) -> GarsideStatus {
    guard(|| {
        let sys = deref(sys, "system")?;
        write_out(out, boxed(GroupElement::delta_power(&sys.0, k)))
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn garside_element_free(g: *mut GarsideElement) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `a·b`; both must belong to the same system.
///
/// # Safety
/// `a` and `b` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_multiply(
    a: *const GarsideElement,
    b: *const GarsideElement,
    out: *mut *mut GarsideElement,
) -> GarsideStatus {
    guard(|| {
        let (a, b) = (deref(a, "element")?, deref(b, "element")?);
        write_out(out, boxed(a.0.multiply(&b.0)?))
    })
}

/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_inverse(g: *const GarsideElement, out: *mut *mut GarsideElement) -> GarsideStatus {
    guard(|| write_out(out, boxed(deref(g, "element")?.0.inverse())))
}

/// `Δ^{-p} g Δ^p`.
///
/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_tau(g: *const GarsideElement, p: i64, out: *mut *mut GarsideElement) -> GarsideStatus {
    guard(|| write_out(out, boxed(deref(g, "element")?.0.tau(p))))
}

/// The mirror image of `g`.
///
/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_reverse(g: *const GarsideElement, out: *mut *mut GarsideElement) -> GarsideStatus {
    guard(|| write_out(out, boxed(deref(g, "element")?.0.reverse())))
}

/// Writes `inf`, `sup` and the canonical length; any pointer may be null.
///
/// # Safety
/// `g` must be live; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_bounds(
    g: *const GarsideElement,
    inf: *mut i64,
    sup: *mut i64,
    canonical_length: *mut u64,
) -> GarsideStatus {
    guard(|| {
        let g = &deref(g, "element")?.0;
        if !inf.is_null() {
            inf.write(g.inf());
        }
        if !sup.is_null() {
            sup.write(g.sup());
        }
        if !canonical_length.is_null() {
            canonical_length.write(g.canonical_length() as u64);
        }
        Ok(())
    })
}

/// Sets `*equal` to whether the two elements coincide.
///
/// # Safety
/// `a` and `b` must be live and `equal` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_equal(
    a: *const GarsideElement,
    b: *const GarsideElement,
    equal: *mut bool,
) -> GarsideStatus {
    guard(|| {
        let (a, b) = (deref(a, "element")?, deref(b, "element")?);
        if !a.0.same_system(&b.0) {
            return Err(GarsideError::MixedSystems.into());
        }
        write_out(equal, a.0 == b.0)
    })
}

/// Human-readable normal form, e.g. `Δ^1 · (1 2)(2)`.
///
/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_render(g: *const GarsideElement, out: *mut *mut c_char) -> GarsideStatus {
    guard(|| write_out(out, owned_string(deref(g, "element")?.0.render())))
}

/// Normal form as a JSON object.
///
/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_element_to_json(g: *const GarsideElement, out: *mut *mut c_char) -> GarsideStatus {
    guard(|| {
        let g = deref(g, "element")?;
        let text = serde_json::to_string(&g.0.to_json()).expect("normal forms serialize");
        write_out(out, owned_string(text))
    })
}

/// Spectral growth rate with respect to the simple elements.
///
/// # Safety
/// `sys` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn garside_growth_rate(sys: *const GarsideSystem, out: *mut f64) -> GarsideStatus {
    guard(|| {
        let sys = deref(sys, "system")?;
        let rate = garside::growth::growth_rate(&sys.0, garside::cli::budget_from_env())?;
        write_out(out, rate)
    })
}

/// Runs the command-line program on `argv[0..argc]` (without the program
/// name) and returns its exit code and output streams.
///
/// # Safety
/// `argv` must hold `argc` valid strings; all out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn garside_cli_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    stdout_text: *mut *mut c_char,
    stderr_text: *mut *mut c_char,
) -> GarsideStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return Err(Fail::Status(GarsideStatus::NullPointer, "null argv".into()));
        }
        let mut args = vec!["garside".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        if exit_code.is_null() || stdout_text.is_null() || stderr_text.is_null() {
            return Err(Fail::Status(GarsideStatus::NullPointer, "null out-parameter".into()));
        }
        let out = garside::cli::run(args);
        exit_code.write(out.code);
        stdout_text.write(owned_string(out.stdout));
        stderr_text.write(owned_string(out.stderr));
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn garside_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
