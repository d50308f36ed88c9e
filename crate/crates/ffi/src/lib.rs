//! C interface to `bohr-core`.
//!
//! Kernels and extremal pairs are opaque heap handles released with the
//! matching `_free` function. Every call returns a [`BohrStatus`]; on
//! failure the message is available from [`bohr_last_error_message`] on the
//! same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bohr::cli::scan_kernel;
use bohr::extremal::{build_extremal, ExtremalPair};
use bohr::solver::{
    convex_bohr_radius, galpha_bohr_radius, starlike_bohr_radius, BohrResult, ClassKind,
};
use bohr::{BohrError, PhiSpec};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or a too-small buffer.
    InvalidArgument = 1,
    ParamOutOfRange = 2,
    PositivityRequired = 3,
    NumericalFailure = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrClass {
    Starlike = 0,
    Convex = 1,
}

/// A solved radius. `root` is NaN when no root was located.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BohrRadius {
    pub radius: f64,
    pub root: f64,
    pub capped: bool,
    pub residual: f64,
}

impl From<&BohrResult> for BohrRadius {
    fn from(r: &BohrResult) -> Self {
        BohrRadius {
            radius: r.radius,
            root: r.root.unwrap_or(f64::NAN),
            capped: r.capped,
            residual: r.residual,
        }
    }
}

/// Opaque kernel handle.
pub struct BohrPhi {
    spec: PhiSpec,
}

/// Opaque extremal pair handle.
pub struct BohrExtremal {
    pair: ExtremalPair,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &BohrError) -> BohrStatus {
    match e.exit_code() {
        2 => BohrStatus::ParamOutOfRange,
        3 => BohrStatus::PositivityRequired,
        _ => BohrStatus::NumericalFailure,
    }
}

enum Fail {
    Invalid(&'static str),
    Bohr(BohrError),
}

impl From<BohrError> for Fail {
    fn from(e: BohrError) -> Self {
        Fail::Bohr(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BohrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BohrStatus::Ok,
        Ok(Err(Fail::Invalid(msg))) => {
            set_error(msg.to_string());
            BohrStatus::InvalidArgument
        }
        Ok(Err(Fail::Bohr(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".to_string());
            BohrStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Invalid(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Invalid(what))
}

unsafe fn params_arg(
    keys: *const *const c_char,
    values: *const f64,
    n: usize,
) -> Result<Vec<(String, f64)>, Fail> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if keys.is_null() || values.is_null() {
        return Err(Fail::Invalid("null parameter arrays"));
    }
    let keys = std::slice::from_raw_parts(keys, n);
    let values = std::slice::from_raw_parts(values, n);
    keys.iter()
        .zip(values)
        .map(|(&k, &v)| Ok((str_arg(k, "null parameter name")?.to_string(), v)))
        .collect()
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Invalid("null output pointer"))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Invalid("null handle"))
}

/// Builds a kernel from its name and `n` parameter pairs.
///
/// # Safety
/// `name` must be a NUL-terminated string; `keys` and `values` must point to
/// `n` elements each (or may be null when `n == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_phi_new(
    name: *const c_char,
    keys: *const *const c_char,
    values: *const f64,
    n: usize,
    out: *mut *mut BohrPhi,
) -> BohrStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let name = str_arg(name, "null kernel name")?;
        let params = params_arg(keys, values, n)?;
        let spec = PhiSpec::from_name(name, &params)?;
        *out = Box::into_raw(Box::new(BohrPhi { spec }));
        Ok(())
    })
}

/// # Safety
/// `phi` must come from [`bohr_phi_new`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bohr_phi_free(phi: *mut BohrPhi) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Writes `B_0..B_order` into `out`, which must hold `len >= order + 1` values.
///
/// # Safety
/// `phi` must be a live handle and `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bohr_phi_coefficients(
    phi: *const BohrPhi,
    order: usize,
    out: *mut f64,
    len: usize,
) -> BohrStatus {
    guard(|| {
        let phi = ref_arg(phi)?;
        if out.is_null() || len < order.saturating_add(1) {
            return Err(Fail::Invalid("output buffer too small"));
        }
        let series = phi.spec.phi_coefficients(order)?;
        std::slice::from_raw_parts_mut(out, order + 1).copy_from_slice(series.coeffs());
        Ok(())
    })
}

/// `φ(x)` for real `x ∈ (-1, 1)`.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_phi_eval(phi: *const BohrPhi, x: f64, out: *mut f64) -> BohrStatus {
    guard(|| {
        let phi = ref_arg(phi)?;
        *out_arg(out)? = phi.spec.phi_eval(x)?;
        Ok(())
    })
}

/// Whether `B_1 > 0` and `B_n ≥ 0` up to `order`.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_phi_is_positive(
    phi: *const BohrPhi,
    order: usize,
    out: *mut bool,
) -> BohrStatus {
    guard(|| {
        let phi = ref_arg(phi)?;
        *out_arg(out)? = phi.spec.validate_positivity(order);
        Ok(())
    })
}

/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_extremal_new(
    phi: *const BohrPhi,
    order: usize,
    out: *mut *mut BohrExtremal,
) -> BohrStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let phi = ref_arg(phi)?;
        let pair = build_extremal(&phi.spec, order)?;
        *out = Box::into_raw(Box::new(BohrExtremal { pair }));
        Ok(())
    })
}

/// # Safety
/// `ext` must come from [`bohr_extremal_new`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bohr_extremal_free(ext: *mut BohrExtremal) {
    if !ext.is_null() {
        drop(Box::from_raw(ext));
    }
}

/// # Safety
/// `ext` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_extremal_eval_h(
    ext: *const BohrExtremal,
    r: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let ext = ref_arg(ext)?;
        *out_arg(out)? = ext.pair.eval_h(r)?;
        Ok(())
    })
}

/// # Safety
/// `ext` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_extremal_eval_k(
    ext: *const BohrExtremal,
    r: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let ext = ref_arg(ext)?;
        *out_arg(out)? = ext.pair.eval_k(r)?;
        Ok(())
    })
}

/// # Safety
/// `ext` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_extremal_h_minus1(
    ext: *const BohrExtremal,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        *out_arg(out)? = ref_arg(ext)?.pair.h_minus1();
        Ok(())
    })
}

/// # Safety
/// `ext` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_extremal_k_minus1(
    ext: *const BohrExtremal,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        *out_arg(out)? = ref_arg(ext)?.pair.k_minus1();
        Ok(())
    })
}

/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_starlike_radius(
    phi: *const BohrPhi,
    tol: f64,
    out: *mut BohrRadius,
) -> BohrStatus {
    guard(|| {
        let phi = ref_arg(phi)?;
        let out = out_arg(out)?;
        *out = (&starlike_bohr_radius(&phi.spec, tol)?).into();
        Ok(())
    })
}

/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_convex_radius(
    phi: *const BohrPhi,
    tol: f64,
    out: *mut BohrRadius,
) -> BohrStatus {
    guard(|| {
        let phi = ref_arg(phi)?;
        let out = out_arg(out)?;
        *out = (&convex_bohr_radius(&phi.spec, tol)?).into();
        Ok(())
    })
}

/// Radius for functions starlike with respect to a boundary point.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_galpha_radius(alpha: f64, out: *mut f64) -> BohrStatus {
    guard(|| {
        *out_arg(out)? = galpha_bohr_radius(alpha)?;
        Ok(())
    })
}

/// Value of parameter `over` in `[low, high]` where the radius of kernel
/// `name` reaches 1/3; the other parameters come from `keys`/`values`.
///
/// # Safety
/// As for [`bohr_phi_new`]; `over` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bohr_threshold(
    name: *const c_char,
    over: *const c_char,
    low: f64,
    high: f64,
    keys: *const *const c_char,
    values: *const f64,
    n: usize,
    class_kind: BohrClass,
    tol: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let out = out_arg(out)?;
        let name = str_arg(name, "null kernel name")?;
        let over = str_arg(over, "null parameter name")?;
        let fixed = params_arg(keys, values, n)?;
        let kind = match class_kind {
            BohrClass::Starlike => ClassKind::Starlike,
            BohrClass::Convex => ClassKind::Convex,
        };
        *out = scan_kernel(name, over, (low, high), &fixed, kind, tol)?;
        Ok(())
    })
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bohr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bohr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
