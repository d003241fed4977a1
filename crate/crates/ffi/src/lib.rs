//! C ABI over `kleincurve`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every call returns a [`KcStatus`];
//! on failure [`kc_last_error_message`] describes the most recent error on
//! the calling thread. Complex matrices are 18 doubles, row-major, each
//! entry as `re, im`. Panics never unwind into C.

use kleincurve::curves;
use kleincurve::linalg::{Mat3, C64};
use kleincurve::projective::{self, ElementKind};
use kleincurve::{Error, HomPoly, ProjTransform, Tol};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status of every call. Values are stable.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NonConvergent = 3,
    NotInvariant = 4,
    IllConditioned = 5,
    Unsupported = 6,
    Failed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KcElementKind {
    Elliptic = 0,
    Parabolic = 1,
    Loxodromic = 2,
}

/// Numeric invariants of a curve with only nodes and cusps as singularities.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KcCurveInvariants {
    pub degree: i64,
    pub nodes: i64,
    pub cusps: i64,
    pub class_: i64,
    pub inflections: i64,
    pub genus: i64,
}

/// Opaque element of PSL(3,ℂ).
pub struct KcTransform(ProjTransform);

/// Opaque nonzero homogeneous polynomial in `x, y, z`.
pub struct KcPoly(HomPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KcStatus {
    match e {
        Error::InvalidInput(_) => KcStatus::InvalidInput,
        Error::NonConvergent(_) => KcStatus::NonConvergent,
        Error::NotInvariant { .. } => KcStatus::NotInvariant,
        Error::IllConditioned { .. } => KcStatus::IllConditioned,
        Error::Unsupported(_) | Error::DegreeUnsupported { .. } => KcStatus::Unsupported,
        _ => KcStatus::Failed,
    }
}

/// Runs `body`, recording errors and containing panics.
fn guard(body: impl FnOnce() -> Result<(), (KcStatus, String)>) -> KcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => KcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KcStatus::Panic
        }
    }
}

fn fail(e: Error) -> (KcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (KcStatus, String) {
    (KcStatus::NullPointer, format!("{what} is null"))
}

fn tol_of(tol: f64) -> Result<Tol, (KcStatus, String)> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(Tol(tol))
    } else {
        Err((KcStatus::InvalidInput, format!("tolerance must lie in (0, 1), got {tol}")))
    }
}

unsafe fn read_matrix(p: *const f64) -> Mat3 {
    let s = std::slice::from_raw_parts(p, 18);
    let mut m = [[C64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let k = 2 * (3 * i + j);
            m[i][j] = C64::new(s[k], s[k + 1]);
        }
    }
    m
}

unsafe fn write_matrix(m: &Mat3, out: *mut f64) {
    let s = std::slice::from_raw_parts_mut(out, 18);
    for i in 0..3 {
        for j in 0..3 {
            let k = 2 * (3 * i + j);
            s[k] = m[i][j].re;
            s[k + 1] = m[i][j].im;
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (KcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (KcStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn kc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a transformation from 18 doubles.
///
/// # Safety
/// `entries` must point to 18 readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_transform_new(entries: *const f64, out: *mut *mut KcTransform) -> KcStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let t = ProjTransform::new(read_matrix(entries)).map_err(fail)?;
        *out = Box::into_raw(Box::new(KcTransform(t)));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`kc_transform_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kc_transform_free(t: *mut KcTransform) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Writes the determinant-1 lift as 18 doubles.
///
/// # Safety
/// `t` must be a live handle; `out` must point to 18 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn kc_transform_lift(t: *const KcTransform, out: *mut f64) -> KcStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_matrix(t.0.lift(), out);
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_classify_element(t: *const KcTransform, tol: f64, out: *mut KcElementKind) -> KcStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let class = projective::classify_element(&t.0, tol_of(tol)?).map_err(fail)?;
        *out = match class.kind {
            ElementKind::Elliptic => KcElementKind::Elliptic,
            ElementKind::Parabolic => KcElementKind::Parabolic,
            ElementKind::Loxodromic => KcElementKind::Loxodromic,
        };
        Ok(())
    })
}

/// Limit of the rescaled powers, normalized so its largest entry is 1.
///
/// # Safety
/// `t` must be a live handle; `out` must point to 18 writable doubles and
/// `rank` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_power_limit(t: *const KcTransform, tol: f64, out: *mut f64, rank: *mut u32) -> KcStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        if out.is_null() || rank.is_null() {
            return Err(null("out"));
        }
        let limit = projective::power_limit(&t.0, tol_of(tol)?).map_err(fail)?;
        write_matrix(limit.matrix(), out);
        *rank = limit.rank() as u32;
        Ok(())
    })
}

/// Parses text such as `x*y^2 - z^3`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_poly_parse(text: *const c_char, out: *mut *mut KcPoly) -> KcStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let f: HomPoly = s.parse().map_err(fail)?;
        *out = Box::into_raw(Box::new(KcPoly(f)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`kc_poly_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kc_poly_free(p: *mut KcPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_poly_degree(p: *const KcPoly, out: *mut u32) -> KcStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.0.degree();
        Ok(())
    })
}

/// Text form of the polynomial; release with [`kc_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_poly_to_string(p: *const KcPoly, out: *mut *mut c_char) -> KcStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(p.0.to_string());
        Ok(())
    })
}

/// Certifies `F(g·X) = λ F(X)`: writes `λ` as two doubles and the relative
/// residual. Fails with `NotInvariant` (residual still written) otherwise.
///
/// # Safety
/// Handles must be live; `scale` must point to 2 writable doubles and
/// `residual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_invariance_check(
    p: *const KcPoly,
    t: *const KcTransform,
    tol: f64,
    scale: *mut f64,
    residual: *mut f64,
) -> KcStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        if scale.is_null() || residual.is_null() {
            return Err(null("out"));
        }
        match curves::invariance_check(&p.0, &t.0, tol_of(tol)?) {
            Ok(cert) => {
                *scale = cert.scale.re;
                *scale.add(1) = cert.scale.im;
                *residual = cert.residual;
                Ok(())
            }
            Err(e) => {
                if let Error::NotInvariant { residual: r, .. } = e {
                    *residual = r;
                }
                Err(fail(e))
            }
        }
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_curve_invariants(p: *const KcPoly, out: *mut KcCurveInvariants) -> KcStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inv = curves::curve_invariants(&p.0).map_err(fail)?;
        *out = KcCurveInvariants {
            degree: inv.degree,
            nodes: inv.nodes,
            cusps: inv.cusps,
            class_: inv.class,
            inflections: inv.inflections,
            genus: inv.genus,
        };
        Ok(())
    })
}

/// Full configuration report of a scene (JSON text) as a machine document.
/// `exit_code` receives the command-line exit code for the same scene; the
/// document is written even when that code is nonzero.
///
/// # Safety
/// `scene_json` must be a nul-terminated string; `out` and `exit_code` must
/// be writable. Release `*out` with [`kc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kc_report_json(
    scene_json: *const c_char,
    tol: f64,
    seed: u64,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> KcStatus {
    guard(|| {
        let text = read_str(scene_json, "scene_json")?;
        if out.is_null() || exit_code.is_null() {
            return Err(null("out"));
        }
        let (code, doc) = kleincurve::cli::report_machine(text, tol_of(tol)?.0, seed);
        *out = into_c_string(doc);
        *exit_code = code;
        Ok(())
    })
}
