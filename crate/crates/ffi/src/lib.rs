//! C ABI for the quasigalois library.
//!
//! Objects are opaque handles created by `qg_*` constructors and released by
//! the matching `*_free`. Every fallible call returns a [`QgStatus`]; on
//! failure `qg_last_error_message` describes the error for the calling thread.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with `qg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use quasigalois::cli::{CurveFile, LoadedCurve, Scenario};
use quasigalois::corpus;
use quasigalois::plane::ProjPoint;
use quasigalois::qgal::{census, discover, quasi_galois_order, QGCertificate, DEFAULT_DISCOVERY_CAP};
use quasigalois::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    RootsMissing = 5,
    ProjectionDegenerate = 6,
    CapExceeded = 7,
    VerificationFailed = 8,
    OutOfRange = 9,
    Internal = 10,
}

/// A plane curve with its coefficient field and seed points.
pub struct QgCurve {
    inner: LoadedCurve,
}

/// The decided quasi-Galois order at one point.
pub struct QgCertificate {
    inner: QGCertificate,
}

/// Certificates from discovery, sorted by point.
pub struct QgCertificateList {
    degree: u32,
    items: Vec<QGCertificate>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QgStatus {
    match e {
        Error::Parse { .. } => QgStatus::Parse,
        Error::RootsMissing { .. } => QgStatus::RootsMissing,
        Error::ProjectionDegenerate { .. } => QgStatus::ProjectionDegenerate,
        Error::DiscoveryCapExceeded { .. } | Error::ClosureCapExceeded { .. } => QgStatus::CapExceeded,
        _ => QgStatus::InvalidInput,
    }
}

fn fail(e: Error) -> QgStatus {
    set_error(&format!("{} [{}]", e, e.code()));
    status_of(&e)
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> QgStatus) -> QgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error");
            QgStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QgStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(QgStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QgStatus::InvalidUtf8
    })
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> QgStatus {
    *out = Box::into_raw(Box::new(value));
    QgStatus::Ok
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> QgStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            QgStatus::Ok
        }
        Err(_) => {
            set_error("string contains a nul byte");
            QgStatus::Internal
        }
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return QgStatus::NullPointer;
        }
    };
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call; never null.
#[unsafe(no_mangle)]
pub extern "C" fn qg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[unsafe(no_mangle)]
pub extern "C" fn qg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a curve file (JSON text).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_curve_from_json(json: *const c_char, out: *mut *mut QgCurve) -> QgStatus {
    nonnull!(out);
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match CurveFile::from_json(text).and_then(|f| f.load()) {
            Ok(inner) => write_out(out, QgCurve { inner }),
            Err(e) => fail(e),
        }
    })
}

/// Builds a corpus curve from a spec such as `"fermat:6"` or `"klein"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_curve_from_corpus(spec: *const c_char, out: *mut *mut QgCurve) -> QgStatus {
    nonnull!(out);
    guard(|| {
        let spec = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match corpus::from_spec(spec) {
            Ok(c) => write_out(
                out,
                QgCurve {
                    inner: LoadedCurve {
                        name: c.name,
                        ctx: c.ctx,
                        form: c.form,
                        seeds: c.seeds,
                    },
                },
            ),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `curve` must be null or a handle from `qg_curve_from_*` not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_curve_free(curve: *mut QgCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Degree of the curve, or 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_curve_degree(curve: *const QgCurve) -> u32 {
    curve.as_ref().map_or(0, |c| c.inner.form.degree())
}

/// Serializes the curve as a curve file.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_curve_to_json(curve: *const QgCurve, out: *mut *mut c_char) -> QgStatus {
    nonnull!(curve, out);
    guard(|| {
        let c = &(*curve).inner;
        write_string(out, CurveFile::from_form(&c.name, &c.form, &c.seeds).to_json())
    })
}

/// Decides the quasi-Galois order at a point literal such as `"1:0:0"`.
///
/// # Safety
/// `curve` must be a live handle, `point` a nul-terminated string and `out`
/// a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_analyze(
    curve: *const QgCurve,
    point: *const c_char,
    out: *mut *mut QgCertificate,
) -> QgStatus {
    nonnull!(curve, out);
    guard(|| {
        let c = &(*curve).inner;
        let text = match read_str(point) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let cert = ProjPoint::parse(&c.ctx, text).and_then(|p| quasi_galois_order(&c.form, &p));
        match cert {
            Ok(inner) => write_out(out, QgCertificate { inner }),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `cert` must be null or a live certificate handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_free(cert: *mut QgCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// |G₀[P]|; 1 means not quasi-Galois, 0 a null handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_order(cert: *const QgCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.inner.order)
}

/// # Safety
/// `cert` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_projection_degree(cert: *const QgCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.inner.projection_degree)
}

/// # Safety
/// `cert` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_on_curve(cert: *const QgCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.inner.on_curve)
}

/// # Safety
/// `cert` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_is_galois(cert: *const QgCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.inner.galois())
}

/// The certificate record as JSON (point, order, generator, axis).
///
/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_to_json(cert: *const QgCertificate, out: *mut *mut c_char) -> QgStatus {
    nonnull!(cert, out);
    guard(|| match serde_json::to_string(&(*cert).inner.to_record()) {
        Ok(s) => write_string(out, s),
        Err(e) => fail(e.into()),
    })
}

/// Discovery from the curve's seed points (the coordinate vertices when it
/// has none). `cap` of 0 selects the default.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_discover(curve: *const QgCurve, cap: usize, out: *mut *mut QgCertificateList) -> QgStatus {
    nonnull!(curve, out);
    guard(|| {
        let c = &(*curve).inner;
        let seeds: Vec<ProjPoint> = if c.seeds.is_empty() {
            (0..3).map(|i| ProjPoint::vertex(&c.ctx, i)).collect()
        } else {
            c.seeds.clone()
        };
        let cap = if cap == 0 { DEFAULT_DISCOVERY_CAP } else { cap };
        match discover(&c.form, &seeds, cap) {
            Ok(items) => write_out(
                out,
                QgCertificateList {
                    degree: c.form.degree(),
                    items,
                },
            ),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `list` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_list_len(list: *const QgCertificateList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

/// Copies entry `index` into a new certificate handle.
///
/// # Safety
/// `list` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_list_get(
    list: *const QgCertificateList,
    index: usize,
    out: *mut *mut QgCertificate,
) -> QgStatus {
    nonnull!(list, out);
    match (&(*list).items).get(index) {
        Some(c) => write_out(out, QgCertificate { inner: c.clone() }),
        None => {
            set_error(&format!("index {index} out of range"));
            QgStatus::OutOfRange
        }
    }
}

/// The list with its census as JSON: `{"certificates": [...], "census": {...}}`.
///
/// # Safety
/// `list` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_list_to_json(list: *const QgCertificateList, out: *mut *mut c_char) -> QgStatus {
    nonnull!(list, out);
    guard(|| {
        let l = &*list;
        let value = serde_json::json!({
            "certificates": l.items.iter().map(|c| c.to_record()).collect::<Vec<_>>(),
            "census": census(l.degree, &l.items),
        });
        write_string(out, value.to_string())
    })
}

/// # Safety
/// `list` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_certificate_list_free(list: *mut QgCertificateList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Runs a named scenario (`klein21`, `fermat:6`, ...). Returns `Ok` when every
/// check passes and `VerificationFailed` otherwise; in both cases the result
/// record is written to `out_json` when it is non-null.
///
/// # Safety
/// `id` must be a nul-terminated string; `out_json` null or a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qg_verify_scenario(id: *const c_char, cap: usize, out_json: *mut *mut c_char) -> QgStatus {
    guard(|| {
        let id = match read_str(id) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let scenario = match Scenario::parse(id) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        let cap = if cap == 0 { DEFAULT_DISCOVERY_CAP } else { cap };
        let result = scenario.run(id, cap);
        if !out_json.is_null() {
            let s = serde_json::to_string(&result).expect("scenario results serialize");
            let st = write_string(out_json, s);
            if st != QgStatus::Ok {
                return st;
            }
        }
        if result.passed {
            QgStatus::Ok
        } else {
            set_error(&format!("scenario {id} failed"));
            QgStatus::VerificationFailed
        }
    })
}
