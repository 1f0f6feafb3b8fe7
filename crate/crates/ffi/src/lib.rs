//! C ABI over `taufact`.
//!
//! Rings and relations are opaque handles. Every fallible call returns a
//! [`TfStatus`]; on failure [`tf_last_error`] describes what went wrong.
//! Strings returned by the library are freed with [`tf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use taufact::factor::index::FactorIndex;
use taufact::irr::classify;
use taufact::query::{self, Query};
use taufact::taurel::{TauError, TauName, TauRelation};
use taufact::zdgraph::{GraphMode, ZdGraph};
use taufact::{Ring, Verdict};

/// Status codes. The first five match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    /// A property does not hold.
    No = 1,
    Parse = 2,
    BadElement = 3,
    /// A property holds for factorizations up to the reported length.
    Bounded = 4,
    NullArgument = 5,
    TooLarge = 6,
    Panic = 7,
}

/// A finite commutative ring.
pub struct TfRing(Arc<Ring>);

/// A symmetric relation on the non-zero non-units of a ring. Keeps its ring
/// alive on its own.
pub struct TfTau(TauRelation);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TfIrrFlags {
    pub irreducible: bool,
    pub strongly_irreducible: bool,
    pub m_irreducible: bool,
    pub very_strongly_irreducible: bool,
    /// `a` is very strongly associate to itself.
    pub very_strong_defined: bool,
    /// Flags were checked only up to `bound` factors.
    pub bounded: bool,
    pub bound: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (TfStatus, String);

/// Runs `f`, records any failure and turns panics into [`TfStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<TfStatus, Failure>) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (TfStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (TfStatus::Parse, format!("{what} is not UTF-8")))
}

/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn opt_text<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        Ok(None)
    } else {
        text(s, what).map(Some)
    }
}

fn check_elem(ring: &Ring, a: u32) -> Result<(), Failure> {
    if a < ring.order() {
        Ok(())
    } else {
        Err((TfStatus::BadElement, format!("element index {a} out of range")))
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a spec such as `Z/12` or `GF(2) x Z/4`.
///
/// # Safety
/// `spec` is a nul-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_new(spec: *const c_char, out: *mut *mut TfRing) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = text(spec, "spec")?;
        let ring = Ring::parse(spec).map_err(|e| (TfStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(TfRing(Arc::new(ring))));
        Ok(TfStatus::Ok)
    })
}

/// # Safety
/// `ring` is null or came from [`tf_ring_new`] and was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_free(ring: *mut TfRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `ring` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_order(ring: *const TfRing) -> u32 {
    ring.as_ref().map_or(0, |r| r.0.order())
}

/// Parses an element (`5`, `(1,2)`) to its index.
///
/// # Safety
/// `ring` is a live handle, `elem` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_parse_elem(ring: *const TfRing, elem: *const c_char, out: *mut u32) -> TfStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let elem = text(elem, "elem")?;
        *out = ring.0.parse_elem(elem).map_err(|e| (TfStatus::BadElement, e.to_string()))?;
        Ok(TfStatus::Ok)
    })
}

/// The element at index `a` in ring notation. Free with [`tf_string_free`].
///
/// # Safety
/// `ring` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_format_elem(ring: *const TfRing, a: u32) -> *mut c_char {
    match ring.as_ref() {
        Some(r) if a < r.0.order() => into_c_string(r.0.format_elem(a)),
        _ => ptr::null_mut(),
    }
}

/// # Safety
/// `ring` is a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_mul(ring: *const TfRing, a: u32, b: u32, out: *mut u32) -> TfStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_elem(&ring.0, a)?;
        check_elem(&ring.0, b)?;
        *out = ring.0.mul(a, b);
        Ok(TfStatus::Ok)
    })
}

/// # Safety
/// `ring` is a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_is_unit(ring: *const TfRing, a: u32, out: *mut bool) -> TfStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_elem(&ring.0, a)?;
        *out = ring.0.is_unit(a);
        Ok(TfStatus::Ok)
    })
}

/// Ring summary as JSON. Free with [`tf_string_free`]; null on a null handle.
///
/// # Safety
/// `ring` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_info_json(ring: *const TfRing) -> *mut c_char {
    let Some(ring) = ring.as_ref() else {
        set_error("ring is null".into());
        return ptr::null_mut();
    };
    let r = &ring.0;
    let v = serde_json::json!({
        "ring": r.summary(),
        "jacobson": r.format_elems(r.jacobson()),
        "field": r.is_field(),
        "domain": r.is_domain(),
        "reduced": r.is_reduced(),
    });
    into_c_string(v.to_string())
}

/// Clique number of the zero-divisor graph.
///
/// # Safety
/// `ring` is a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_ring_clique_number(ring: *const TfRing, out: *mut usize) -> TfStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = ZdGraph::build(&ring.0, GraphMode::Plain).map_err(|e| (TfStatus::TooLarge, e.to_string()))?;
        *out = g.clique_number();
        Ok(TfStatus::Ok)
    })
}

/// Builds a relation by name: `full`, `empty`, `tau_z`, `tau_z_delta`,
/// `subset:<elems>` or `ideal:<gen>`.
///
/// # Safety
/// `ring` is a live handle, `name` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tau_new(ring: *const TfRing, name: *const c_char, out: *mut *mut TfTau) -> TfStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let status = |e: TauError| {
            let code = match e {
                TauError::Element(_) | TauError::NotInRSharp(_) => TfStatus::BadElement,
                _ => TfStatus::Parse,
            };
            (code, e.to_string())
        };
        let name: TauName = text(name, "name")?.parse().map_err(status)?;
        let tau = TauRelation::from_name(Arc::clone(&ring.0), &name).map_err(status)?;
        *out = Box::into_raw(Box::new(TfTau(tau)));
        Ok(TfStatus::Ok)
    })
}

/// # Safety
/// `tau` is null or came from [`tf_tau_new`] and was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_tau_free(tau: *mut TfTau) {
    if !tau.is_null() {
        drop(Box::from_raw(tau));
    }
}

/// # Safety
/// `tau` is a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tau_relates(tau: *const TfTau, a: u32, b: u32, out: *mut bool) -> TfStatus {
    guard(|| {
        let tau = tau.as_ref().ok_or_else(|| null("tau"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_elem(tau.0.ring(), a)?;
        check_elem(tau.0.ring(), b)?;
        *out = tau.0.relates(a, b);
        Ok(TfStatus::Ok)
    })
}

/// Irreducibility flags of the non-unit at index `a`.
///
/// # Safety
/// `tau` is a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_classify(tau: *const TfTau, a: u32, out: *mut TfIrrFlags) -> TfStatus {
    guard(|| {
        let tau = tau.as_ref().ok_or_else(|| null("tau"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_elem(tau.0.ring(), a)?;
        let index = FactorIndex::for_tau(&tau.0);
        let f = classify(&index, a, false).map_err(|e| (TfStatus::BadElement, e.to_string()))?;
        *out = TfIrrFlags {
            irreducible: f.irr,
            strongly_irreducible: f.strong,
            m_irreducible: f.m,
            very_strongly_irreducible: f.vs,
            very_strong_defined: f.vs_defined,
            bounded: f.verified_up_to.is_some(),
            bound: f.verified_up_to.unwrap_or(0),
        };
        Ok(if f.verified_up_to.is_some() {
            TfStatus::Bounded
        } else {
            TfStatus::Ok
        })
    })
}

/// Decides a property by name (`bfr`, `ufr`, `combinable`, ...). `alpha`,
/// `beta` and `counting` may be null for the defaults `atomic`,
/// `associate` and `raw`. Returns [`TfStatus::Ok`] when it holds,
/// [`TfStatus::No`] when it fails and [`TfStatus::Bounded`] when it holds
/// up to `*bound` factors. `witness`, when non-null, receives a description
/// of a counterexample or null; free it with [`tf_string_free`].
///
/// # Safety
/// `tau` is a live handle, the strings are null or nul-terminated, and
/// `bound` and `witness` are null or writable.
#[no_mangle]
pub unsafe extern "C" fn tf_check(
    tau: *const TfTau,
    property: *const c_char,
    alpha: *const c_char,
    beta: *const c_char,
    counting: *const c_char,
    bound: *mut usize,
    witness: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        let tau = tau.as_ref().ok_or_else(|| null("tau"))?;
        let property = text(property, "property")?;
        let q = Query::new(property)
            .with_text(
                opt_text(alpha, "alpha")?,
                opt_text(beta, "beta")?,
                opt_text(counting, "counting")?,
            )
            .map_err(|e| (TfStatus::Parse, e.to_string()))?;
        let a = query::answer(&tau.0, &q).map_err(|e| (TfStatus::Parse, e.to_string()))?;
        if !witness.is_null() {
            *witness = a.witness.map_or(ptr::null_mut(), into_c_string);
        }
        Ok(match a.verdict {
            Verdict::Yes => TfStatus::Ok,
            Verdict::No => TfStatus::No,
            Verdict::VerifiedUpTo(l) => {
                if !bound.is_null() {
                    *bound = l;
                }
                TfStatus::Bounded
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_maps_panics_and_errors() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        assert_eq!(guard(|| panic!("boom")), TfStatus::Panic);
        std::panic::set_hook(prev);
        let msg = unsafe { CStr::from_ptr(tf_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");

        assert_eq!(guard(|| Err((TfStatus::Parse, "a\0b".into()))), TfStatus::Parse);
        let msg = unsafe { CStr::from_ptr(tf_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "a b");
    }
}
