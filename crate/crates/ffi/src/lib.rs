//! C interface to `qlogic-core`.
//!
//! Lattices and hulls are opaque handles owned by the caller and released
//! with the matching `_free` function. Every call returns a [`QlStatus`];
//! on failure [`ql_last_error_message`] describes what went wrong on the
//! calling thread. Strings handed out by the library are released with
//! [`ql_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use qlogic_core::cli;
use qlogic_core::dynamics::MeasurementSetup;
use qlogic_core::hull::HullError;
use qlogic_core::quantaloid::nonfaithful_search;
use qlogic_core::{dot, sasaki_hook, sasaki_projection, AnyLattice, Error, IdealLattice, LatticeDocument, Verdict};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    /// The requested law fails; the message holds the witness.
    Violation = 1,
    InvalidInput = 2,
    NullArgument = 3,
    /// A size guard or search bound was exceeded.
    GuardExceeded = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// Structural checks available through [`ql_lattice_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlCheck {
    Orthomodular = 0,
    Atomistic = 1,
    Covering = 2,
    Frame = 3,
    Modular = 4,
    SasakiAdjunction = 5,
    SasakiJoins = 6,
}

/// A finite lattice, possibly with an orthocomplement.
pub struct QlLattice {
    inner: AnyLattice,
}

/// The distributive hull of a lattice.
pub struct QlHull {
    inner: Arc<IdealLattice>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn fail(status: QlStatus, msg: impl Into<String>) -> QlStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> QlStatus {
    let status = match &e {
        Error::Hull(HullError::TooLarge { .. }) => QlStatus::GuardExceeded,
        Error::Hull(HullError::NotAFrame(..)) => QlStatus::Violation,
        _ => QlStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn verdict_status(v: &Verdict) -> QlStatus {
    match v {
        Verdict::Pass => QlStatus::Ok,
        Verdict::Fail(w) => fail(QlStatus::Violation, format!("[{}] {}", w.labels.join(", "), w.detail)),
    }
}

/// Runs `f`, turning panics into [`QlStatus::Panic`].
fn guarded(f: impl FnOnce() -> QlStatus) -> QlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(QlStatus::Ok) => {
            set_error("");
            QlStatus::Ok
        }
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(QlStatus::Panic, format!("internal error: {msg}"))
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, QlStatus> {
    if p.is_null() {
        return Err(fail(QlStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(QlStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, QlStatus> {
    p.as_ref().ok_or_else(|| fail(QlStatus::NullArgument, format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, QlStatus> {
    p.as_mut().ok_or_else(|| fail(QlStatus::NullArgument, format!("{what} is null")))
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

fn elem(l: &QlLattice, i: usize) -> Result<usize, QlStatus> {
    if i < l.inner.lattice().size() {
        Ok(i)
    } else {
        Err(fail(QlStatus::InvalidInput, format!("element index {i} out of range")))
    }
}

fn ortho(l: &QlLattice) -> Result<&qlogic_core::OrthoLattice, QlStatus> {
    l.inner
        .ortho()
        .ok_or_else(|| fail(QlStatus::InvalidInput, "lattice has no orthocomplement"))
}

/// Parses a lattice document. On success `*out` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_from_json(json: *const c_char, out: *mut *mut QlLattice) -> QlStatus {
    guarded(|| {
        let text = tri!(str_arg(json, "json"));
        let out = tri!(out_arg(out, "out"));
        let doc = match LatticeDocument::parse(text).and_then(|d| d.to_lattice()) {
            Ok(l) => l,
            Err(e) => return from_error(e.into()),
        };
        *out = Box::into_raw(Box::new(QlLattice { inner: doc }));
        QlStatus::Ok
    })
}

/// Builds a catalog lattice from a spec such as `"mo:2"` or `"o6"`.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_from_catalog(spec: *const c_char, out: *mut *mut QlLattice) -> QlStatus {
    guarded(|| {
        let spec = tri!(str_arg(spec, "spec"));
        let out = tri!(out_arg(out, "out"));
        match cli::generate(spec, &[]) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(QlLattice { inner: l }));
                QlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a lattice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_free(lattice: *mut QlLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ql_lattice_size(lattice: *const QlLattice, out: *mut usize) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        *tri!(out_arg(out, "out")) = l.inner.lattice().size();
        QlStatus::Ok
    })
}

/// Index of the element labelled `label`.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_index_of(
    lattice: *const QlLattice,
    label: *const c_char,
    out: *mut usize,
) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let label = tri!(str_arg(label, "label"));
        let out = tri!(out_arg(out, "out"));
        match l.inner.lattice().index_of(label) {
            Some(i) => {
                *out = i;
                QlStatus::Ok
            }
            None => fail(QlStatus::InvalidInput, format!("no element labelled `{label}`")),
        }
    })
}

/// Label of element `index`; free the result with [`ql_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_label(lattice: *const QlLattice, index: usize, out: *mut *mut c_char) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let i = tri!(elem(l, index));
        *tri!(out_arg(out, "out")) = give_string(l.inner.lattice().label(i).to_owned());
        QlStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn ql_lattice_meet(lattice: *const QlLattice, a: usize, b: usize, out: *mut usize) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let (a, b) = (tri!(elem(l, a)), tri!(elem(l, b)));
        *tri!(out_arg(out, "out")) = l.inner.lattice().meet(a, b);
        QlStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn ql_lattice_join(lattice: *const QlLattice, a: usize, b: usize, out: *mut usize) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let (a, b) = (tri!(elem(l, a)), tri!(elem(l, b)));
        *tri!(out_arg(out, "out")) = l.inner.lattice().join(a, b);
        QlStatus::Ok
    })
}

/// `Ok` if the law holds, `Violation` with a witness message if not.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_check(lattice: *const QlLattice, check: QlCheck) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let lat = l.inner.lattice();
        let v = match check {
            QlCheck::Orthomodular => tri!(ortho(l)).orthomodularity_check(),
            QlCheck::Atomistic => lat.atoms_and_atomisticity().1,
            QlCheck::Covering => lat.covering_law(),
            QlCheck::Frame => lat.frame_check(),
            QlCheck::Modular => lat.modularity_check(),
            QlCheck::SasakiAdjunction => qlogic_core::dynamics::sasaki_adjunction_check(tri!(ortho(l))),
            QlCheck::SasakiJoins => qlogic_core::dynamics::sasaki_join_check(tri!(ortho(l))),
        };
        verdict_status(&v)
    })
}

/// `φ_b(a) = b ∧ (a ∨ b')`.
#[no_mangle]
pub unsafe extern "C" fn ql_sasaki_projection(
    lattice: *const QlLattice,
    b: usize,
    a: usize,
    out: *mut usize,
) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let o = tri!(ortho(l));
        let (b, a) = (tri!(elem(l, b)), tri!(elem(l, a)));
        *tri!(out_arg(out, "out")) = sasaki_projection(o, b, a);
        QlStatus::Ok
    })
}

/// `b' ∨ (b ∧ c)`.
#[no_mangle]
pub unsafe extern "C" fn ql_sasaki_hook(lattice: *const QlLattice, b: usize, c: usize, out: *mut usize) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let o = tri!(ortho(l));
        let (b, c) = (tri!(elem(l, b)), tri!(elem(l, c)));
        *tri!(out_arg(out, "out")) = sasaki_hook(o, b, c);
        QlStatus::Ok
    })
}

/// The lattice as a JSON document.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_to_json(lattice: *const QlLattice, out: *mut *mut c_char) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        *tri!(out_arg(out, "out")) = give_string(LatticeDocument::from_lattice(&l.inner).to_json());
        QlStatus::Ok
    })
}

/// The Hasse diagram in DOT.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_to_dot(lattice: *const QlLattice, out: *mut *mut c_char) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        *tri!(out_arg(out, "out")) = give_string(dot::render(&l.inner));
        QlStatus::Ok
    })
}

/// The structure-flag report as JSON.
#[no_mangle]
pub unsafe extern "C" fn ql_lattice_report_json(lattice: *const QlLattice, out: *mut *mut c_char) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        *tri!(out_arg(out, "out")) = give_string(cli::report(&l.inner).to_json());
        QlStatus::Ok
    })
}

/// Enumerates the distributive hull, refusing lattices above `max_size`.
#[no_mangle]
pub unsafe extern "C" fn ql_hull_new(lattice: *const QlLattice, max_size: usize, out: *mut *mut QlHull) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let out = tri!(out_arg(out, "out"));
        match IdealLattice::enumerate(l.inner.lattice().clone(), max_size) {
            Ok(di) => {
                *out = Box::into_raw(Box::new(QlHull { inner: Arc::new(di) }));
                QlStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// Releases a hull. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_hull_free(hull: *mut QlHull) {
    if !hull.is_null() {
        drop(Box::from_raw(hull));
    }
}

/// Number of distributive ideals.
#[no_mangle]
pub unsafe extern "C" fn ql_hull_count(hull: *const QlHull, out: *mut usize) -> QlStatus {
    guarded(|| {
        let h = tri!(ref_arg(hull, "hull"));
        *tri!(out_arg(out, "out")) = h.inner.len();
        QlStatus::Ok
    })
}

/// Checks the three squares for the measurement with eigenproperty `b`.
#[no_mangle]
pub unsafe extern "C" fn ql_verify_pm_diagrams(lattice: *const QlLattice, b: usize, max_size: usize) -> QlStatus {
    guarded(|| {
        let l = tri!(ref_arg(lattice, "lattice"));
        let o = tri!(ortho(l));
        let b = tri!(elem(l, b));
        let setup = match MeasurementSetup::new(o.clone(), b) {
            Ok(s) => s,
            Err(e) => return from_error(e.into()),
        };
        let d = match setup.verify_diagrams(max_size) {
            Ok(d) => d,
            Err(e) => return from_error(e.into()),
        };
        match &d.state_square {
            Ok(v) if !v.is_pass() => return verdict_status(v),
            Err(why) => return fail(QlStatus::InvalidInput, why.clone()),
            Ok(_) => {}
        }
        match verdict_status(&d.ideal_square) {
            QlStatus::Ok => verdict_status(&d.factorization),
            other => other,
        }
    })
}

/// Searches the DCHeyt endomorphisms of `hull` for pairs collapsed by `G`.
/// `*witnesses` receives the number of collapsed images found; the status is
/// `GuardExceeded` if `bound` candidates did not cover the space.
#[no_mangle]
pub unsafe extern "C" fn ql_nonfaithful_search(hull: *const QlHull, bound: usize, witnesses: *mut usize) -> QlStatus {
    guarded(|| {
        let h = tri!(ref_arg(hull, "hull"));
        let witnesses = tri!(out_arg(witnesses, "witnesses"));
        let r = nonfaithful_search(h.inner.clone(), bound);
        *witnesses = r.witnesses.len();
        if r.bound_exceeded {
            return fail(QlStatus::GuardExceeded, format!("search stopped after {bound} candidates"));
        }
        QlStatus::Ok
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ql_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
