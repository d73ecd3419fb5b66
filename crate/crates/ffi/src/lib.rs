//! C ABI over the graphalex library.
//!
//! Diagrams are opaque handles. Every call returns a [`GaStatus`]; results are
//! JSON strings owned by the caller and released with [`ga_string_free`]. After
//! a failure, [`ga_last_error_message`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphalex::diagram::{parse_diagram, validate, DiagramError, MorseDiagram};
use graphalex::foxcalc::{alexander_of_diagram, compare_with_gl11, FoxError};
use graphalex::relations::{run_relation, Level, Relation, RelationError};
use graphalex::statesum::{evaluate_full, evaluate_planar, StateSumError};
use graphalex::weights::WeightTable;
use serde_json::{json, Value};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Unsupported = 5,
    Integrity = 6,
    /// The computation finished but its check did not hold; the output is still written.
    CheckFailed = 7,
    Internal = 8,
}

/// A parsed and validated diagram.
pub struct GaDiagram {
    inner: MorseDiagram,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(GaStatus, String);

impl From<DiagramError> for Fail {
    fn from(e: DiagramError) -> Self {
        let status = match e {
            DiagramError::Syntax { .. }
            | DiagramError::MissingHeader
            | DiagramError::UnknownEdge { .. }
            | DiagramError::DuplicateEdge { .. }
            | DiagramError::ZeroMultiplicity { .. }
            | DiagramError::DuplicateCut { .. }
            | DiagramError::MissingCut => GaStatus::Parse,
            DiagramError::Unsupported(_) => GaStatus::Unsupported,
            _ => GaStatus::Validation,
        };
        Fail(status, e.to_string())
    }
}

impl From<StateSumError> for Fail {
    fn from(e: StateSumError) -> Self {
        match e {
            StateSumError::Diagram(d) => d.into(),
            StateSumError::Integrity(_) => Fail(GaStatus::Integrity, e.to_string()),
            _ => Fail(GaStatus::Unsupported, e.to_string()),
        }
    }
}

impl From<FoxError> for Fail {
    fn from(e: FoxError) -> Self {
        match e {
            FoxError::Diagram(d) => d.into(),
            FoxError::StateSum(s) => s.into(),
            FoxError::Integrity(_) => Fail(GaStatus::Integrity, e.to_string()),
            _ => Fail(GaStatus::Unsupported, e.to_string()),
        }
    }
}

impl From<RelationError> for Fail {
    fn from(e: RelationError) -> Self {
        match e {
            RelationError::Unknown(_) => Fail(GaStatus::Parse, e.to_string()),
            RelationError::Integrity(_) => Fail(GaStatus::Integrity, e.to_string()),
            _ => Fail(GaStatus::CheckFailed, e.to_string()),
        }
    }
}

/// Runs `f`, catching panics, recording errors and writing `*out` when a value comes back.
fn guard(out: *mut *mut c_char, f: impl FnOnce() -> Result<(Value, bool), Fail>) -> GaStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return GaStatus::NullPointer;
    }
    // SAFETY: checked non-null above; the caller provides a writable slot.
    unsafe { *out = ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok((v, ok))) => {
            let s = CString::new(v.to_string()).expect("JSON has no NUL bytes");
            // SAFETY: as above.
            unsafe { *out = s.into_raw() };
            if ok {
                set_error("");
                GaStatus::Ok
            } else {
                set_error("check failed");
                GaStatus::CheckFailed
            }
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GaStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(GaStatus::NullPointer, "string argument is null".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(GaStatus::InvalidUtf8, e.to_string()))
}

unsafe fn diagram<'a>(d: *const GaDiagram) -> Result<&'a MorseDiagram, Fail> {
    d.as_ref().map(|d| &d.inner).ok_or_else(|| Fail(GaStatus::NullPointer, "diagram handle is null".into()))
}

/// Parses and validates a `morse v1` document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer slot.
/// On success `*out` holds a handle to release with [`ga_diagram_free`].
#[no_mangle]
pub unsafe extern "C" fn ga_diagram_parse(text: *const c_char, out: *mut *mut GaDiagram) -> GaStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return GaStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let r = catch_unwind(AssertUnwindSafe(|| -> Result<MorseDiagram, Fail> {
        let d = parse_diagram(read_str(text)?)?;
        validate(&d)?;
        Ok(d)
    }));
    match r {
        Ok(Ok(d)) => {
            *out = Box::into_raw(Box::new(GaDiagram { inner: d }));
            set_error("");
            GaStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            GaStatus::Internal
        }
    }
}

/// # Safety
/// `d` must be null or a handle from [`ga_diagram_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ga_diagram_free(d: *mut GaDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// The gl(1|1) invariant as JSON; `planar` selects the edge-state sum.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ga_gl11(d: *const GaDiagram, planar: bool, out: *mut *mut c_char) -> GaStatus {
    guard(out, || {
        let d = diagram(d)?;
        let r = if planar { evaluate_planar(d)? } else { evaluate_full(d)? };
        Ok((r.to_json(), true))
    })
}

/// The Alexander polynomial (unit normal form in `u = t^(1/2)`) as JSON.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ga_alexander(d: *const GaDiagram, out: *mut *mut c_char) -> GaStatus {
    guard(out, || {
        let d = diagram(d)?;
        if d.has_crossings() || d.has_twists() {
            return Err(Fail(GaStatus::Unsupported, "diagram must be crossingless and twistless".into()));
        }
        Ok((alexander_of_diagram(d)?.to_json(), true))
    })
}

/// Compares the specialized Alexander polynomial with gl(1|1). Returns
/// `GA_STATUS_CHECK_FAILED` (with the report written) when they differ.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ga_compare(d: *const GaDiagram, out: *mut *mut c_char) -> GaStatus {
    guard(out, || {
        let c = compare_with_gl11(diagram(d)?)?;
        Ok((c.to_json(), c.equal))
    })
}

/// Runs relation checks at every level each relation has. `ids` is a
/// comma-separated list of relation ids, or null for all of them.
///
/// # Safety
/// `ids` must be null or NUL-terminated; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ga_relations(ids: *const c_char, samples: u32, seed: u64, out: *mut *mut c_char) -> GaStatus {
    guard(out, || {
        if samples == 0 {
            return Err(Fail(GaStatus::Unsupported, "samples must be positive".into()));
        }
        let rels: Vec<Relation> = if ids.is_null() {
            Relation::ALL.to_vec()
        } else {
            let mut v = Vec::new();
            for id in read_str(ids)?.split(',').filter(|s| !s.trim().is_empty()) {
                v.extend(Relation::select(id)?);
            }
            v
        };
        let table = WeightTable::standard();
        let mut ok = true;
        let mut rows = Vec::new();
        for rel in rels {
            for lv in [Level::Matrix, Level::Closed] {
                if lv == Level::Matrix && !rel.has_matrix_level() {
                    continue;
                }
                let (pass, detail) = match run_relation(rel, lv, samples as usize, seed, table) {
                    Ok(reps) => (reps.iter().all(|r| r.equal), format!("{} samples", reps.len())),
                    Err(RelationError::Unknown(s)) => return Err(RelationError::Unknown(s).into()),
                    Err(e) => (false, e.to_string()),
                };
                ok &= pass;
                rows.push(json!({ "relation": rel.id(), "level": lv.name(), "pass": pass, "detail": detail }));
            }
        }
        Ok((json!({ "pass": ok, "results": rows }), ok))
    })
}

/// Message for the last failure on this thread (empty after a success). The
/// pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ga_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static version string.
#[no_mangle]
pub extern "C" fn ga_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
