//! C ABI over `gateforge`.
//!
//! Handles are opaque and owned by the caller once returned; free them with the matching
//! `*_free` function. Every entry point returns a [`GfStatus`]; on failure
//! [`gf_last_error_message`] describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gateforge::canonical::decompose_matrix;
use gateforge::circuit;
use gateforge::classify::classify;
use gateforge::codec::parse_gate;
use gateforge::matrix::{phase_distance, CMat, TwoQubitGate, C64, CNOT};
use gateforge::{compile_with, CaseTag, Error, GateClass, GateProgram, PrimitiveKind, Tolerances};

/// Result code of every `gf_*` call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed JSON, wrong shape, non-finite entries or invalid UTF-8.
    ParseError = 2,
    NonUnitary = 3,
    PrimitiveLocal = 4,
    PrimitiveSwap = 5,
    VerificationFailed = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfGateClass {
    PrimitiveLocal = 0,
    PrimitiveSwap = 1,
    Imprimitive = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfCaseTag {
    DirectZz = 0,
    GeneralDoubling = 1,
    SinglePiOver4 = 2,
    DoublePiOver4 = 3,
    RelabeledBoundary = 4,
}

/// Tolerances; a non-positive field selects the library default.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GfTolerances {
    pub unitary: f64,
    pub classify: f64,
    pub verify: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct GfDecomposition {
    /// `[θx, θy, θz]`.
    pub theta: [f64; 3],
    pub global_phase: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GfReport {
    pub theta: [f64; 3],
    pub phi: f64,
    pub case_tag: GfCaseTag,
    pub q: u64,
    pub uses_of_u: u64,
    pub one_qubit_gates: u64,
    pub lower_bound: f64,
    pub ratio: f64,
    pub residual: f64,
}

/// Validated two-qubit unitary.
pub struct GfGate(TwoQubitGate);

/// Compiled or parsed gate program.
pub struct GfProgram(GateProgram);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> GfStatus {
    match e {
        Error::NonUnitaryInput { .. } | Error::NonUnitaryLocal { .. } => GfStatus::NonUnitary,
        Error::Parse { .. } => GfStatus::ParseError,
        Error::PrimitiveGate(PrimitiveKind::Local) => GfStatus::PrimitiveLocal,
        Error::PrimitiveGate(PrimitiveKind::Swap) => GfStatus::PrimitiveSwap,
        Error::VerificationFailed { .. } => GfStatus::VerificationFailed,
        _ => GfStatus::Internal,
    }
}

type Step = Result<(), (GfStatus, String)>;

fn fail(e: Error) -> (GfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (GfStatus, String) {
    (GfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records its error and converts panics.
fn guard(f: impl FnOnce() -> Step) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GfStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside gateforge");
            GfStatus::Panic
        }
    }
}

fn tolerances(t: *const GfTolerances) -> Tolerances {
    let mut out = Tolerances::default();
    // SAFETY: caller passes null or a valid pointer.
    if let Some(t) = unsafe { t.as_ref() } {
        let pick = |v: f64, d: f64| if v > 0.0 { v } else { d };
        out.unitary = pick(t.unitary, out.unitary);
        out.classify = pick(t.classify, out.classify);
        out.verify = pick(t.verify, out.verify);
    }
    out
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (GfStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (GfStatus::ParseError, format!("{what} is not UTF-8: {e}")))
}

/// Message for the last failed call on this thread; empty after a success. Valid until
/// the next `gf_*` call on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static version string.
#[no_mangle]
pub extern "C" fn gf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a gate from 16 row-major real and 16 imaginary parts.
///
/// # Safety
/// `re` and `im` must point to 16 doubles each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_gate_from_entries(
    re: *const f64,
    im: *const f64,
    tol_unitary: f64,
    out: *mut *mut GfGate,
) -> GfStatus {
    guard(|| {
        if re.is_null() || im.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let (re, im) = (std::slice::from_raw_parts(re, 16), std::slice::from_raw_parts(im, 16));
        let m = CMat::<4>::from_fn(|r, c| C64::new(re[4 * r + c], im[4 * r + c]));
        if !m.is_finite() {
            return Err((GfStatus::ParseError, "entries must be finite".into()));
        }
        let tol = if tol_unitary > 0.0 { tol_unitary } else { Tolerances::default().unitary };
        let g = TwoQubitGate::with_tolerance(m, tol).map_err(fail)?;
        *out = Box::into_raw(Box::new(GfGate(g)));
        Ok(())
    })
}

/// Parses a `gateforge-gate/1` document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_gate_from_json(json: *const c_char, tol_unitary: f64, out: *mut *mut GfGate) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = text(json, "json")?;
        let tol = if tol_unitary > 0.0 { tol_unitary } else { Tolerances::default().unitary };
        let g = parse_gate(s, tol).map_err(fail)?;
        *out = Box::into_raw(Box::new(GfGate(g)));
        Ok(())
    })
}

/// # Safety
/// `gate` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_gate_free(gate: *mut GfGate) {
    if !gate.is_null() {
        drop(Box::from_raw(gate));
    }
}

/// # Safety
/// `gate` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_decompose(gate: *const GfGate, out: *mut GfDecomposition) -> GfStatus {
    guard(|| {
        let (Some(g), false) = (gate.as_ref(), out.is_null()) else {
            return Err(null("argument"));
        };
        let cd = decompose_matrix(g.0.matrix(), f64::INFINITY).map_err(fail)?;
        *out = GfDecomposition { theta: cd.core.as_array(), global_phase: cd.global_phase };
        Ok(())
    })
}

/// # Safety
/// `gate` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_classify(gate: *const GfGate, tol_classify: f64, out: *mut GfGateClass) -> GfStatus {
    guard(|| {
        let (Some(g), false) = (gate.as_ref(), out.is_null()) else {
            return Err(null("argument"));
        };
        let tol = if tol_classify > 0.0 { tol_classify } else { Tolerances::default().classify };
        let cd = decompose_matrix(g.0.matrix(), f64::INFINITY).map_err(fail)?;
        *out = match classify(&cd, tol) {
            GateClass::PrimitiveLocal => GfGateClass::PrimitiveLocal,
            GateClass::PrimitiveSwap => GfGateClass::PrimitiveSwap,
            GateClass::Imprimitive => GfGateClass::Imprimitive,
        };
        Ok(())
    })
}

/// Compiles `gate` into a CNOT program. `tol` may be null. `out_report` may be null.
///
/// # Safety
/// `gate` must be a live handle; `out_program` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_compile(
    gate: *const GfGate,
    tol: *const GfTolerances,
    out_program: *mut *mut GfProgram,
    out_report: *mut GfReport,
) -> GfStatus {
    guard(|| {
        let (Some(g), false) = (gate.as_ref(), out_program.is_null()) else {
            return Err(null("argument"));
        };
        let c = compile_with(&g.0, &tolerances(tol)).map_err(fail)?;
        if let Some(rep) = out_report.as_mut() {
            let r = &c.report;
            *rep = GfReport {
                theta: r.theta,
                phi: r.phi,
                case_tag: match r.case_tag {
                    CaseTag::DirectZZ => GfCaseTag::DirectZz,
                    CaseTag::GeneralDoubling => GfCaseTag::GeneralDoubling,
                    CaseTag::SinglePiOver4 => GfCaseTag::SinglePiOver4,
                    CaseTag::DoublePiOver4 => GfCaseTag::DoublePiOver4,
                    CaseTag::RelabeledBoundary => GfCaseTag::RelabeledBoundary,
                },
                q: r.q as u64,
                uses_of_u: r.uses_of_u as u64,
                one_qubit_gates: r.one_qubit_gate_count as u64,
                lower_bound: r.lower_bound_uses,
                ratio: r.ratio,
                residual: r.verification_residual,
            };
        }
        *out_program = Box::into_raw(Box::new(GfProgram(c.program)));
        Ok(())
    })
}

/// # Safety
/// `program` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_program_free(program: *mut GfProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Number of `U` applications, or 0 for a null handle.
///
/// # Safety
/// `program` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_program_uses_of_u(program: *const GfProgram) -> u64 {
    program.as_ref().map_or(0, |p| p.0.uses_of_u() as u64)
}

/// Serializes to `gateforge-program/1`; free the string with [`gf_string_free`].
///
/// # Safety
/// `program` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_program_to_json(program: *const GfProgram, out: *mut *mut c_char) -> GfStatus {
    guard(|| {
        let (Some(p), false) = (program.as_ref(), out.is_null()) else {
            return Err(null("argument"));
        };
        let s = CString::new(circuit::serialize(&p.0)).map_err(|e| (GfStatus::Internal, e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_program_from_json(json: *const c_char, out: *mut *mut GfProgram) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = circuit::parse(text(json, "json")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(GfProgram(p)));
        Ok(())
    })
}

/// Writes the phase-blind distance of `program(gate)` from CNOT to `out_residual` and
/// returns `VerificationFailed` when it exceeds `tol_verify` (non-positive: default).
///
/// # Safety
/// Handles must be live; `out_residual` may be null.
#[no_mangle]
pub unsafe extern "C" fn gf_verify(
    program: *const GfProgram,
    gate: *const GfGate,
    tol_verify: f64,
    out_residual: *mut f64,
) -> GfStatus {
    guard(|| {
        let (Some(p), Some(g)) = (program.as_ref(), gate.as_ref()) else {
            return Err(null("argument"));
        };
        let residual = phase_distance(circuit::evaluate(&p.0, &g.0).matrix(), &CNOT);
        if let Some(r) = out_residual.as_mut() {
            *r = residual;
        }
        let tolerance = if tol_verify > 0.0 { tol_verify } else { Tolerances::default().verify };
        if residual <= tolerance {
            Ok(())
        } else {
            Err(fail(Error::VerificationFailed { residual, tolerance }))
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
