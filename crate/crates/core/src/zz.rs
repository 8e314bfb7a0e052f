//! Realizing `W = e^{iφ Z⊗Z}` from a normalized imprimitive gate.
//!
//! Every program built here is expressed over the raw input `U`: each occurrence of the
//! canonical core `V` is emitted as `(A₂⊗B₂)^†`, `U`, `(A₁⊗B₁)^†`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::canonical::CanonicalDecomposition;
use crate::circuit::GateProgram;
use crate::classify::{classify, GateClass};
use crate::error::{Error, Result};
use crate::matrix::{
    aligning_gate, one_qubit_rotation, pauli, unit_axis, AxisAngle, LocalPair, OneQubitGate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `θx, θy ≈ 0`, `0 < θz < π/4`: the core already is a ZZ exponential.
    DirectZZ,
    /// `(I⊗Z)V(I⊗Z)V = e^{2iθz ZZ}`.
    GeneralDoubling,
    /// `θ = (0, 0, π/4)`.
    SinglePiOver4,
    /// `θz = θx = π/4`, `θy = 0`: `V e^{iπ/4 X⊗I} V⁷`.
    DoublePiOver4,
    /// `θz = π/4` with another usable angle, doubled on that axis instead.
    RelabeledBoundary,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::DirectZZ => "direct-zz",
            CaseTag::GeneralDoubling => "general-doubling",
            CaseTag::SinglePiOver4 => "single-pi4",
            CaseTag::DoublePiOver4 => "double-pi4",
            CaseTag::RelabeledBoundary => "relabeled-boundary",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZZPhase {
    /// Reduced phase in `(0, π/4]`.
    pub phi: f64,
    /// Phase of the ZZ exponential before reduction.
    pub raw_phi: f64,
    pub case_tag: CaseTag,
    pub uses_per_w: usize,
}

/// `e^{iφ ZZ} ≐ after · e^{i·raw·ZZ} · before` (up to global phase).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseReduction {
    pub phi: f64,
    pub before: LocalPair,
    pub after: LocalPair,
    pub sign_flip: bool,
}

/// Folds a ZZ phase into `(0, π/4]` with local corrections.
///
/// Uses `e^{i(φ - π/2)ZZ} = e^{iφZZ}·(-i Z⊗Z)` for the shift and `(I⊗X) e^{iφZZ} (I⊗X) =
/// e^{-iφZZ}` for the sign.
pub fn reduce_phase(phi_raw: f64, tol: f64) -> Result<PhaseReduction> {
    let k = ((phi_raw - FRAC_PI_4) / FRAC_PI_2).ceil();
    let shifted = phi_raw - k * FRAC_PI_2;
    if !phi_raw.is_finite() || shifted.abs() <= tol || (FRAC_PI_2 - shifted.abs()) <= tol {
        return Err(Error::NonEntanglingPhase { phi: phi_raw });
    }
    let z = OneQubitGate::from_unitary(pauli(2));
    let mut before = if (k as i64).rem_euclid(2) == 1 { LocalPair::both(z) } else { LocalPair::identity() };
    let mut after = LocalPair::identity();
    let sign_flip = shifted < 0.0;
    if sign_flip {
        let x = LocalPair::on_second(OneQubitGate::from_unitary(pauli(0)));
        before = before.compose(&x);
        after = x;
    }
    Ok(PhaseReduction { phi: shifted.abs(), before, after, sign_flip })
}

/// Program realizing the canonical core `V` up to global phase.
pub fn core_program(cd: &CanonicalDecomposition) -> GateProgram {
    let mut p = GateProgram::new();
    p.push_u();
    p.wrapped(cd.before.dagger(), cd.after.dagger())
}

/// `(I⊗σ)V(I⊗σ)V = e^{2iθ σσ}` on `axis`, then rotated onto `Z⊗Z`.
fn doubled_on_axis(v: &GateProgram, axis: usize) -> GateProgram {
    let sigma = LocalPair::on_second(OneQubitGate::from_unitary(pauli(axis)));
    let mut w = GateProgram::new();
    w.append(v).push_local(sigma).append(v).push_local(sigma);
    if axis == 2 {
        return w;
    }
    let g = aligning_gate(&unit_axis(axis), &unit_axis(2));
    w.wrapped(LocalPair::both(g.dagger()), LocalPair::both(g))
}

/// `V · e^{iπ/4 X⊗I} · V⁷ = e^{-iπ/4 Y⊗Z}`, rotated on qubit 1 to `e^{-iπ/4 Z⊗Z}`.
fn double_pi4_program(v: &GateProgram) -> GateProgram {
    let kick = one_qubit_rotation(&AxisAngle::new_unchecked(unit_axis(0), FRAC_PI_4));
    let mut w = v.repeated(7);
    w.push_local(LocalPair::on_first(kick)).append(v);
    let g = aligning_gate(&unit_axis(1), &unit_axis(2));
    w.wrapped(LocalPair::on_first(g.dagger()), LocalPair::on_first(g))
}

pub fn extract_zz(cd: &CanonicalDecomposition, tol: f64) -> Result<(ZZPhase, GateProgram)> {
    if let Some(kind) = classify(cd, tol).primitive_kind() {
        return Err(Error::PrimitiveGate(kind));
    }
    debug_assert_eq!(classify(cd, tol), GateClass::Imprimitive);

    let t = cd.core;
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    let usable = |a: f64| a.abs() > tol && a.abs() < FRAC_PI_4 - tol;
    let v = core_program(cd);

    let (case_tag, raw_phi, w) = if near(t.theta_z, FRAC_PI_4) {
        if near(t.theta_x, 0.0) && near(t.theta_y, 0.0) {
            (CaseTag::SinglePiOver4, FRAC_PI_4, v)
        } else if near(t.theta_x, FRAC_PI_4) && near(t.theta_y, 0.0) {
            (CaseTag::DoublePiOver4, -FRAC_PI_4, double_pi4_program(&v))
        } else if usable(t.theta_x) {
            (CaseTag::RelabeledBoundary, 2.0 * t.theta_x, doubled_on_axis(&v, 0))
        } else {
            (CaseTag::RelabeledBoundary, 2.0 * t.theta_y, doubled_on_axis(&v, 1))
        }
    } else if near(t.theta_x, 0.0) && near(t.theta_y, 0.0) {
        (CaseTag::DirectZZ, t.theta_z, v)
    } else {
        (CaseTag::GeneralDoubling, 2.0 * t.theta_z, doubled_on_axis(&v, 2))
    };

    let uses_per_w = w.uses_of_u();
    let reduction = reduce_phase(raw_phi, tol)?;
    let program = w.wrapped(reduction.before, reduction.after);
    Ok((ZZPhase { phi: reduction.phi, raw_phi, case_tag, uses_per_w }, program))
}
