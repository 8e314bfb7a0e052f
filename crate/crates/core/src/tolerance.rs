//! Numerical cutoffs shared across the pipeline.

/// Input validation: `max |U^† U - I|`.
pub const UNITARY_TOL: f64 = 1e-9;
/// Internal identities, e.g. dropping identity locals during simplification.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Angle tolerance for primitive classification and special-case detection.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Phase-blind residual accepted when checking a compiled program against CNOT.
pub const VERIFY_TOL: f64 = 1e-9;
/// Remainder below which `π/2` counts as an exact multiple of the rotation step.
pub const EXACT_MULTIPLE_TOL: f64 = 1e-10;
/// Upper bound on controlled-rotation repetitions.
pub const MAX_REPETITIONS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub unitary: f64,
    pub classify: f64,
    pub verify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { unitary: UNITARY_TOL, classify: CLASSIFY_TOL, verify: VERIFY_TOL }
    }
}
