use thiserror::Error;

use crate::classify::PrimitiveKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonUnitaryInput: unitarity residual {residual:.3e} exceeds tolerance")]
    NonUnitaryInput { residual: f64 },

    #[error("NonUnitaryLocal: step {step}, factor '{factor}': unitarity residual {residual:.3e}")]
    NonUnitaryLocal { step: usize, factor: char, residual: f64 },

    #[error("NonNormalizedState: state norm {norm}")]
    NonNormalizedState { norm: f64 },

    #[error("InvalidAxis: axis norm {norm} is not 1")]
    InvalidAxis { norm: f64 },

    #[error("InvalidAngle: rotation magnitude {magnitude} outside the allowed range")]
    InvalidAngle { magnitude: f64 },

    #[error("PrimitiveGate({0}): the gate cannot create entanglement")]
    PrimitiveGate(PrimitiveKind),

    #[error("NonEntanglingPhase: ZZ phase {phi} is a multiple of pi/2, the extracted gate is local")]
    NonEntanglingPhase { phi: f64 },

    #[error("Unsolvable: tilt cosine {cosine} lies outside [-1, 1]")]
    Unsolvable { cosine: f64 },

    #[error("ImpracticalGate: {q} controlled rotations would be required")]
    ImpracticalGate { q: f64 },

    #[error("VerificationFailed: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    VerificationFailed { residual: f64, tolerance: f64 },

    #[error("Parse error at {location}: {reason}")]
    Parse { location: String, reason: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), reason: reason.into() }
    }
}
