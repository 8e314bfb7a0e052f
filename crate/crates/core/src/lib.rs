//! Exact CNOT synthesis from an arbitrary entangling two-qubit gate.
//!
//! The pipeline is [`canonical::decompose`] → [`classify::classify`] →
//! [`zz::extract_zz`] → [`crot::synthesize_cnot`], wrapped by [`crot::compile`].

pub mod canonical;
pub mod circuit;
pub mod classify;
pub mod cli;
pub mod codec;
pub mod crot;
pub mod error;
pub mod matrix;
pub mod random;
pub mod tolerance;
pub mod zz;

pub use canonical::{decompose, CanonicalDecomposition, InteractionContent};
pub use circuit::{evaluate, simplify, CompilationReport, GateProgram, GateStep};
pub use classify::{classify, GateClass, PrimitiveKind};
pub use crot::{compile, compile_with, Compilation};
pub use error::{Error, Result};
pub use matrix::{LocalPair, Mat2, Mat4, OneQubitGate, TwoQubitGate, C64};
pub use tolerance::Tolerances;
pub use zz::{extract_zz, CaseTag, ZZPhase};
