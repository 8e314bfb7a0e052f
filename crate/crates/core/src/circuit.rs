//! Gate programs over a black-box two-qubit gate `U`.
//!
//! Step order is temporal order: the first step acts first, so evaluation left-multiplies
//! each step's matrix onto the running product (`M_k ··· M_2 M_1`). Programs carry no
//! global phase; every comparison goes through [`phase_distance`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classify::GateClass;
use crate::codec::{decode, encode, json_error, ComplexGrid};
use crate::error::{Error, Result};
use crate::matrix::{phase_distance, LocalPair, Mat4, OneQubitGate, TwoQubitGate, CNOT};
use crate::tolerance::IDENTITY_TOL;
use crate::zz::CaseTag;

pub const PROGRAM_FORMAT: &str = "gateforge-program/1";

/// One step of a program. There is deliberately no inverse-`U` variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateStep {
    ApplyU,
    Local(LocalPair),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GateProgram {
    steps: Vec<GateStep>,
}

impl GateProgram {
    pub fn new() -> Self {
        GateProgram::default()
    }

    pub fn from_steps(steps: Vec<GateStep>) -> Self {
        GateProgram { steps }
    }

    pub fn steps(&self) -> &[GateStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn uses_of_u(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, GateStep::ApplyU)).count()
    }

    pub fn local_count(&self) -> usize {
        self.steps.len() - self.uses_of_u()
    }

    pub fn push_u(&mut self) -> &mut Self {
        self.steps.push(GateStep::ApplyU);
        self
    }

    pub fn push_local(&mut self, pair: LocalPair) -> &mut Self {
        self.steps.push(GateStep::Local(pair));
        self
    }

    pub fn append(&mut self, other: &GateProgram) -> &mut Self {
        self.steps.extend_from_slice(&other.steps);
        self
    }

    /// `before`, then this program, then `after`.
    pub fn wrapped(&self, before: LocalPair, after: LocalPair) -> GateProgram {
        let mut p = GateProgram::new();
        p.push_local(before).append(self).push_local(after);
        p
    }

    pub fn repeated(&self, times: usize) -> GateProgram {
        let mut steps = Vec::with_capacity(self.steps.len() * times);
        for _ in 0..times {
            steps.extend_from_slice(&self.steps);
        }
        GateProgram { steps }
    }
}

/// `M_k ··· M_1` with `ApplyU ↦ u`.
pub fn evaluate(p: &GateProgram, u: &TwoQubitGate) -> TwoQubitGate {
    let um = *u.matrix();
    let m = p.steps.iter().fold(Mat4::identity(), |acc, step| match step {
        GateStep::ApplyU => um * acc,
        GateStep::Local(pair) => pair.matrix() * acc,
    });
    TwoQubitGate::from_unitary(m)
}

/// Phase-blind distance of `evaluate(p, u)` from CNOT.
pub fn cnot_residual(p: &GateProgram, u: &TwoQubitGate) -> f64 {
    phase_distance(evaluate(p, u).matrix(), &CNOT)
}

/// Merges runs of local steps and drops pairs equal to the identity up to phase.
pub fn simplify(p: &GateProgram) -> GateProgram {
    let mut steps = Vec::with_capacity(p.steps.len());
    let mut pending: Option<LocalPair> = None;
    let flush = |pending: &mut Option<LocalPair>, steps: &mut Vec<GateStep>| {
        if let Some(pair) = pending.take() {
            if !pair.is_identity(IDENTITY_TOL) {
                steps.push(GateStep::Local(pair));
            }
        }
    };
    for step in &p.steps {
        match step {
            GateStep::Local(pair) => {
                pending = Some(match pending {
                    Some(prev) => pair.compose(&prev),
                    None => *pair,
                });
            }
            GateStep::ApplyU => {
                flush(&mut pending, &mut steps);
                steps.push(GateStep::ApplyU);
            }
        }
    }
    flush(&mut pending, &mut steps);
    GateProgram { steps }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProgramDoc {
    format: String,
    steps: Vec<StepDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum StepDoc {
    U,
    Local { a: ComplexGrid, b: ComplexGrid },
}

pub fn serialize(p: &GateProgram) -> String {
    let steps = p
        .steps
        .iter()
        .map(|s| match s {
            GateStep::ApplyU => StepDoc::U,
            GateStep::Local(pair) => StepDoc::Local {
                a: encode(pair.first.matrix()),
                b: encode(pair.second.matrix()),
            },
        })
        .collect();
    let doc = ProgramDoc { format: PROGRAM_FORMAT.to_string(), steps };
    serde_json::to_string_pretty(&doc).expect("program document serializes")
}

pub fn parse(text: &str) -> Result<GateProgram> {
    let doc: ProgramDoc = serde_json::from_str(text).map_err(json_error)?;
    if doc.format != PROGRAM_FORMAT {
        return Err(Error::parse(
            "format",
            format!("expected \"{PROGRAM_FORMAT}\", found \"{}\"", doc.format),
        ));
    }
    let mut steps = Vec::with_capacity(doc.steps.len());
    for (k, step) in doc.steps.iter().enumerate() {
        match step {
            StepDoc::U => steps.push(GateStep::ApplyU),
            StepDoc::Local { a, b } => {
                let factor = |grid: &ComplexGrid, name: char| -> Result<OneQubitGate> {
                    let m = decode::<2>(grid, &format!("steps[{k}].{name}"))?;
                    OneQubitGate::new(m).map_err(|_| Error::NonUnitaryLocal {
                        step: k,
                        factor: name,
                        residual: m.unitarity_residual(),
                    })
                };
                steps.push(GateStep::Local(LocalPair::new(factor(a, 'a')?, factor(b, 'b')?)));
            }
        }
    }
    Ok(GateProgram { steps })
}

/// Summary of one compilation, with the optimality accounting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompilationReport {
    /// `[θx, θy, θz]` of the normalized cell.
    pub theta: [f64; 3],
    #[serde(rename = "class")]
    pub gate_class: GateClass,
    /// Reduced ZZ phase, in `(0, π/4]`.
    pub phi: f64,
    #[serde(rename = "case")]
    pub case_tag: CaseTag,
    /// Controlled-rotation repetitions actually used.
    pub q: usize,
    pub uses_of_u: usize,
    /// Local steps left after simplification.
    #[serde(rename = "one_qubit_gates")]
    pub one_qubit_gate_count: usize,
    /// `π / (4 θ_max)`.
    #[serde(rename = "lower_bound")]
    pub lower_bound_uses: f64,
    pub ratio: f64,
    #[serde(rename = "residual")]
    pub verification_residual: f64,
}

impl CompilationReport {
    pub fn theta_max(&self) -> f64 {
        self.theta[2]
    }

    /// `⌊π / (8 θ_max)⌋`, the repetition count of the two-use-per-rotation accounting.
    pub fn reference_q(&self) -> usize {
        (PI / (8.0 * self.theta_max())).floor() as usize
    }

    /// `2q + 4` with `q = ⌊π / (8 θ_max)⌋`.
    pub fn reference_use_bound(&self) -> usize {
        2 * self.reference_q() + 4
    }

    /// `1 + 16 θ_max / π`.
    pub fn reference_ratio_bound(&self) -> f64 {
        1.0 + 16.0 * self.theta_max() / PI
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn lower_bound_uses(theta_max: f64) -> f64 {
    PI / (4.0 * theta_max)
}
