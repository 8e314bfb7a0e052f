//! Controlled rotations over the black-box `W` and the final CNOT assembly.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;

use crate::canonical::decompose_matrix;
use crate::circuit::{evaluate, lower_bound_uses, simplify, CompilationReport, GateProgram};
use crate::classify::{classify, GateClass};
use crate::error::{Error, Result};
use crate::matrix::{
    aligning_gate, one_qubit_rotation, pauli, phase_distance, unit_axis, AxisAngle, LocalPair,
    Mat4, OneQubitGate, TwoQubitGate, CNOT, HADAMARD, PAULI_I, PHASE_S_DAG,
};
use crate::tolerance::{Tolerances, EXACT_MULTIPLE_TOL, MAX_REPETITIONS};
use crate::zz::{extract_zz, ZZPhase};

/// `U_m = |0><0| ⊗ I + |1><1| ⊗ e^{i m·σ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlledRotation {
    pub vector: Vector3<f64>,
}

impl ControlledRotation {
    pub fn new(vector: Vector3<f64>) -> Result<Self> {
        AxisAngle::from_vector(vector)?;
        Ok(ControlledRotation { vector })
    }

    pub fn from_axis_angle(r: &AxisAngle) -> Self {
        ControlledRotation { vector: r.vector() }
    }

    pub fn magnitude(&self) -> f64 {
        self.vector.norm()
    }

    pub fn axis(&self) -> Vector3<f64> {
        let m = self.magnitude();
        if m > 0.0 {
            self.vector / m
        } else {
            unit_axis(2)
        }
    }

    pub fn axis_angle(&self) -> AxisAngle {
        AxisAngle::new_unchecked(self.axis(), self.magnitude())
    }

    pub fn matrix(&self) -> Mat4 {
        let r = *one_qubit_rotation(&self.axis_angle()).matrix();
        let mut m = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = PAULI_I.0[i][j];
                m.0[i + 2][j + 2] = r.0[i][j];
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CRotRealization {
    pub rotation: ControlledRotation,
    pub program: GateProgram,
}

/// `U_{(0,0,2φ)} = (I⊗X e^{-iφZ}) · W · (I⊗X)`.
pub fn w_to_crot(zz: &ZZPhase, w_program: &GateProgram) -> CRotRealization {
    let x = OneQubitGate::from_unitary(pauli(0));
    let undo = one_qubit_rotation(&AxisAngle::new_unchecked(unit_axis(2), zz.phi)).dagger();
    let program = w_program.wrapped(LocalPair::on_second(x), LocalPair::on_second(x * undo));
    CRotRealization {
        rotation: ControlledRotation { vector: Vector3::new(0.0, 0.0, 2.0 * zz.phi) },
        program,
    }
}

/// Moves the rotation axis to `axis` by conjugating the target qubit.
pub fn conjugate_to_axis(cr: &CRotRealization, axis: &Vector3<f64>) -> CRotRealization {
    let a = aligning_gate(&cr.rotation.axis(), axis);
    CRotRealization {
        rotation: ControlledRotation { vector: axis * cr.rotation.magnitude() },
        program: cr.program.wrapped(LocalPair::on_second(a.dagger()), LocalPair::on_second(a)),
    }
}

/// Axis-angle of `e^{i a·σ} e^{i b·σ}`.
pub fn compose_rotations(a: &AxisAngle, b: &AxisAngle) -> AxisAngle {
    let (s1, c1) = a.magnitude().sin_cos();
    let (s2, c2) = b.magnitude().sin_cos();
    let (na, nb) = (a.axis(), b.axis());
    let cos = c1 * c2 - s1 * s2 * na.dot(&nb);
    let v = nb * (c1 * s2) + na * (s1 * c2) - na.cross(&nb) * (s1 * s2);
    let sin = v.norm();
    let axis = if sin > 1e-15 { v / sin } else { unit_axis(2) };
    AxisAngle::new_unchecked(axis, sin.atan2(cos))
}

/// Axis `n̂` in the xz-plane such that `e^{i·on·Z} e^{i·step·n̂·σ}` has magnitude `target`.
pub fn solve_tilt(on_axis: f64, step: f64, target: f64) -> Result<Vector3<f64>> {
    let denom = on_axis.sin() * step.sin();
    let numer = on_axis.cos() * step.cos() - target.cos();
    if denom.abs() < 1e-15 {
        if numer.abs() <= 1e-12 {
            return Ok(unit_axis(2));
        }
        return Err(Error::Unsolvable { cosine: f64::INFINITY });
    }
    let cosine = numer / denom;
    if cosine.abs() > 1.0 + 1e-12 {
        return Err(Error::Unsolvable { cosine });
    }
    let c = cosine.clamp(-1.0, 1.0);
    Ok(Vector3::new((1.0 - c * c).sqrt(), 0.0, c))
}

/// Counts from [`synthesize_cnot`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CnotSynthesis {
    /// On-axis controlled rotations.
    pub q: usize,
    /// Whether a tilted rotation closes the gap to `π/2`.
    pub tilted: bool,
}

impl CnotSynthesis {
    pub fn crot_count(&self) -> usize {
        self.q + usize::from(self.tilted)
    }
}

/// Assembles CNOT from `q` copies of `U_{(0,0,2φ)}` and at most one tilted copy.
pub fn synthesize_cnot(zz: &ZZPhase, w_program: &GateProgram) -> Result<(GateProgram, CnotSynthesis)> {
    let base = w_to_crot(zz, w_program);
    let b = base.rotation.magnitude();
    let qf = (FRAC_PI_2 / b).floor();
    if !(1.0..=MAX_REPETITIONS as f64).contains(&qf) {
        return Err(Error::ImpracticalGate { q: qf });
    }
    let q = qf as usize;
    let on_axis = qf * b;
    let rem = FRAC_PI_2 - on_axis;

    let h = OneQubitGate::from_unitary(HADAMARD);
    let s_dag = OneQubitGate::from_unitary(PHASE_S_DAG);
    let mut program = GateProgram::new();
    program.push_local(LocalPair::on_second(h));

    let tilted = rem > EXACT_MULTIPLE_TOL;
    if tilted {
        let n = solve_tilt(on_axis, b, FRAC_PI_2)?;
        let tilt = conjugate_to_axis(&base, &n);
        let m = compose_rotations(
            &AxisAngle::new_unchecked(unit_axis(2), on_axis),
            &AxisAngle::new_unchecked(n, b),
        );
        let a = aligning_gate(&m.axis(), &unit_axis(2));
        program.push_local(LocalPair::on_second(a.dagger()));
        program.append(&tilt.program).append(&base.program.repeated(q));
        program.push_local(LocalPair::on_second(a));
    } else {
        program.append(&base.program.repeated(q));
    }
    program.push_local(LocalPair::new(s_dag, h));
    Ok((program, CnotSynthesis { q, tilted }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Compilation {
    pub program: GateProgram,
    pub report: CompilationReport,
}

pub fn compile(u: &TwoQubitGate) -> Result<Compilation> {
    compile_with(u, &Tolerances::default())
}

pub fn compile_with(u: &TwoQubitGate, tol: &Tolerances) -> Result<Compilation> {
    let cd = decompose_matrix(u.matrix(), tol.unitary)?;
    if let Some(kind) = classify(&cd, tol.classify).primitive_kind() {
        return Err(Error::PrimitiveGate(kind));
    }
    let (zz, w) = extract_zz(&cd, tol.classify)?;
    let (raw, synthesis) = synthesize_cnot(&zz, &w)?;
    let program = simplify(&raw);
    let residual = phase_distance(evaluate(&program, u).matrix(), &CNOT);
    if residual.is_nan() || residual > tol.verify {
        return Err(Error::VerificationFailed { residual, tolerance: tol.verify });
    }
    let theta_max = cd.core.theta_z;
    let uses = program.uses_of_u();
    let lower_bound = lower_bound_uses(theta_max);
    let report = CompilationReport {
        theta: cd.core.as_array(),
        gate_class: GateClass::Imprimitive,
        phi: zz.phi,
        case_tag: zz.case_tag,
        q: synthesis.q,
        uses_of_u: uses,
        one_qubit_gate_count: program.local_count(),
        lower_bound_uses: lower_bound,
        ratio: uses as f64 / lower_bound,
        verification_residual: residual,
    };
    Ok(Compilation { program, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateStep;
    use crate::matrix::{axis_angle_of, kron, pauli_exponential, tensor, C64, CZ, SWAP};
    use crate::random::haar_one_qubit;
    use crate::zz::CaseTag;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    fn direct(phi: f64, uses: usize) -> (ZZPhase, GateProgram, TwoQubitGate) {
        // W itself stands in for U, so W's program is `uses` bare applications.
        let mut p = GateProgram::new();
        for _ in 0..uses {
            p.push_u();
        }
        let u = pauli_exponential([0.0, 0.0, phi / uses as f64]);
        let zz = ZZPhase { phi, raw_phi: phi, case_tag: CaseTag::DirectZZ, uses_per_w: uses };
        (zz, p, u)
    }

    #[test]
    fn w_to_crot_examples() {
        for phi in [FRAC_PI_4, FRAC_PI_6, 0.1] {
            let (zz, w, u) = direct(phi, 1);
            let cr = w_to_crot(&zz, &w);
            assert_eq!(cr.program.uses_of_u(), 1);
            assert!((cr.rotation.vector - Vector3::new(0.0, 0.0, 2.0 * phi)).norm() < 1e-15);
            let got = evaluate(&cr.program, &u);
            assert!(got.matrix().max_abs_diff(&cr.rotation.matrix()) < 1e-12);
        }
        let (zz, w, u) = direct(FRAC_PI_4, 1);
        let ciz = Mat4::from_diagonal([
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
        ]);
        assert!(evaluate(&w_to_crot(&zz, &w).program, &u).matrix().max_abs_diff(&ciz) < 1e-12);
    }

    #[test]
    fn conjugate_to_axis_examples() {
        let (zz, w, u) = direct(FRAC_PI_6, 1);
        let cr = w_to_crot(&zz, &w);
        let same = conjugate_to_axis(&cr, &unit_axis(2));
        assert!(phase_distance(evaluate(&same.program, &u).matrix(), &cr.rotation.matrix()) < 1e-12);

        let x = conjugate_to_axis(&cr, &unit_axis(0));
        assert!((x.rotation.vector - Vector3::new(FRAC_PI_3, 0.0, 0.0)).norm() < 1e-15);
        assert!(phase_distance(evaluate(&x.program, &u).matrix(), &x.rotation.matrix()) < 1e-12);
        assert_eq!(x.program.uses_of_u(), 1);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let v = Vector3::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let n = v.normalize();
            let moved = conjugate_to_axis(&cr, &n);
            let got = evaluate(&moved.program, &u);
            assert!(phase_distance(got.matrix(), &moved.rotation.matrix()) < 1e-12);
            let block = crate::matrix::CMat::<2>::from_fn(|r, c| got.matrix().0[r + 2][c + 2]);
            let (aa, _) = axis_angle_of(&OneQubitGate::new(block).unwrap());
            assert!((aa.magnitude() - FRAC_PI_3).abs() < 1e-12);
        }
    }

    #[test]
    fn compose_rotations_examples() {
        let z = unit_axis(2);
        let r = compose_rotations(&AxisAngle::new(z, 0.3).unwrap(), &AxisAngle::new(z, 0.5).unwrap());
        assert!((r.magnitude() - 0.8).abs() < 1e-15);
        assert!((r.axis() - z).norm() < 1e-15);

        let c: f64 = 1.0 / 3.0;
        let n = Vector3::new((1.0 - c * c).sqrt(), 0.0, c);
        let r = compose_rotations(&AxisAngle::new(z, FRAC_PI_3).unwrap(), &AxisAngle::new(n, FRAC_PI_3).unwrap());
        assert!((r.magnitude() - FRAC_PI_2).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..500 {
            let a = AxisAngle::new(random_axis(&mut rng), rng.random_range(0.0..PI)).unwrap();
            let b = AxisAngle::new(random_axis(&mut rng), rng.random_range(0.0..PI)).unwrap();
            let r = compose_rotations(&a, &b);
            let product = one_qubit_rotation(&a) * one_qubit_rotation(&b);
            assert!(product.matrix().max_abs_diff(one_qubit_rotation(&r).matrix()) < 1e-12);
        }
    }

    fn random_axis(rng: &mut ChaCha8Rng) -> Vector3<f64> {
        loop {
            let v = Vector3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                return v / n;
            }
        }
    }

    #[test]
    fn solve_tilt_examples() {
        let n = solve_tilt(FRAC_PI_3, FRAC_PI_3, FRAC_PI_2).unwrap();
        assert!((n.z - 1.0 / 3.0).abs() < 1e-12);
        assert!(n.y == 0.0 && n.x > 0.0);
        let n = solve_tilt(FRAC_PI_3, FRAC_PI_3, 0.0).unwrap();
        assert!((n - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-7);
        let n = solve_tilt(FRAC_PI_4, FRAC_PI_4, FRAC_PI_2).unwrap();
        assert!((n - unit_axis(2)).norm() < 1e-12);
        assert_eq!(solve_tilt(0.0, 0.4, 0.4).unwrap(), unit_axis(2));
        assert!(matches!(solve_tilt(0.1, 0.1, FRAC_PI_2), Err(Error::Unsolvable { .. })));
        assert!(matches!(solve_tilt(0.0, 0.1, 0.4), Err(Error::Unsolvable { .. })));

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let phi: f64 = rng.random_range(0.01..FRAC_PI_4);
            let b = 2.0 * phi;
            let q = (FRAC_PI_2 / b).floor();
            let n = solve_tilt(q * b, b, FRAC_PI_2).unwrap();
            let r = compose_rotations(
                &AxisAngle::new(unit_axis(2), q * b).unwrap(),
                &AxisAngle::new(n, b).unwrap(),
            );
            assert!((r.magnitude() - FRAC_PI_2).abs() < 1e-12, "phi {phi}");
        }
    }

    #[test]
    fn synthesize_examples() {
        for (phi, uses, q, expect_uses) in [
            (FRAC_PI_6, 1, 1, 2),
            (FRAC_PI_4, 1, 1, 1),
            (PI / 5.0, 2, 1, 4),
            (0.1, 1, 7, 8),
        ] {
            let (zz, w, u) = direct(phi, uses);
            let (p, s) = synthesize_cnot(&zz, &w).unwrap();
            assert_eq!(s.q, q);
            assert_eq!(p.uses_of_u(), expect_uses, "phi {phi}");
            let d = phase_distance(evaluate(&p, &u).matrix(), &CNOT);
            assert!(d <= 1e-10, "phi {phi}: {d:e}");
        }
    }

    #[test]
    fn cnot_fixup_identity() {
        let ciz = Mat4::from_diagonal([
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
        ]);
        let got = kron(&PHASE_S_DAG, &HADAMARD) * ciz * kron(&PAULI_I, &HADAMARD);
        assert!(got.max_abs_diff(&CNOT) < 1e-15);
    }

    #[test]
    fn compile_examples() {
        let c = compile(&pauli_exponential([0.0, 0.0, FRAC_PI_6])).unwrap();
        assert_eq!(c.program.uses_of_u(), 2);
        assert!(c.report.verification_residual <= 1e-9);
        assert_eq!(c.report.case_tag, CaseTag::DirectZZ);

        let c = compile(&TwoQubitGate::cnot()).unwrap();
        assert_eq!(c.report.uses_of_u, 1);
        assert!(c.report.verification_residual <= 1e-10);

        let c = compile(&TwoQubitGate::new(CZ).unwrap()).unwrap();
        assert_eq!(c.report.uses_of_u, 1);

        let swap = TwoQubitGate::new(SWAP).unwrap();
        assert_eq!(compile(&swap), Err(Error::PrimitiveGate(crate::classify::PrimitiveKind::Swap)));
        let local = tensor(&OneQubitGate::from_unitary(HADAMARD), &OneQubitGate::identity());
        assert_eq!(compile(&local), Err(Error::PrimitiveGate(crate::classify::PrimitiveKind::Local)));
    }

    #[test]
    fn compile_random_dressed() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..60 {
            let z: f64 = rng.random_range(0.01..FRAC_PI_4);
            let x: f64 = rng.random_range(0.0..z);
            let y: f64 = rng.random_range(-x..x);
            let l1 = tensor(&haar_one_qubit(&mut rng), &haar_one_qubit(&mut rng));
            let l2 = tensor(&haar_one_qubit(&mut rng), &haar_one_qubit(&mut rng));
            let m = *l1.matrix() * *pauli_exponential([x, y, z]).matrix() * *l2.matrix();
            let u = TwoQubitGate::new(m).unwrap();
            let c = compile(&u).unwrap();
            assert!(c.report.verification_residual <= 1e-9);
            assert!(c.program.steps().iter().all(|s| matches!(s, GateStep::ApplyU | GateStep::Local(_))));
            assert!((c.report.theta[2] - z).abs() < 1e-7);
        }
    }
}
