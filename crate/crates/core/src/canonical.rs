//! Canonical decomposition `U = e^{iγ} (A₁⊗B₁) e^{i(θx XX + θy YY + θz ZZ)} (A₂⊗B₂)`.
//!
//! The decomposition works in the magic basis, where `SU(2)⊗SU(2)` acts as `SO(4)` and the
//! Pauli-product exponential is diagonal. For `m = Q^† U Q` (with `det U = 1`), `mᵀm` is a
//! complex symmetric unitary whose real and imaginary parts commute, so a single real
//! orthogonal basis diagonalizes both. The eigenphases give the interaction angles up to
//! the lattice `π/2 ℤ³`, which [`normalize`] folds into the Weyl cell.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use nalgebra::{DMatrix, Matrix4};
use serde::Serialize;

use crate::codec::{encode_mat2, ComplexGrid};
use crate::error::{Error, Result};
use crate::matrix::{
    kron, one_qubit_rotation, pauli, pauli_exponential, unit_axis, AxisAngle, CMat, LocalPair,
    Mat2, Mat4, OneQubitGate, TwoQubitGate, C64, HADAMARD, ONE, PAULI_I, PHASE_S, ZERO,
};
use crate::tolerance::UNITARY_TOL;

/// Weight of the imaginary part in the first-stage real symmetric eigenproblem.
const MIXING: f64 = 0.618_033_988_749_894_8;
/// Eigenvalues of the mixed matrix closer than this are re-resolved inside their cluster.
const CLUSTER_TOL: f64 = 1e-6;

/// Interaction angles `(θx, θy, θz)` in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InteractionContent {
    pub theta_x: f64,
    pub theta_y: f64,
    pub theta_z: f64,
}

impl InteractionContent {
    pub fn new(theta_x: f64, theta_y: f64, theta_z: f64) -> Self {
        InteractionContent { theta_x, theta_y, theta_z }
    }

    /// `[θx, θy, θz]`.
    pub fn as_array(&self) -> [f64; 3] {
        [self.theta_x, self.theta_y, self.theta_z]
    }

    pub fn from_array(t: [f64; 3]) -> Self {
        InteractionContent::new(t[0], t[1], t[2])
    }

    /// Largest angle magnitude; equals `θz` inside the Weyl cell.
    pub fn theta_max(&self) -> f64 {
        self.theta_x.abs().max(self.theta_y.abs()).max(self.theta_z.abs())
    }

    /// `θz ≥ θx ≥ |θy|`, `θz, θx ∈ [0, π/4]`, `θy ∈ (-π/4, π/4]`.
    pub fn in_weyl_cell(&self) -> bool {
        let InteractionContent { theta_x: x, theta_y: y, theta_z: z } = *self;
        (0.0..=FRAC_PI_4).contains(&z)
            && (0.0..=FRAC_PI_4).contains(&x)
            && y > -FRAC_PI_4
            && y <= FRAC_PI_4
            && z >= x
            && x >= y.abs()
    }

    pub fn exponential(&self) -> TwoQubitGate {
        pauli_exponential(self.as_array())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalDecomposition {
    /// `A₁⊗B₁`, applied last.
    pub after: LocalPair,
    pub core: InteractionContent,
    /// `A₂⊗B₂`, applied first.
    pub before: LocalPair,
    pub global_phase: f64,
}

impl CanonicalDecomposition {
    pub fn identity() -> Self {
        CanonicalDecomposition {
            after: LocalPair::identity(),
            core: InteractionContent::new(0.0, 0.0, 0.0),
            before: LocalPair::identity(),
            global_phase: 0.0,
        }
    }

    /// JSON report fragment with the shared matrix encoding.
    pub fn to_report(&self) -> DecompositionReport {
        let pair = |p: &LocalPair| PairReport {
            a: encode_mat2(p.first.matrix()),
            b: encode_mat2(p.second.matrix()),
        };
        DecompositionReport {
            theta: self.core.as_array(),
            global_phase: self.global_phase,
            after: pair(&self.after),
            before: pair(&self.before),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub a: ComplexGrid,
    pub b: ComplexGrid,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub theta: [f64; 3],
    pub global_phase: f64,
    pub after: PairReport,
    pub before: PairReport,
}

/// Columns `Φ+, iΦ-, iΨ+, Ψ-`.
pub fn magic_basis() -> Mat4 {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let hi = C64::new(0.0, FRAC_1_SQRT_2);
    CMat([
        [h, hi, ZERO, ZERO],
        [ZERO, ZERO, hi, h],
        [ZERO, ZERO, hi, -h],
        [h, -hi, ZERO, ZERO],
    ])
}

/// Diagonal of `Q^† (σ⊗σ) Q` for each axis, as ±1 reals.
fn magic_signs() -> [[f64; 4]; 3] {
    let q = magic_basis();
    let mut out = [[0.0; 4]; 3];
    for (axis, row) in out.iter_mut().enumerate() {
        let d = q.dagger() * kron(&pauli(axis), &pauli(axis)) * q;
        for (j, v) in row.iter_mut().enumerate() {
            *v = d.0[j][j].re;
        }
    }
    out
}

pub fn decompose(u: &TwoQubitGate) -> Result<CanonicalDecomposition> {
    decompose_matrix(u.matrix(), UNITARY_TOL)
}

/// Decomposes a raw matrix, validating unitarity at `tol`.
pub fn decompose_matrix(u: &Mat4, tol: f64) -> Result<CanonicalDecomposition> {
    let residual = u.unitarity_residual();
    if residual > tol {
        return Err(Error::NonUnitaryInput { residual });
    }

    let det_phase = u.determinant().arg() / 4.0;
    let su = u.scale(C64::from_polar(1.0, -det_phase));
    let q = magic_basis();
    let m = q.dagger() * su * q;
    let m2 = m.transpose() * m;

    let p = real_orthogonal_eigenbasis(&m2);
    let pc = Mat4::from_fn(|r, c| C64::new(p[(r, c)], 0.0));
    let d2 = pc.transpose() * m2 * pc;

    let mut phases = [0.0; 4];
    for (j, ph) in phases.iter_mut().enumerate() {
        *ph = d2.0[j][j].arg() / 2.0;
    }
    let mp = m * pc;
    let mut o1 = Mat4::from_fn(|r, c| mp.0[r][c] * C64::from_polar(1.0, -phases[c]));
    if o1.determinant().re < 0.0 {
        phases[0] += std::f64::consts::PI;
        for r in 0..4 {
            o1.0[r][0] = -o1.0[r][0];
        }
    }
    // O₁ is real orthogonal up to rounding; drop the residual imaginary noise.
    let o1 = Mat4::from_fn(|r, c| C64::new(o1.0[r][c].re, 0.0));

    let k1 = q * o1 * q.dagger();
    let k2 = q * pc.transpose() * q.dagger();

    let signs = magic_signs();
    let mut alpha = 0.0;
    let mut raw = [0.0; 3];
    for j in 0..4 {
        alpha += phases[j] / 4.0;
        for axis in 0..3 {
            raw[axis] += phases[j] * signs[axis][j] / 4.0;
        }
    }

    let (after, p1) = split_local(&k1);
    let (before, p2) = split_local(&k2);
    Ok(normalize(raw, after, before, det_phase + alpha + p1 + p2))
}

pub fn reconstruct(cd: &CanonicalDecomposition) -> TwoQubitGate {
    let core = *cd.core.exponential().matrix();
    let m = (cd.after.matrix() * core * cd.before.matrix())
        .scale(C64::from_polar(1.0, cd.global_phase));
    TwoQubitGate::from_unitary(m)
}

/// Sorted eigenpairs of a real symmetric matrix, ascending, eigenvectors as columns.
fn sorted_symmetric_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Real orthogonal `P` (det +1) with `Pᵀ m2 P` diagonal, for complex symmetric normal `m2`.
fn real_orthogonal_eigenbasis(m2: &Mat4) -> Matrix4<f64> {
    let re = DMatrix::from_fn(4, 4, |r, c| m2.0[r][c].re);
    let im = DMatrix::from_fn(4, 4, |r, c| m2.0[r][c].im);
    let mixed = &re + &im * MIXING;
    let mixed = (&mixed + mixed.transpose()) * 0.5;
    let (values, mut p) = sorted_symmetric_eigen(mixed);

    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && values[end] - values[end - 1] <= CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            let block = p.columns(start, end - start).into_owned();
            let restricted = block.transpose() * &re * &block;
            let restricted = (&restricted + restricted.transpose()) * 0.5;
            let (_, rot) = sorted_symmetric_eigen(restricted);
            let refined = &block * rot;
            p.columns_mut(start, end - start).copy_from(&refined);
        }
        start = end;
    }

    let mut p4 = Matrix4::from_fn(|r, c| p[(r, c)]);
    if p4.determinant() < 0.0 {
        for r in 0..4 {
            p4[(r, 3)] = -p4[(r, 3)];
        }
    }
    p4
}

/// Rescales `g` to unit determinant, returning the removed phase.
fn special_unitary(g: &Mat2) -> (Mat2, f64) {
    let phase = g.determinant().arg() / 2.0;
    (g.scale(C64::from_polar(1.0, -phase)), phase)
}

/// Splits `k ≈ e^{iφ} A⊗B` into unit-determinant factors via the dominant Kronecker block.
pub(crate) fn split_local(k: &Mat4) -> (LocalPair, f64) {
    let block = |i1: usize, j1: usize| {
        Mat2::from_fn(|i2, j2| k.0[2 * i1 + i2][2 * j1 + j2])
    };
    let frob = |m: &Mat2| m.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
    let (mut bi, mut bj, mut best) = (0, 0, -1.0);
    for i1 in 0..2 {
        for j1 in 0..2 {
            let f = frob(&block(i1, j1));
            if f > best {
                (bi, bj, best) = (i1, j1, f);
            }
        }
    }
    let dominant = block(bi, bj);
    let scale = dominant.determinant().sqrt();
    let b = dominant.scale(ONE / scale);
    let a = Mat2::from_fn(|i1, j1| (b.dagger() * block(i1, j1)).trace() * 0.5);
    let (a, pa) = special_unitary(&a);
    let (b, pb) = special_unitary(&b);
    (
        LocalPair::new(OneQubitGate::from_unitary(a), OneQubitGate::from_unitary(b)),
        pa + pb,
    )
}

struct Normalizer {
    after: Mat4,
    theta: [f64; 3],
    before: Mat4,
    phase: f64,
}

impl Normalizer {
    /// `θ_a -= k·π/2`, using `e^{iθσσ} = e^{i(θ - π/2)σσ}·(i σ⊗σ)`.
    fn shift(&mut self, axis: usize, k: i64) {
        self.theta[axis] -= k as f64 * FRAC_PI_2;
        if k.rem_euclid(2) == 1 {
            self.before = kron(&pauli(axis), &pauli(axis)) * self.before;
        }
        self.phase += k as f64 * FRAC_PI_2;
    }

    /// Exchanges two angle slots by conjugating the core with `C⊗C`.
    fn swap(&mut self, a: usize, b: usize) {
        let c = match (a.min(b), a.max(b)) {
            (0, 2) => HADAMARD,
            (0, 1) => PHASE_S,
            (1, 2) => *one_qubit_rotation(&AxisAngle::new_unchecked(unit_axis(0), FRAC_PI_4)).matrix(),
            _ => return,
        };
        let cc = kron(&c, &c);
        self.after = self.after * cc.dagger();
        self.before = cc * self.before;
        self.theta.swap(a, b);
    }

    /// Negates the two angles anticommuting with `I⊗σ_pauli`.
    fn flip(&mut self, pauli_axis: usize) {
        let p = kron(&PAULI_I, &pauli(pauli_axis));
        self.after = self.after * p;
        self.before = p * self.before;
        for axis in 0..3 {
            if axis != pauli_axis {
                self.theta[axis] = -self.theta[axis];
            }
        }
    }
}

/// Folds raw angles into the Weyl cell, absorbing every auxiliary gate into the locals.
pub fn normalize(
    raw_theta: [f64; 3],
    after: LocalPair,
    before: LocalPair,
    global_phase: f64,
) -> CanonicalDecomposition {
    let mut n = Normalizer {
        after: after.matrix(),
        theta: raw_theta,
        before: before.matrix(),
        phase: global_phase,
    };

    for axis in 0..3 {
        let k = ((n.theta[axis] - FRAC_PI_4) / FRAC_PI_2).ceil() as i64;
        if k != 0 {
            n.shift(axis, k);
        }
    }

    // Slot order z, x, y by descending magnitude; stable sort keeps z > x > y on ties.
    let mut order = [2usize, 0, 1];
    order.sort_by(|&a, &b| n.theta[b].abs().total_cmp(&n.theta[a].abs()));
    let mut slot_of = [0usize, 1, 2];
    for (target, &axis) in [2usize, 0].iter().zip(order.iter()) {
        let current = slot_of[axis];
        if current != *target {
            n.swap(current, *target);
            for s in slot_of.iter_mut() {
                if *s == current {
                    *s = *target;
                } else if *s == *target {
                    *s = current;
                }
            }
        }
    }

    match (n.theta[2] < 0.0, n.theta[0] < 0.0) {
        (true, true) => n.flip(1),
        (true, false) => n.flip(0),
        (false, true) => n.flip(2),
        (false, false) => {}
    }
    if n.theta[1] <= -FRAC_PI_4 {
        n.shift(1, -1);
    }

    let (after, pa) = split_local(&n.after);
    let (before, pb) = split_local(&n.before);
    let mut phase = n.phase + pa + pb;
    phase = (phase + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
    CanonicalDecomposition {
        after,
        core: InteractionContent::from_array(n.theta),
        before,
        global_phase: phase,
    }
}
