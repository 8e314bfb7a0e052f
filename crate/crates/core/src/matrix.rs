//! Fixed-size complex matrix algebra for one- and two-qubit unitaries.
//!
//! Qubit 1 is the most significant tensor factor: basis index `2*i1 + i2`.
//! Rotations follow the `e^{+i n·σ}` sign convention throughout the crate.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::Mul;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::UNITARY_TOL;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Dense `N x N` complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = CMat<2>;
pub type Mat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] = f(r, c);
            }
        }
        m
    }

    pub fn from_diagonal(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = d[k];
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[r][c]
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r])
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|r, c| self.0[r][c] * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] + other.0[r][c])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] - other.0[r][c])
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }

    /// Max-entry distance, global phase included.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entry of `|M^† M - I|` together with its position.
    pub fn unitarity_defect(&self) -> (f64, usize, usize) {
        let g = self.dagger() * *self;
        let mut worst = (0.0, 0, 0);
        for r in 0..N {
            for c in 0..N {
                let target = if r == c { ONE } else { ZERO };
                let d = (g.0[r][c] - target).norm();
                if d > worst.0 || d.is_nan() {
                    worst = (d, r, c);
                }
            }
        }
        worst
    }

    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_finite() {
            return f64::INFINITY;
        }
        self.unitarity_defect().0
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> C64 {
        let mut a = self.0;
        let mut det = ONE;
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for r in (col + 1)..N {
                let f = a[r][col] / a[col][col];
                for c in col..N {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
        det
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = CMat<N>;

    fn mul(self, rhs: CMat<N>) -> CMat<N> {
        let mut out = CMat::<N>::zeros();
        for r in 0..N {
            for k in 0..N {
                let a = self.0[r][k];
                if a == ZERO {
                    continue;
                }
                for c in 0..N {
                    out.0[r][c] += a * rhs.0[k][c];
                }
            }
        }
        out
    }
}

impl<const N: usize> fmt::Debug for CMat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub const PAULI_I: Mat2 = CMat([[ONE, ZERO], [ZERO, ONE]]);
pub const PAULI_X: Mat2 = CMat([[ZERO, ONE], [ONE, ZERO]]);
pub const PAULI_Y: Mat2 = CMat([[ZERO, C64::new(0.0, -1.0)], [I, ZERO]]);
pub const PAULI_Z: Mat2 = CMat([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]]);
pub const HADAMARD: Mat2 = CMat([
    [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)],
    [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(-FRAC_1_SQRT_2, 0.0)],
]);
pub const PHASE_S: Mat2 = CMat([[ONE, ZERO], [ZERO, I]]);
pub const PHASE_S_DAG: Mat2 = CMat([[ONE, ZERO], [ZERO, C64::new(0.0, -1.0)]]);

pub const CNOT: Mat4 = CMat([
    [ONE, ZERO, ZERO, ZERO],
    [ZERO, ONE, ZERO, ZERO],
    [ZERO, ZERO, ZERO, ONE],
    [ZERO, ZERO, ONE, ZERO],
]);
pub const CZ: Mat4 = CMat([
    [ONE, ZERO, ZERO, ZERO],
    [ZERO, ONE, ZERO, ZERO],
    [ZERO, ZERO, ONE, ZERO],
    [ZERO, ZERO, ZERO, C64::new(-1.0, 0.0)],
]);
pub const SWAP: Mat4 = CMat([
    [ONE, ZERO, ZERO, ZERO],
    [ZERO, ZERO, ONE, ZERO],
    [ZERO, ONE, ZERO, ZERO],
    [ZERO, ZERO, ZERO, ONE],
]);
pub const ISWAP: Mat4 = CMat([
    [ONE, ZERO, ZERO, ZERO],
    [ZERO, ZERO, I, ZERO],
    [ZERO, I, ZERO, ZERO],
    [ZERO, ZERO, ZERO, ONE],
]);

/// The Paulis indexed by axis: 0 = X, 1 = Y, 2 = Z.
pub fn pauli(axis: usize) -> Mat2 {
    match axis {
        0 => PAULI_X,
        1 => PAULI_Y,
        2 => PAULI_Z,
        _ => panic!("pauli axis out of range: {axis}"),
    }
}

/// Kronecker product `a ⊗ b` with `a` on the most significant qubit.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

/// Phase-blind distance `sqrt(max(0, 1 - |tr(u^† v)| / N))` for unitary `u`, `v`.
///
/// Evaluated as `‖v - e^{iα} u‖_F / sqrt(2N)` with `α = arg tr(u^† v)`, which is the same
/// quantity for unitaries but has no cancellation floor near zero.
pub fn phase_distance<const N: usize>(u: &CMat<N>, v: &CMat<N>) -> f64 {
    let tr = (u.dagger() * *v).trace();
    let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { ONE };
    let diff = v.sub(&u.scale(phase));
    let frob: f64 = diff.0.iter().flat_map(|row| row.iter()).map(|z| z.norm_sqr()).sum();
    (frob / (2 * N) as f64).sqrt()
}

/// The textbook form `sqrt(max(0, 1 - |tr(u^† v)| / N))`, kept for cross-checks.
pub fn trace_phase_distance<const N: usize>(u: &CMat<N>, v: &CMat<N>) -> f64 {
    let overlap = (u.dagger() * *v).trace().norm() / N as f64;
    (1.0 - overlap).max(0.0).sqrt()
}

/// Max-entry distance between `v` and `e^{iα} u` for the best-aligned `α`.
pub fn aligned_difference<const N: usize>(u: &CMat<N>, v: &CMat<N>) -> f64 {
    let tr = (u.dagger() * *v).trace();
    let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { ONE };
    u.scale(phase).max_abs_diff(v)
}

/// Unit vector along axis `k` (0 = x, 1 = y, 2 = z).
pub fn unit_axis(k: usize) -> Vector3<f64> {
    let mut v = Vector3::zeros();
    v[k] = 1.0;
    v
}

/// `v · (X, Y, Z)`.
pub fn pauli_vector(v: &Vector3<f64>) -> Mat2 {
    PAULI_X
        .scale(C64::new(v.x, 0.0))
        .add(&PAULI_Y.scale(C64::new(v.y, 0.0)))
        .add(&PAULI_Z.scale(C64::new(v.z, 0.0)))
}

/// A 2x2 unitary acting on a single qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneQubitGate(Mat2);

impl OneQubitGate {
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerance(m, UNITARY_TOL)
    }

    pub fn with_tolerance(m: Mat2, tol: f64) -> Result<Self> {
        let residual = m.unitarity_residual();
        if residual <= tol {
            Ok(OneQubitGate(m))
        } else {
            Err(Error::NonUnitaryInput { residual })
        }
    }

    /// Wraps a matrix already known to be unitary (products of validated gates).
    pub(crate) fn from_unitary(m: Mat2) -> Self {
        debug_assert!(m.unitarity_residual() < 1e-6, "non-unitary: {m:?}");
        OneQubitGate(m)
    }

    pub fn identity() -> Self {
        OneQubitGate(PAULI_I)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn dagger(&self) -> Self {
        OneQubitGate(self.0.dagger())
    }

    /// `self` applied after `earlier`, i.e. the matrix product `self · earlier`.
    pub fn then_after(&self, earlier: &OneQubitGate) -> Self {
        OneQubitGate(self.0 * earlier.0)
    }
}

impl Mul for OneQubitGate {
    type Output = OneQubitGate;

    fn mul(self, rhs: OneQubitGate) -> OneQubitGate {
        OneQubitGate(self.0 * rhs.0)
    }
}

impl From<OneQubitGate> for Mat2 {
    fn from(g: OneQubitGate) -> Mat2 {
        g.0
    }
}

/// A 4x4 unitary on two qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitGate(Mat4);

impl TwoQubitGate {
    pub fn new(m: Mat4) -> Result<Self> {
        Self::with_tolerance(m, UNITARY_TOL)
    }

    pub fn with_tolerance(m: Mat4, tol: f64) -> Result<Self> {
        let residual = m.unitarity_residual();
        if residual <= tol {
            Ok(TwoQubitGate(m))
        } else {
            Err(Error::NonUnitaryInput { residual })
        }
    }

    pub(crate) fn from_unitary(m: Mat4) -> Self {
        debug_assert!(m.unitarity_residual() < 1e-6, "non-unitary: {m:?}");
        TwoQubitGate(m)
    }

    pub fn identity() -> Self {
        TwoQubitGate(Mat4::identity())
    }

    pub fn cnot() -> Self {
        TwoQubitGate(CNOT)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }
}

impl From<TwoQubitGate> for Mat4 {
    fn from(g: TwoQubitGate) -> Mat4 {
        g.0
    }
}

pub fn tensor(a: &OneQubitGate, b: &OneQubitGate) -> TwoQubitGate {
    TwoQubitGate(kron(&a.0, &b.0))
}

/// Rotation `e^{i·magnitude·axis·σ}` described by a unit axis and an angle in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAngle {
    axis: Vector3<f64>,
    magnitude: f64,
}

impl AxisAngle {
    pub fn new(axis: Vector3<f64>, magnitude: f64) -> Result<Self> {
        if !(axis.iter().all(|c| c.is_finite()) && (axis.norm() - 1.0).abs() <= 1e-12) {
            return Err(Error::InvalidAxis { norm: axis.norm() });
        }
        if !(0.0..=std::f64::consts::PI).contains(&magnitude) {
            return Err(Error::InvalidAngle { magnitude });
        }
        Ok(AxisAngle { axis, magnitude })
    }

    /// Builds from a rotation vector `v = magnitude · axis` with `|v| ≤ π`.
    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let m = v.norm();
        if m == 0.0 {
            return Ok(AxisAngle { axis: unit_axis(2), magnitude: 0.0 });
        }
        Self::new(v / m, m)
    }

    pub(crate) fn new_unchecked(axis: Vector3<f64>, magnitude: f64) -> Self {
        AxisAngle { axis, magnitude }
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.axis * self.magnitude
    }
}

/// `cos(m)·I + i·sin(m)·(n·σ)`.
pub fn one_qubit_rotation(r: &AxisAngle) -> OneQubitGate {
    let (s, c) = r.magnitude.sin_cos();
    OneQubitGate(
        PAULI_I
            .scale(C64::new(c, 0.0))
            .add(&pauli_vector(&r.axis).scale(C64::new(0.0, s))),
    )
}

/// Splits `g = e^{i·phase}·one_qubit_rotation(r)`.
///
/// The phase branch is `arg(det g) / 2` in `(-π/2, π/2]`; for magnitude 0 or π the axis is `ẑ`.
pub fn axis_angle_of(g: &OneQubitGate) -> (AxisAngle, f64) {
    let m = &g.0;
    let phase = m.determinant().arg() / 2.0;
    let s = m.scale(C64::from_polar(1.0, -phase));
    let c = 0.5 * (s.0[0][0] + s.0[1][1]).re;
    let v = Vector3::new(
        0.5 * (s.0[0][1] + s.0[1][0]).im,
        0.5 * (s.0[0][1] - s.0[1][0]).re,
        0.5 * (s.0[0][0] - s.0[1][1]).im,
    );
    let sin = v.norm();
    let magnitude = sin.atan2(c);
    let axis = if sin > 1e-15 { v / sin } else { unit_axis(2) };
    (AxisAngle::new_unchecked(axis, magnitude), phase)
}

/// `e^{i(θx X⊗X + θy Y⊗Y + θz Z⊗Z)}` evaluated in the shared Bell eigenbasis.
pub fn pauli_exponential(theta: [f64; 3]) -> TwoQubitGate {
    let [tx, ty, tz] = theta;
    // Bell eigenphases: Φ± on span{|00>,|11>}, Ψ± on span{|01>,|10>}.
    let phi_plus = C64::from_polar(1.0, tz + tx - ty);
    let phi_minus = C64::from_polar(1.0, tz - tx + ty);
    let psi_plus = C64::from_polar(1.0, -tz + tx + ty);
    let psi_minus = C64::from_polar(1.0, -tz - tx - ty);
    let half = C64::new(0.5, 0.0);
    let (d0, o0) = (half * (phi_plus + phi_minus), half * (phi_plus - phi_minus));
    let (d1, o1) = (half * (psi_plus + psi_minus), half * (psi_plus - psi_minus));
    TwoQubitGate(CMat([
        [d0, ZERO, ZERO, o0],
        [ZERO, d1, o1, ZERO],
        [ZERO, o1, d1, ZERO],
        [o0, ZERO, ZERO, d0],
    ]))
}

/// Gate `A` with `A (from·σ) A^† = to·σ`, i.e. a Bloch-sphere rotation taking `from` to `to`.
pub fn aligning_gate(from: &Vector3<f64>, to: &Vector3<f64>) -> OneQubitGate {
    let dot = from.dot(to);
    if 1.0 + dot < 1e-12 {
        // Antipodal: π rotation about a deterministic perpendicular axis.
        let e = if from.z.abs() <= from.x.abs() { unit_axis(2) } else { unit_axis(0) };
        let perp = from.cross(&e).normalize();
        return one_qubit_rotation(&AxisAngle::new_unchecked(perp, std::f64::consts::FRAC_PI_2));
    }
    // (to·σ)(from·σ) = (to·from) I + i (to×from)·σ, so I + (to·σ)(from·σ) is the half-angle rotor.
    let cross = to.cross(from);
    let norm = (2.0 * (1.0 + dot)).sqrt();
    let m = PAULI_I
        .scale(C64::new(1.0 + dot, 0.0))
        .add(&pauli_vector(&cross).scale(I))
        .scale(C64::new(1.0 / norm, 0.0));
    OneQubitGate(m)
}

/// `first` on qubit 1, `second` on qubit 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalPair {
    pub first: OneQubitGate,
    pub second: OneQubitGate,
}

impl LocalPair {
    pub fn new(first: OneQubitGate, second: OneQubitGate) -> Self {
        LocalPair { first, second }
    }

    pub fn identity() -> Self {
        LocalPair::new(OneQubitGate::identity(), OneQubitGate::identity())
    }

    pub fn on_first(g: OneQubitGate) -> Self {
        LocalPair::new(g, OneQubitGate::identity())
    }

    pub fn on_second(g: OneQubitGate) -> Self {
        LocalPair::new(OneQubitGate::identity(), g)
    }

    pub fn both(g: OneQubitGate) -> Self {
        LocalPair::new(g, g)
    }

    pub fn matrix(&self) -> Mat4 {
        kron(&self.first.0, &self.second.0)
    }

    pub fn dagger(&self) -> Self {
        LocalPair::new(self.first.dagger(), self.second.dagger())
    }

    /// Factor-wise product `self · earlier`.
    pub fn compose(&self, earlier: &LocalPair) -> LocalPair {
        LocalPair::new(self.first * earlier.first, self.second * earlier.second)
    }

    /// True when the pair equals `I ⊗ I` up to a global phase.
    pub fn is_identity(&self, tol: f64) -> bool {
        phase_distance(&Mat4::identity(), &self.matrix()) <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn tensor_of_paulis() {
        let id = tensor(&OneQubitGate::identity(), &OneQubitGate::identity());
        assert_eq!(id.matrix().max_abs_diff(&Mat4::identity()), 0.0);
        let zz = kron(&PAULI_Z, &PAULI_Z);
        let expected = Mat4::from_diagonal([c(1., 0.), c(-1., 0.), c(-1., 0.), c(1., 0.)]);
        assert_eq!(zz.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn hadamard_pair_swaps_zz_for_xx() {
        let hh = kron(&HADAMARD, &HADAMARD);
        let theta = 0.37;
        let zz = pauli_exponential([0.0, 0.0, theta]);
        let xx = pauli_exponential([theta, 0.0, 0.0]);
        let conj = hh * *zz.matrix() * hh;
        assert!(conj.max_abs_diff(xx.matrix()) < 1e-14);
    }

    #[test]
    fn phase_distance_basics() {
        assert!(phase_distance(&CNOT, &CNOT) < 1e-15);
        for alpha in [0.3, 1.7, -2.9] {
            let shifted = CNOT.scale(C64::from_polar(1.0, alpha));
            assert!(phase_distance(&CNOT, &shifted) < 1e-15);
            assert!(aligned_difference(&CNOT, &shifted) < 1e-14);
        }
        let zz = kron(&PAULI_Z, &PAULI_Z);
        assert!((phase_distance(&Mat4::identity(), &zz) - 1.0).abs() < 1e-15);
        assert!((trace_phase_distance(&Mat4::identity(), &zz) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stable_form_matches_trace_form() {
        let u = *pauli_exponential([0.3, 0.1, -0.2]).matrix();
        let v = *pauli_exponential([0.1, 0.4, 0.25]).matrix() * kron(&HADAMARD, &PHASE_S);
        let a = phase_distance(&u, &v);
        let b = trace_phase_distance(&u, &v);
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn rotation_examples() {
        let iz = one_qubit_rotation(&AxisAngle::new(unit_axis(2), FRAC_PI_2).unwrap());
        assert!(iz.matrix().max_abs_diff(&PAULI_Z.scale(I)) < 1e-15);
        let id = one_qubit_rotation(&AxisAngle::new(unit_axis(2), 0.0).unwrap());
        assert_eq!(id.matrix().max_abs_diff(&PAULI_I), 0.0);
    }

    #[test]
    fn axis_angle_of_examples() {
        let (r, phase) = axis_angle_of(&OneQubitGate::identity());
        assert_eq!(r.magnitude(), 0.0);
        assert_eq!(phase, 0.0);
        assert_eq!(r.axis(), unit_axis(2));

        let (r, phase) = axis_angle_of(&OneQubitGate::new(PAULI_Z.scale(I)).unwrap());
        assert!((r.magnitude() - FRAC_PI_2).abs() < 1e-15);
        assert!((r.axis() - unit_axis(2)).norm() < 1e-15);
        assert!(phase.abs() < 1e-15);

        // H = e^{iπ/2}·e^{iπ/2 n·σ} with n = -(x+z)/√2, equivalently e^{-iπ/2}·e^{iπ/2 n·σ}
        // with n = +(x+z)/√2; which one comes back depends on the sign of zero in det(H).
        let h = OneQubitGate::new(HADAMARD).unwrap();
        let (r, phase) = axis_angle_of(&h);
        assert!((r.magnitude() - FRAC_PI_2).abs() < 1e-15);
        assert!((phase.abs() - FRAC_PI_2).abs() < 1e-15);
        let n = Vector3::new(1.0, 0.0, 1.0).normalize() * -phase.signum();
        assert!((r.axis() - n).norm() < 1e-15);
        let rebuilt = one_qubit_rotation(&r).matrix().scale(C64::from_polar(1.0, phase));
        assert!(rebuilt.max_abs_diff(&HADAMARD) < 1e-15);
    }

    #[test]
    fn pauli_exponential_examples() {
        assert!(pauli_exponential([0.0; 3]).matrix().max_abs_diff(&Mat4::identity()) < 1e-15);
        let swapish = pauli_exponential([FRAC_PI_4; 3]);
        let expected = SWAP.scale(C64::from_polar(1.0, FRAC_PI_4));
        assert!(swapish.matrix().max_abs_diff(&expected) < 1e-15);
        let e = |a: f64| C64::from_polar(1.0, a);
        let diag = Mat4::from_diagonal([e(FRAC_PI_6), e(-FRAC_PI_6), e(-FRAC_PI_6), e(FRAC_PI_6)]);
        assert!(pauli_exponential([0.0, 0.0, FRAC_PI_6]).matrix().max_abs_diff(&diag) < 1e-15);
    }

    #[test]
    fn pauli_exponential_quarter_period_shift() {
        let theta = [0.21, -0.13, 0.4];
        let base = *pauli_exponential(theta).matrix();
        for axis in 0..3 {
            let mut shifted = theta;
            shifted[axis] += FRAC_PI_2;
            let sigma = kron(&pauli(axis), &pauli(axis)).scale(I);
            let expected = sigma * base;
            assert!(pauli_exponential(shifted).matrix().max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn aligning_gate_examples() {
        let z = unit_axis(2);
        let a = aligning_gate(&z, &z);
        assert!(phase_distance(a.matrix(), &PAULI_I) < 1e-12);

        let a = aligning_gate(&z, &unit_axis(0));
        let conj = *a.matrix() * PAULI_Z * a.matrix().dagger();
        assert!(conj.max_abs_diff(&PAULI_X) < 1e-15);

        let a = aligning_gate(&z, &-z);
        let conj = *a.matrix() * PAULI_Z * a.matrix().dagger();
        assert!(conj.max_abs_diff(&PAULI_Z.scale(c(-1.0, 0.0))) < 1e-15);
    }

    #[test]
    fn determinant_of_swap_and_cnot() {
        assert!((SWAP.determinant() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((CNOT.determinant() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((kron(&PHASE_S, &PAULI_I).determinant() - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = PAULI_I.scale(c(1.1, 0.0));
        assert!(matches!(OneQubitGate::new(m), Err(Error::NonUnitaryInput { .. })));
        let mut nan = PAULI_I;
        nan.0[0][0] = c(f64::NAN, 0.0);
        assert!(OneQubitGate::new(nan).is_err());
    }

    #[test]
    fn axis_angle_validation() {
        assert!(AxisAngle::new(Vector3::new(1.0, 1.0, 0.0), 0.1).is_err());
        assert!(AxisAngle::new(unit_axis(0), 3.5).is_err());
        assert!(AxisAngle::new(unit_axis(0), -0.1).is_err());
    }
}
