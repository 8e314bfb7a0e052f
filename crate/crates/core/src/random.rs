//! Haar-random unitaries and product states for test corpora.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{CMat, Mat4, OneQubitGate, C64};

/// Haar-distributed `N x N` unitary: QR of a complex Gaussian, with `R`'s diagonal phases
/// moved into `Q`.
pub fn haar_unitary<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CMat<N> {
    let g = DMatrix::<C64>::from_fn(N, N, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    CMat::from_fn(|i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        q[(i, j)] * phase
    })
}

pub fn haar_one_qubit<R: Rng + ?Sized>(rng: &mut R) -> OneQubitGate {
    OneQubitGate::from_unitary(haar_unitary::<2, R>(rng))
}

pub fn haar_two_qubit<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    haar_unitary::<4, R>(rng)
}

/// Uniformly random pure qubit state.
pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> [C64; 2] {
    let u = haar_unitary::<2, R>(rng);
    [u.0[0][0], u.0[1][0]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_unitary_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(0);
        let mut b = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let u = haar_two_qubit(&mut a);
            assert!(u.unitarity_residual() <= 1e-12);
            assert_eq!(u, haar_two_qubit(&mut b));
        }
    }

    #[test]
    fn trace_moment_matches_haar() {
        // E|tr U|^2 = 1 for Haar U(4), so mean |tr U|^2 / 4 = 1/4.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 10_000;
        let mean: f64 =
            (0..n).map(|_| haar_two_qubit(&mut rng).trace().norm_sqr() / 4.0).sum::<f64>() / n as f64;
        assert!((mean - 0.25).abs() <= 0.25 * 0.05, "mean {mean}");
    }
}
