//! Primitive / imprimitive classification and an independent entanglement witness search.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::canonical::CanonicalDecomposition;
use crate::error::{Error, Result};
use crate::matrix::{TwoQubitGate, C64};
use crate::random::random_qubit_state;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateClass {
    /// Product of one-qubit gates.
    PrimitiveLocal,
    /// Locally equivalent to SWAP.
    PrimitiveSwap,
    Imprimitive,
}

impl GateClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GateClass::PrimitiveLocal => "primitive-local",
            GateClass::PrimitiveSwap => "primitive-swap",
            GateClass::Imprimitive => "imprimitive",
        }
    }

    pub fn is_primitive(&self) -> bool {
        !matches!(self, GateClass::Imprimitive)
    }

    pub fn primitive_kind(&self) -> Option<PrimitiveKind> {
        match self {
            GateClass::PrimitiveLocal => Some(PrimitiveKind::Local),
            GateClass::PrimitiveSwap => Some(PrimitiveKind::Swap),
            GateClass::Imprimitive => None,
        }
    }
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for GateClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimitiveKind {
    Local,
    Swap,
}

impl fmt::Display for PrimitiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimitiveKind::Local => "local",
            PrimitiveKind::Swap => "swap",
        })
    }
}

/// Reads the class off a normalized decomposition.
pub fn classify(cd: &CanonicalDecomposition, tol: f64) -> GateClass {
    let t = cd.core;
    if t.theta_max() <= tol {
        GateClass::PrimitiveLocal
    } else if (t.theta_z - FRAC_PI_4).abs() <= tol
        && (t.theta_x - FRAC_PI_4).abs() <= tol
        && (t.theta_y.abs() - FRAC_PI_4).abs() <= tol
    {
        GateClass::PrimitiveSwap
    } else {
        GateClass::Imprimitive
    }
}

/// Pure-state concurrence `2|ad - bc|` of `a|00> + b|01> + c|10> + d|11>`.
pub fn concurrence(state: &[C64; 4]) -> Result<f64> {
    let norm = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NonNormalizedState { norm });
    }
    let [a, b, c, d] = *state;
    Ok((2.0 * (a * d - b * c).norm()).min(1.0))
}

/// The six cardinal qubit states `|0>, |1>, |±>, |±i>`.
pub fn cardinal_states() -> [[C64; 2]; 6] {
    let h = FRAC_1_SQRT_2;
    let r = |x: f64| C64::new(x, 0.0);
    [
        [r(1.0), r(0.0)],
        [r(0.0), r(1.0)],
        [r(h), r(h)],
        [r(h), r(-h)],
        [r(h), C64::new(0.0, h)],
        [r(h), C64::new(0.0, -h)],
    ]
}

fn product_state(a: &[C64; 2], b: &[C64; 2]) -> [C64; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

fn apply(u: &TwoQubitGate, psi: &[C64; 4]) -> [C64; 4] {
    let m = u.matrix();
    let mut out = [C64::new(0.0, 0.0); 4];
    for (r, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|c| m.0[r][c] * psi[c]).sum();
    }
    out
}

/// Searches for a product input whose image has concurrence above `tol`.
///
/// Tests the 36 cardinal pairs, then `trials` random product states. A `false` result is a
/// failed search, not a proof that `u` is non-entangling.
pub fn entangling_oracle<R: Rng + ?Sized>(
    u: &TwoQubitGate,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> bool {
    let witness = |a: &[C64; 2], b: &[C64; 2]| {
        let out = apply(u, &product_state(a, b));
        concurrence(&out).map(|c| c > tol).unwrap_or(false)
    };
    let cards = cardinal_states();
    if cards.iter().any(|a| cards.iter().any(|b| witness(a, b))) {
        return true;
    }
    (0..trials).any(|_| {
        let a = random_qubit_state(rng);
        let b = random_qubit_state(rng);
        witness(&a, &b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{decompose, InteractionContent};
    use crate::matrix::{tensor, CNOT, SWAP};
    use crate::random::haar_one_qubit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn with_core(x: f64, y: f64, z: f64) -> CanonicalDecomposition {
        CanonicalDecomposition { core: InteractionContent::new(x, y, z), ..CanonicalDecomposition::identity() }
    }

    #[test]
    fn class_examples() {
        assert_eq!(classify(&with_core(0.0, 0.0, 0.0), 1e-8), GateClass::PrimitiveLocal);
        assert_eq!(classify(&with_core(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4), 1e-8), GateClass::PrimitiveSwap);
        assert_eq!(classify(&with_core(FRAC_PI_4, -FRAC_PI_4 + 1e-12, FRAC_PI_4), 1e-8), GateClass::PrimitiveSwap);
        assert_eq!(classify(&with_core(0.0, 0.0, FRAC_PI_4), 1e-8), GateClass::Imprimitive);
        assert_eq!(classify(&with_core(0.0, 0.0, 2e-8), 1e-8), GateClass::Imprimitive);
        assert_eq!(classify(&with_core(0.0, 0.0, 5e-9), 1e-8), GateClass::PrimitiveLocal);
    }

    #[test]
    fn concurrence_examples() {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        assert_eq!(concurrence(&[one, z, z, z]).unwrap(), 0.0);
        assert!((concurrence(&[h, z, z, h]).unwrap() - 1.0).abs() < 1e-15);
        let plus_zero = product_state(&[h, h], &[one, z]);
        let bell = apply(&TwoQubitGate::cnot(), &plus_zero);
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(concurrence(&[one, one, z, z]), Err(Error::NonNormalizedState { .. })));
    }

    #[test]
    fn concurrence_is_local_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let psi = apply(
                &TwoQubitGate::new(*crate::matrix::pauli_exponential([0.3, 0.1, 0.7]).matrix()).unwrap(),
                &product_state(&random_qubit_state(&mut rng), &random_qubit_state(&mut rng)),
            );
            let local = tensor(&haar_one_qubit(&mut rng), &haar_one_qubit(&mut rng));
            let moved = apply(&local, &psi);
            let (c0, c1) = (concurrence(&psi).unwrap(), concurrence(&moved).unwrap());
            assert!((c0 - c1).abs() < 1e-10);
        }
    }

    #[test]
    fn oracle_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(!entangling_oracle(&TwoQubitGate::new(SWAP).unwrap(), 100, 1e-6, &mut rng));
        assert!(entangling_oracle(&TwoQubitGate::new(CNOT).unwrap(), 0, 1e-6, &mut rng));
        for _ in 0..5 {
            let g = tensor(&haar_one_qubit(&mut rng), &haar_one_qubit(&mut rng));
            assert!(!entangling_oracle(&g, 100, 1e-6, &mut rng));
            assert_eq!(classify(&decompose(&g).unwrap(), 1e-8), GateClass::PrimitiveLocal);
        }
    }
}
