#![allow(dead_code)]

use stabtest::harness::{generate_state, StateKind, StateSpec};
use stabtest::{Caps, F2Subspace, PauliIndex, QuantumState};

pub fn caps() -> Caps {
    Caps::default()
}

pub fn t_tensor(n: usize) -> QuantumState {
    generate_state(&StateSpec::new(StateKind::TTensor, n, 0, 0.0), &caps()).unwrap()
}

pub fn haar(n: usize, seed: u64) -> QuantumState {
    generate_state(&StateSpec::new(StateKind::RandomHaar, n, seed, 0.0), &caps()).unwrap()
}

pub fn stab(n: usize, seed: u64) -> QuantumState {
    generate_state(&StateSpec::new(StateKind::RandomStabilizer, n, seed, 0.0), &caps()).unwrap()
}

pub fn noisy(n: usize, seed: u64, noise: f64) -> QuantumState {
    generate_state(&StateSpec::new(StateKind::NoisyStabilizer, n, seed, noise), &caps()).unwrap()
}

pub fn zero_state(n: usize) -> QuantumState {
    QuantumState::basis_state(n, 0, &caps()).unwrap()
}

pub fn pauli(s: &str) -> PauliIndex {
    s.parse().unwrap()
}

pub fn sp(n: usize, gens: &[&str]) -> F2Subspace {
    let gens: Vec<PauliIndex> = gens.iter().map(|g| pauli(g)).collect();
    F2Subspace::span(n, &gens).unwrap()
}

/// All `4^n` Pauli indices, identity first, in a fixed scan order.
pub fn all_paulis(n: usize) -> Vec<PauliIndex> {
    let dim = 1u32 << n;
    let mut out = Vec::with_capacity(1 << (2 * n));
    for a in 0..dim {
        for b in 0..dim {
            out.push(PauliIndex::new(n, a, b).unwrap());
        }
    }
    out
}

pub struct Quadruple {
    pub gowers3: f64,
    pub eta: f64,
    pub fidelity: f64,
    pub fact1: f64,
}

/// The four headline quantities of a state, each from its own pipeline.
pub fn quadruple(s: &QuantumState) -> Quadruple {
    let c = caps();
    let spec = stabtest::spectra::weyl_spectrum(s, &c).unwrap();
    let q = stabtest::spectra::weyl_distribution(&spec).unwrap();
    Quadruple {
        gowers3: stabtest::spectra::gowers_norm_pow(s, 3, &c).unwrap(),
        eta: stabtest::spectra::weyl_uniformity(&spec, &q).unwrap(),
        fidelity: stabtest::spectra::stabilizer_fidelity_exact(s, &c).unwrap().fidelity,
        fact1: stabtest::spectra::fact1_certificate(&spec, &c).unwrap().0,
    }
}
