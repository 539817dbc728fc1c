//! Property testing for stabilizer structure in small quantum states.
//!
//! The crate computes, at exhaustive-search scale, the quantities that relate
//! a pure state to the stabilizer states: its Gowers-3 norm, its Weyl
//! spectrum with the characteristic distribution `p` and the Weyl
//! distribution `q`, the uniformity functional `eta`, its exact stabilizer
//! fidelity, and lower bounds on that fidelity certified by Lagrangian
//! subspaces. A simulated copy channel drives a constant-sample tolerant
//! stabilizer tester, and a stabilizer-cover construction turns any subgroup
//! of the Pauli index group into a small family of Lagrangian groups that
//! covers it.
//!
//! Modules:
//!
//! * [`pauli`]: labels `x = (a, b)` in `F2^{2n}` for Weyl operators and the
//!   symplectic form that records commutation.
//! * [`subspace`]: canonical subspace bases, isotropic and Lagrangian
//!   predicates, deterministic Lagrangian completion and full enumeration.
//! * [`symplectic`]: symplectic maps of `F2^{2n}` and the symplectic
//!   Gram-Schmidt decomposition into hyperbolic pairs plus a residual.
//! * [`weyl`]: dense statevectors and matrix-free Weyl-operator action,
//!   expectations, and product phases.
//! * [`spectra`]: whole-spectrum analysis, the Gowers norm, the uniformity
//!   functional, and exhaustive fidelity oracles.
//! * [`sampler`]: copy-accounted Bell difference sampling and the tolerant
//!   tester.
//! * [`cover`]: canonical forms of subgroups, the `4^k` stabilizer cover,
//!   the purity bound, and heuristic subgroup search.
//! * [`harness`]: state generators, state files, and reproducible sweeps.
//!
//! Exponential-cost operations take a [`Caps`] value and refuse inputs over
//! the configured size instead of truncating them.
//!
//! ```
//! use stabtest::{Caps, harness, spectra};
//!
//! let caps = Caps::default();
//! let spec = harness::StateSpec::new(harness::StateKind::TTensor, 1, 0, 0.0);
//! let state = harness::generate_state(&spec, &caps).unwrap();
//! let g8 = spectra::gowers_norm_pow(&state, 3, &caps).unwrap();
//! assert!((g8 - 0.75).abs() < 1e-12);
//! ```

pub mod caps;
pub mod cover;
pub mod error;
pub mod harness;
pub mod pauli;
pub mod sampler;
pub mod spectra;
pub mod subspace;
pub mod symplectic;
pub mod weyl;

pub use caps::Caps;
pub use error::{Error, Result};
pub use pauli::{symplectic_form, PauliIndex};
pub use subspace::{enumerate_lagrangians, F2Subspace};
pub use symplectic::{symplectic_gram_schmidt, GramSchmidt, SymplecticMap};
pub use weyl::{apply_weyl, weyl_expectation, weyl_product_phase, QuantumState, C64};
