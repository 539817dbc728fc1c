//! Weyl operators on dense statevectors.
//!
//! `W_x` for `x = (a | b)` is `i^{a.b} X^a Z^b`, with the exponent of `i`
//! taken as the integer dot product mod 4. That convention makes every
//! `W_x` Hermitian as well as unitary, so expectations are real.
//! Application is matrix-free: a bit flip by `a` plus a phase.

use num_complex::Complex;

use crate::caps::{guard, Caps};
use crate::error::{Error, Result};
use crate::pauli::{check_qubits, PauliIndex};

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;

const NORM_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-10;

pub(crate) const I_POWERS: [C64; 4] = [
    C64::new(1.0, 0.0),
    C64::new(0.0, 1.0),
    C64::new(-1.0, 0.0),
    C64::new(0.0, -1.0),
];

/// A pure state on `n` qubits as `2^n` amplitudes in computational-basis
/// order; basis index bit `j - 1` is qubit `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n: usize,
    amps: Vec<C64>,
}

impl QuantumState {
    /// Wraps amplitudes after checking the dimension and unit norm
    /// (within `1e-10`).
    pub fn new(n: usize, amps: Vec<C64>, caps: &Caps) -> Result<Self> {
        check_qubits(n)?;
        guard("statevector construction", n, caps.state)?;
        if amps.len() != 1 << n {
            return Err(Error::Config(format!(
                "expected {} amplitudes for n = {n}, got {}",
                1 << n,
                amps.len()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NumericalIntegrity {
                what: "state norm",
                value: norm_sq,
                tolerance: NORM_TOL,
            });
        }
        Ok(QuantumState { n, amps })
    }

    /// The computational basis state `|e>`.
    pub fn basis_state(n: usize, e: u64, caps: &Caps) -> Result<Self> {
        check_qubits(n)?;
        guard("statevector construction", n, caps.state)?;
        if e >= 1 << n {
            return Err(Error::Config(format!(
                "basis index {e} out of range for n = {n}"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[e as usize] = C64::new(1.0, 0.0);
        Ok(QuantumState { n, amps })
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The amplitude vector in basis order.
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// The tensor product, with `other`'s qubits appended after ours.
    pub fn tensor(&self, other: &QuantumState, caps: &Caps) -> Result<QuantumState> {
        let n = self.n + other.n;
        check_qubits(n)?;
        guard("statevector construction", n, caps.state)?;
        let mut amps = Vec::with_capacity(1 << n);
        for &hi in &other.amps {
            for &lo in &self.amps {
                amps.push(lo * hi);
            }
        }
        Ok(QuantumState { n, amps })
    }

    pub(crate) fn from_amps_unchecked(n: usize, amps: Vec<C64>) -> Self {
        QuantumState { n, amps }
    }
}

/// The inner product `<a|b>`.
pub fn inner_product(a: &QuantumState, b: &QuantumState) -> Result<C64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Applies `W_x`: the amplitude rule is
/// `(W_x s)(e xor a) = i^{a.b} (-1)^{b.e} s(e)`.
pub fn apply_weyl(s: &QuantumState, x: &PauliIndex) -> Result<QuantumState> {
    if s.n != x.n() {
        return Err(Error::DimensionMismatch {
            left: s.n,
            right: x.n(),
        });
    }
    let a = x.x_bits() as usize;
    let b = x.z_bits() as usize;
    let lead = I_POWERS[((a & b).count_ones() & 3) as usize];
    let mut amps = vec![C64::new(0.0, 0.0); s.amps.len()];
    for (e, &amp) in s.amps.iter().enumerate() {
        let sign = if (b & e).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        };
        amps[e ^ a] = lead * sign * amp;
    }
    Ok(QuantumState { n: s.n, amps })
}

/// The expectation `<s|W_x|s>`, real under the phase convention.
///
/// Fails if the imaginary residue exceeds `1e-10`; the residue is
/// discarded after the check.
pub fn weyl_expectation(s: &QuantumState, x: &PauliIndex) -> Result<f64> {
    if s.n != x.n() {
        return Err(Error::DimensionMismatch {
            left: s.n,
            right: x.n(),
        });
    }
    let a = x.x_bits() as usize;
    let b = x.z_bits() as usize;
    let lead = I_POWERS[((a & b).count_ones() & 3) as usize];
    let mut acc = C64::new(0.0, 0.0);
    for (e, &amp) in s.amps.iter().enumerate() {
        let sign = if (b & e).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        };
        acc += s.amps[e ^ a].conj() * lead * sign * amp;
    }
    if acc.im.abs() > IMAG_TOL {
        return Err(Error::NumericalIntegrity {
            what: "Weyl expectation imaginary residue",
            value: acc.im,
            tolerance: IMAG_TOL,
        });
    }
    Ok(acc.re)
}

/// The phase exponent `t` with `W_x W_y = i^t W_{x xor y}`.
pub fn weyl_product_phase(x: &PauliIndex, y: &PauliIndex) -> Result<u8> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    Ok(product_phase_keys(x.n(), x.key(), y.key()))
}

pub(crate) fn product_phase_keys(n: usize, x: u64, y: u64) -> u8 {
    let m = crate::pauli::mask(n);
    let (ax, bx) = (x >> n, x & m);
    let (ay, by) = (y >> n, y & m);
    let t = (ax & bx).count_ones()
        + (ay & by).count_ones()
        + 2 * (bx & ay).count_ones()
        + 3 * ((ax ^ ay) & (bx ^ by)).count_ones();
    (t & 3) as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::symplectic_form;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliIndex {
        s.parse().unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn t_state() -> QuantumState {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let ph = C64::from_polar(r, std::f64::consts::FRAC_PI_4);
        QuantumState::new(1, vec![C64::new(r, 0.0), ph], &caps()).unwrap()
    }

    fn random_state(n: usize, seed: u64) -> QuantumState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<C64> = (0..1usize << n)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        QuantumState::new(n, amps, &caps()).unwrap()
    }

    fn dense_matrix(n: usize, x: &PauliIndex) -> Vec<Vec<C64>> {
        let dim = 1usize << n;
        let mut cols = Vec::with_capacity(dim);
        for e in 0..dim {
            let basis = QuantumState::basis_state(n, e as u64, &caps()).unwrap();
            cols.push(apply_weyl(&basis, x).unwrap().amps);
        }
        (0..dim)
            .map(|r| (0..dim).map(|c| cols[c][r]).collect())
            .collect()
    }

    #[test]
    fn z_flips_one() {
        let one = QuantumState::basis_state(1, 1, &caps()).unwrap();
        let out = apply_weyl(&one, &p("Z")).unwrap();
        assert_eq!(out.amplitudes()[0], C64::new(0.0, 0.0));
        assert_eq!(out.amplitudes()[1], C64::new(-1.0, 0.0));
    }

    #[test]
    fn y_on_zero_gives_i_one() {
        let zero = QuantumState::basis_state(1, 0, &caps()).unwrap();
        let out = apply_weyl(&zero, &p("(1|1)")).unwrap();
        assert_eq!(out.amplitudes()[0], C64::new(0.0, 0.0));
        assert_eq!(out.amplitudes()[1], C64::new(0.0, 1.0));
    }

    #[test]
    fn weyl_is_an_involution() {
        for n in 1..=2 {
            let s = random_state(n, 5);
            for key in 0..1u64 << (2 * n) {
                let x = PauliIndex::from_key(n, key);
                let round = apply_weyl(&apply_weyl(&s, &x).unwrap(), &x).unwrap();
                for (a, b) in s.amplitudes().iter().zip(round.amplitudes()) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn expectation_examples() {
        let zero = QuantumState::basis_state(1, 0, &caps()).unwrap();
        assert_eq!(weyl_expectation(&zero, &p("Z")).unwrap(), 1.0);
        let t = t_state();
        let expect = std::f64::consts::FRAC_1_SQRT_2;
        assert!((weyl_expectation(&t, &p("X")).unwrap() - expect).abs() < 1e-12);
        assert!((weyl_expectation(&t, &p("I")).unwrap() - 1.0).abs() < 1e-15);
        let s = random_state(3, 9);
        assert!((weyl_expectation(&s, &p("III")).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_phase_examples() {
        assert_eq!(weyl_product_phase(&p("X"), &p("Z")).unwrap(), 3);
        assert_eq!(weyl_product_phase(&p("Z"), &p("X")).unwrap(), 1);
        for key in 0..16u64 {
            let x = PauliIndex::from_key(2, key);
            assert_eq!(weyl_product_phase(&x, &x).unwrap(), 0);
        }
        assert_eq!(weyl_product_phase(&p("YY"), &p("XX")).unwrap(), 2);
    }

    #[test]
    fn product_phase_matches_dense_products() {
        let n = 2;
        let dim = 1usize << n;
        for xk in 0..1u64 << (2 * n) {
            for yk in 0..1u64 << (2 * n) {
                let x = PauliIndex::from_key(n, xk);
                let y = PauliIndex::from_key(n, yk);
                let t = weyl_product_phase(&x, &y).unwrap();
                let wx = dense_matrix(n, &x);
                let wy = dense_matrix(n, &y);
                let wxy = dense_matrix(n, &PauliIndex::from_key(n, xk ^ yk));
                for r in 0..dim {
                    for c in 0..dim {
                        let prod: C64 = (0..dim).map(|j| wx[r][j] * wy[j][c]).sum();
                        let expect = I_POWERS[t as usize] * wxy[r][c];
                        assert!((prod - expect).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn phase_antisymmetry_matches_the_form() {
        for n in 1..=2 {
            for xk in 0..1u64 << (2 * n) {
                for yk in 0..1u64 << (2 * n) {
                    let x = PauliIndex::from_key(n, xk);
                    let y = PauliIndex::from_key(n, yk);
                    let t_xy = weyl_product_phase(&x, &y).unwrap() as i8;
                    let t_yx = weyl_product_phase(&y, &x).unwrap() as i8;
                    let diff = (t_xy - t_yx).rem_euclid(4) as u8;
                    assert_eq!(diff, 2 * symplectic_form(&x, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn dense_hermitian_unitary_orthogonal() {
        let n = 2;
        let dim = 1usize << n;
        let mats: Vec<Vec<Vec<C64>>> = (0..1u64 << (2 * n))
            .map(|k| dense_matrix(n, &PauliIndex::from_key(n, k)))
            .collect();
        for w in &mats {
            for r in 0..dim {
                for c in 0..dim {
                    assert!((w[r][c] - w[c][r].conj()).norm() < 1e-12);
                    let sq: C64 = (0..dim).map(|j| w[r][j] * w[j][c]).sum();
                    let id = if r == c { 1.0 } else { 0.0 };
                    assert!((sq - C64::new(id, 0.0)).norm() < 1e-12);
                }
            }
        }
        for (xk, wx) in mats.iter().enumerate() {
            for (yk, wy) in mats.iter().enumerate() {
                let trace: C64 = (0..dim)
                    .map(|r| (0..dim).map(|j| wx[r][j] * wy[j][r]).sum::<C64>())
                    .sum();
                let expect = if xk == yk { dim as f64 } else { 0.0 };
                assert!((trace - C64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn commutation_follows_the_form() {
        let n = 2;
        let s = random_state(n, 3);
        for xk in 0..1u64 << (2 * n) {
            for yk in 0..1u64 << (2 * n) {
                let x = PauliIndex::from_key(n, xk);
                let y = PauliIndex::from_key(n, yk);
                let xy = apply_weyl(&apply_weyl(&s, &y).unwrap(), &x).unwrap();
                let yx = apply_weyl(&apply_weyl(&s, &x).unwrap(), &y).unwrap();
                let sign = if symplectic_form(&x, &y).unwrap() == 1 {
                    -1.0
                } else {
                    1.0
                };
                for (a, b) in xy.amplitudes().iter().zip(yx.amplitudes()) {
                    assert!((a - sign * b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tensor_layout_is_little_endian() {
        let zero = QuantumState::basis_state(1, 0, &caps()).unwrap();
        let one = QuantumState::basis_state(1, 1, &caps()).unwrap();
        let joint = zero.tensor(&one, &caps()).unwrap();
        assert_eq!(joint.amplitudes()[0b10], C64::new(1.0, 0.0));
        let x1 = weyl_expectation(&joint, &p("ZI")).unwrap();
        let x2 = weyl_expectation(&joint, &p("IZ")).unwrap();
        assert_eq!((x1, x2), (1.0, -1.0));
    }

    #[test]
    fn construction_rejects_bad_input() {
        let c = caps();
        assert!(QuantumState::new(1, vec![C64::new(1.0, 0.0); 2], &c).is_err());
        assert!(QuantumState::new(2, vec![C64::new(1.0, 0.0)], &c).is_err());
        let big = QuantumState::basis_state(13, 0, &c).unwrap_err();
        assert_eq!(big.exit_code(), 3);
        let s = random_state(2, 1);
        assert!(apply_weyl(&s, &p("X")).is_err());
        assert!(weyl_expectation(&s, &p("X")).is_err());
    }
}
