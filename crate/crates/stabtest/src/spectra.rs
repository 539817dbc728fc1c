//! Whole-spectrum analysis of a state: all `4^n` Weyl expectations, the
//! characteristic and Weyl distributions, Gowers norms by direct
//! enumeration, the uniformity functional, and exhaustive oracles for
//! stabilizer fidelity and the best single-group mass bound.

use crate::caps::{guard, Caps};
use crate::error::{Error, Result};
use crate::pauli::PauliIndex;
use crate::subspace::{enumerate_lagrangians, F2Subspace};
use crate::weyl::{inner_product, QuantumState, C64, I_POWERS};

const ENTRY_TOL: f64 = 1e-10;
const AGG_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-12;

/// All `4^n` Weyl expectations `alpha` of a state together with the
/// characteristic distribution `p(x) = 2^-n alpha(x)^2`, both indexed by
/// packed Pauli keys.
#[derive(Debug, Clone)]
pub struct WeylSpectrum {
    n: usize,
    alpha: Vec<f64>,
    p: Vec<f64>,
}

impl WeylSpectrum {
    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Expectations in packed-key order; the identity sits at index 0.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// The characteristic distribution in packed-key order.
    pub fn p(&self) -> &[f64] {
        &self.p
    }

    /// The expectation of one Weyl operator.
    pub fn alpha_at(&self, x: &PauliIndex) -> Result<f64> {
        self.check_n(x)?;
        Ok(self.alpha[x.key() as usize])
    }

    /// The characteristic probability of one index.
    pub fn p_at(&self, x: &PauliIndex) -> Result<f64> {
        self.check_n(x)?;
        Ok(self.p[x.key() as usize])
    }

    fn check_n(&self, x: &PauliIndex) -> Result<()> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        Ok(())
    }
}

/// The Weyl distribution `q = p * p` (XOR convolution), the output
/// distribution of Bell difference sampling.
#[derive(Debug, Clone)]
pub struct WeylDistribution {
    n: usize,
    q: Vec<f64>,
}

impl WeylDistribution {
    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Probabilities in packed-key order.
    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// The probability of one index.
    pub fn q_at(&self, x: &PauliIndex) -> Result<f64> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        Ok(self.q[x.key() as usize])
    }
}

/// A signed stabilizer group together with the overlap it achieves.
#[derive(Debug, Clone)]
pub struct StabilizerWitness {
    /// The Lagrangian subspace indexing the group.
    pub group: F2Subspace,
    /// Sign exponents, bit `i` for generator `i` of the canonical basis.
    pub generator_signs: u64,
    /// The squared overlap with the witness state.
    pub fidelity: f64,
}

/// In-place unnormalized Walsh-Hadamard transform.
pub(crate) fn fwht_f64(data: &mut [f64]) {
    debug_assert!(data.len().is_power_of_two());
    let mut h = 1;
    while h < data.len() {
        for chunk in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

fn fwht_c64(data: &mut [C64]) {
    debug_assert!(data.len().is_power_of_two());
    let mut h = 1;
    while h < data.len() {
        for chunk in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Computes the full Weyl spectrum in `O(n 4^n)`: for each X-part `a`,
/// the expectations over all Z-parts are one Walsh-Hadamard transform of
/// `e -> conj(f(e xor a)) f(e)`.
pub fn weyl_spectrum(s: &QuantumState, caps: &Caps) -> Result<WeylSpectrum> {
    let n = s.n();
    guard("weyl spectrum", n, caps.spectrum)?;
    let dim = 1usize << n;
    let f = s.amplitudes();
    let mut alpha = vec![0.0f64; 1 << (2 * n)];
    for a in 0..dim {
        let mut v: Vec<C64> = (0..dim).map(|e| f[e ^ a].conj() * f[e]).collect();
        fwht_c64(&mut v);
        for (b, &hat) in v.iter().enumerate() {
            let val = I_POWERS[((a & b).count_ones() & 3) as usize] * hat;
            if val.im.abs() > ENTRY_TOL {
                return Err(Error::NumericalIntegrity {
                    what: "Weyl expectation imaginary residue",
                    value: val.im,
                    tolerance: ENTRY_TOL,
                });
            }
            alpha[(a << n) | b] = val.re;
        }
    }
    if (alpha[0] - 1.0).abs() > AGG_TOL {
        return Err(Error::NumericalIntegrity {
            what: "identity expectation",
            value: alpha[0],
            tolerance: AGG_TOL,
        });
    }
    let scale = 1.0 / dim as f64;
    let mut total = 0.0;
    let mut p = Vec::with_capacity(alpha.len());
    for &a in &alpha {
        if a.abs() > 1.0 + AGG_TOL {
            return Err(Error::NumericalIntegrity {
                what: "Weyl expectation magnitude",
                value: a,
                tolerance: AGG_TOL,
            });
        }
        let prob = scale * a * a;
        total += prob;
        p.push(prob);
    }
    if (total - 1.0).abs() > AGG_TOL {
        return Err(Error::NumericalIntegrity {
            what: "characteristic distribution mass",
            value: total,
            tolerance: AGG_TOL,
        });
    }
    Ok(WeylSpectrum { n, alpha, p })
}

/// The XOR self-convolution of `p` via the fast transform: forward
/// transform, pointwise square, inverse transform.
pub fn weyl_distribution(spec: &WeylSpectrum) -> Result<WeylDistribution> {
    let len = spec.p.len();
    let mut q = spec.p.clone();
    fwht_f64(&mut q);
    for v in q.iter_mut() {
        *v *= *v;
    }
    fwht_f64(&mut q);
    let scale = 1.0 / len as f64;
    let mut total = 0.0;
    for v in q.iter_mut() {
        *v *= scale;
        if *v < -ORACLE_TOL {
            return Err(Error::NumericalIntegrity {
                what: "negative convolution mass",
                value: *v,
                tolerance: ORACLE_TOL,
            });
        }
        *v = v.max(0.0);
        total += *v;
    }
    if (total - 1.0).abs() > AGG_TOL {
        return Err(Error::NumericalIntegrity {
            what: "Weyl distribution mass",
            value: total,
            tolerance: AGG_TOL,
        });
    }
    let floor = 1.0 / len as f64;
    if q[0] + AGG_TOL < floor {
        return Err(Error::NumericalIntegrity {
            what: "Weyl distribution identity mass",
            value: q[0],
            tolerance: AGG_TOL,
        });
    }
    Ok(WeylDistribution { n: spec.n, q })
}

/// The quadratic-time convolution oracle; costs `O(16^n)` and exists to
/// cross-check [`weyl_distribution`].
pub fn weyl_distribution_naive(spec: &WeylSpectrum) -> WeylDistribution {
    let len = spec.p.len();
    let mut q = vec![0.0f64; len];
    for (x, slot) in q.iter_mut().enumerate() {
        *slot = (0..len).map(|a| spec.p[a] * spec.p[x ^ a]).sum();
    }
    WeylDistribution { n: spec.n, q }
}

/// The `2^k`-th power of the Gowers-k norm of the amplitude function,
/// for `k` in `{2, 3}`.
///
/// For `k = 3` this is the plain sum over all `2^{4n}` tuples of the
/// eight conjugation-alternating factors, folded to `O(2^{3n})` by
/// summing squared inner sums; the value is `1` exactly on stabilizer
/// states.
pub fn gowers_norm_pow(s: &QuantumState, k: u32, caps: &Caps) -> Result<f64> {
    let n = s.n();
    let dim = 1usize << n;
    let f = s.amplitudes();
    let pow = match k {
        2 => {
            let mut acc = 0.0f64;
            for h in 0..dim {
                let a: C64 = (0..dim).map(|x| f[x] * f[x ^ h].conj()).sum();
                acc += a.norm_sqr();
            }
            acc / dim as f64
        }
        3 => {
            guard("gowers-3 enumeration", n, caps.gowers)?;
            let mut acc = 0.0f64;
            for h1 in 0..dim {
                for h2 in 0..dim {
                    let g: C64 = (0..dim)
                        .map(|x| {
                            f[x] * f[x ^ h1].conj() * f[x ^ h2].conj() * f[x ^ h1 ^ h2]
                        })
                        .sum();
                    acc += g.norm_sqr();
                }
            }
            acc
        }
        other => {
            return Err(Error::Config(format!(
                "gowers norm supports k = 2 or 3, got {other}"
            )))
        }
    };
    if !(-AGG_TOL..=1.0 + AGG_TOL).contains(&pow) {
        return Err(Error::NumericalIntegrity {
            what: "gowers norm power range",
            value: pow,
            tolerance: AGG_TOL,
        });
    }
    Ok(pow)
}

/// The uniformity functional `eta = E_{x~q}[alpha(x)^2]`, which is `1`
/// exactly on stabilizer states and multiplicative over tensor products.
pub fn weyl_uniformity(spec: &WeylSpectrum, q: &WeylDistribution) -> Result<f64> {
    if spec.n != q.n {
        return Err(Error::DimensionMismatch {
            left: spec.n,
            right: q.n,
        });
    }
    let eta: f64 = spec
        .alpha
        .iter()
        .zip(&q.q)
        .map(|(&a, &qv)| qv * a * a)
        .sum();
    if !(-AGG_TOL..=1.0 + AGG_TOL).contains(&eta) {
        return Err(Error::NumericalIntegrity {
            what: "uniformity range",
            value: eta,
            tolerance: AGG_TOL,
        });
    }
    Ok(eta)
}

/// Group elements of the span of `rows` by coefficient vector: `keys[c]`
/// is the XOR combination selected by the bits of `c` (bit `i` picks
/// `rows[i]`), and `phases[c]` is the exponent `t` in
/// `prod_i W_{rows[i]}^{c_i} = i^t W_{keys[c]}`, factors ordered by
/// increasing `i`.
pub(crate) fn group_phases(n: usize, rows: &[u64]) -> (Vec<u64>, Vec<u8>) {
    let d = rows.len();
    let mut keys = vec![0u64; 1 << d];
    let mut phases = vec![0u8; 1 << d];
    for c in 1..1usize << d {
        let low = c.trailing_zeros() as usize;
        let rest = c & (c - 1);
        let lead = rows[low];
        keys[c] = lead ^ keys[rest];
        phases[c] =
            (phases[rest] + crate::weyl::product_phase_keys(n, lead, keys[rest])) & 3;
    }
    (keys, phases)
}

/// Builds the unique stabilizer state of a signed Lagrangian group by
/// projecting a computational basis state.
///
/// Bit `i` of `signs` is the sign exponent of canonical generator `i`.
/// Deterministic: the first basis state whose projection carries at
/// least half the average mass is used.
pub fn stabilizer_state(group: &F2Subspace, signs: u64, caps: &Caps) -> Result<QuantumState> {
    let n = group.n();
    if !group.is_lagrangian() {
        return Err(Error::Config(format!(
            "stabilizer state needs a Lagrangian group, got dim {} at n = {n}",
            group.dim()
        )));
    }
    guard("statevector construction", n, caps.state)?;
    let dim = 1usize << n;
    let (keys, phases) = group_phases(n, group.row_keys());
    let scale = 1.0 / dim as f64;
    for e0 in 0..dim as u64 {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        for c in 0..dim {
            let t = phases[c];
            if t & 1 == 1 {
                return Err(Error::Internal(
                    "odd product phase inside a Lagrangian group".into(),
                ));
            }
            let x = keys[c];
            let a = (x >> n) as usize;
            let b = (x & ((1 << n) - 1)) as usize;
            let mut coeff =
                I_POWERS[t as usize] * I_POWERS[((a & b).count_ones() & 3) as usize] * scale;
            if (signs & c as u64).count_ones() & 1 == 1 {
                coeff = -coeff;
            }
            if (b & e0 as usize).count_ones() & 1 == 1 {
                coeff = -coeff;
            }
            amps[e0 as usize ^ a] += coeff;
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq >= 0.5 * scale {
            let norm = norm_sq.sqrt();
            for a in amps.iter_mut() {
                *a /= norm;
            }
            return Ok(QuantumState::from_amps_unchecked(n, amps));
        }
    }
    Err(Error::Internal(
        "stabilizer projector annihilated every basis state".into(),
    ))
}

/// The exact stabilizer fidelity `max |<phi|psi>|^2` over all signed
/// stabilizer states, by exhausting Lagrangian groups and maximizing
/// over sign vectors with a Walsh-Hadamard transform per group.
///
/// Ties break toward the lexicographically smallest canonical basis and
/// then the smallest sign vector. The winner is verified independently
/// against the projected state before it is returned.
pub fn stabilizer_fidelity_exact(s: &QuantumState, caps: &Caps) -> Result<StabilizerWitness> {
    let n = s.n();
    guard("exact fidelity search", n, caps.fidelity)?;
    let spec = weyl_spectrum(s, caps)?;
    let dim = 1usize << n;
    let scale = 1.0 / dim as f64;
    let mut best: Option<(f64, F2Subspace, u64)> = None;
    for group in enumerate_lagrangians(n, caps)? {
        let (keys, phases) = group_phases(n, group.row_keys());
        let mut e = vec![0.0f64; dim];
        for c in 0..dim {
            let t = phases[c];
            if t & 1 == 1 {
                return Err(Error::Internal(
                    "odd product phase inside a Lagrangian group".into(),
                ));
            }
            let sign = if t == 2 { -1.0 } else { 1.0 };
            e[c] = sign * spec.alpha[keys[c] as usize];
        }
        fwht_f64(&mut e);
        let (mut val, mut sign_vec) = (f64::NEG_INFINITY, 0u64);
        for (sv, &w) in e.iter().enumerate() {
            let fid = w * scale;
            if fid > val {
                val = fid;
                sign_vec = sv as u64;
            }
        }
        let better = match &best {
            None => true,
            Some((bv, bg, bs)) => {
                val > *bv || (val == *bv && (&group, sign_vec) < (bg, *bs))
            }
        };
        if better {
            best = Some((val, group, sign_vec));
        }
    }
    let (fidelity, group, generator_signs) =
        best.expect("lagrangian enumeration is nonempty");
    if !(-AGG_TOL..=1.0 + AGG_TOL).contains(&fidelity) {
        return Err(Error::NumericalIntegrity {
            what: "fidelity range",
            value: fidelity,
            tolerance: AGG_TOL,
        });
    }
    let witness_state = stabilizer_state(&group, generator_signs, caps)?;
    let overlap = inner_product(&witness_state, s)?.norm_sqr();
    if (overlap - fidelity).abs() > ORACLE_TOL {
        return Err(Error::Internal(format!(
            "fidelity witness mismatch: transform {fidelity} vs projector {overlap}"
        )));
    }
    Ok(StabilizerWitness {
        group,
        generator_signs,
        fidelity,
    })
}

/// The best single-group mass bound: the Lagrangian maximizing
/// `sum_{x in T} p(x)`, a certified lower bound on stabilizer fidelity.
pub fn fact1_certificate(spec: &WeylSpectrum, caps: &Caps) -> Result<(f64, F2Subspace)> {
    let mut best: Option<(f64, F2Subspace)> = None;
    for group in enumerate_lagrangians(spec.n, caps)? {
        let mass: f64 = group
            .element_keys()
            .iter()
            .map(|&k| spec.p[k as usize])
            .sum();
        let better = match &best {
            None => true,
            Some((bv, bg)) => mass > *bv || (mass == *bv && group < *bg),
        };
        if better {
            best = Some((mass, group));
        }
    }
    Ok(best.expect("lagrangian enumeration is nonempty"))
}

/// Renders a spectrum and its Weyl distribution as CSV with columns
/// `pauli,alpha,p,q`, rows in packed-key order.
pub fn spectrum_csv(spec: &WeylSpectrum, q: &WeylDistribution) -> Result<String> {
    if spec.n != q.n {
        return Err(Error::DimensionMismatch {
            left: spec.n,
            right: q.n,
        });
    }
    let mut out = String::from("pauli,alpha,p,q\n");
    for key in 0..spec.alpha.len() {
        let letters = PauliIndex::from_key(spec.n, key as u64).to_letters();
        out.push_str(&format!(
            "{letters},{},{},{}\n",
            spec.alpha[key], spec.p[key], q.q[key]
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::weyl_expectation;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn caps() -> Caps {
        Caps::default()
    }

    fn p(s: &str) -> PauliIndex {
        s.parse().unwrap()
    }

    fn sp(n: usize, gens: &[&str]) -> F2Subspace {
        let gens: Vec<PauliIndex> = gens.iter().map(|s| p(s)).collect();
        F2Subspace::span(n, &gens).unwrap()
    }

    fn t_state() -> QuantumState {
        let ph = C64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4);
        QuantumState::new(1, vec![C64::new(FRAC_1_SQRT_2, 0.0), ph], &caps()).unwrap()
    }

    fn zero_state(n: usize) -> QuantumState {
        QuantumState::basis_state(n, 0, &caps()).unwrap()
    }

    #[test]
    fn spectrum_of_zero_and_t() {
        let spec = weyl_spectrum(&zero_state(1), &caps()).unwrap();
        assert_eq!(spec.alpha(), &[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(spec.p(), &[0.5, 0.5, 0.0, 0.0]);

        let spec = weyl_spectrum(&t_state(), &caps()).unwrap();
        let expect = [1.0, 0.0, FRAC_PI_4.cos(), FRAC_PI_4.sin()];
        for (a, e) in spec.alpha().iter().zip(expect) {
            assert!((a - e).abs() < 1e-12);
        }
        assert!((spec.p().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_matches_single_expectations() {
        let mut amps: Vec<C64> = (0..8)
            .map(|e| C64::new(1.0 + e as f64, (e as f64).sin()))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        let s = QuantumState::new(3, amps, &caps()).unwrap();
        let spec = weyl_spectrum(&s, &caps()).unwrap();
        for key in 0..64u64 {
            let x = PauliIndex::from_key(3, key);
            let direct = weyl_expectation(&s, &x).unwrap();
            assert!((spec.alpha_at(&x).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_hand_values() {
        let spec = weyl_spectrum(&zero_state(1), &caps()).unwrap();
        let q = weyl_distribution(&spec).unwrap();
        assert_eq!(q.q(), &[0.5, 0.5, 0.0, 0.0]);

        let spec = weyl_spectrum(&t_state(), &caps()).unwrap();
        let q = weyl_distribution(&spec).unwrap();
        let expect = [0.375, 0.125, 0.25, 0.25];
        for (v, e) in q.q().iter().zip(expect) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn transform_convolution_matches_naive() {
        for n in 1..=2 {
            let s = if n == 1 {
                t_state()
            } else {
                t_state().tensor(&t_state(), &caps()).unwrap()
            };
            let spec = weyl_spectrum(&s, &caps()).unwrap();
            let fast = weyl_distribution(&spec).unwrap();
            let naive = weyl_distribution_naive(&spec);
            for (a, b) in fast.q().iter().zip(naive.q()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn uniformity_values() {
        let spec = weyl_spectrum(&zero_state(2), &caps()).unwrap();
        let q = weyl_distribution(&spec).unwrap();
        assert!((weyl_uniformity(&spec, &q).unwrap() - 1.0).abs() < 1e-12);

        let t = t_state();
        let spec = weyl_spectrum(&t, &caps()).unwrap();
        let q = weyl_distribution(&spec).unwrap();
        assert!((weyl_uniformity(&spec, &q).unwrap() - 0.625).abs() < 1e-12);

        let tt = t.tensor(&t, &caps()).unwrap();
        let spec2 = weyl_spectrum(&tt, &caps()).unwrap();
        let q2 = weyl_distribution(&spec2).unwrap();
        let eta2 = weyl_uniformity(&spec2, &q2).unwrap();
        assert!((eta2 - 25.0 / 64.0).abs() < 1e-12);
    }

    #[test]
    fn gowers_values() {
        let c = caps();
        assert!((gowers_norm_pow(&t_state(), 3, &c).unwrap() - 0.75).abs() < 1e-12);
        assert!((gowers_norm_pow(&zero_state(2), 3, &c).unwrap() - 1.0).abs() < 1e-12);
        let t0 = t_state().tensor(&zero_state(1), &c).unwrap();
        assert!((gowers_norm_pow(&t0, 3, &c).unwrap() - 0.75).abs() < 1e-12);

        assert!((gowers_norm_pow(&zero_state(3), 2, &c).unwrap() - 0.125).abs() < 1e-12);
        let plus = QuantumState::new(
            1,
            vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)],
            &c,
        )
        .unwrap();
        assert!((gowers_norm_pow(&plus, 2, &c).unwrap() - 1.0).abs() < 1e-12);

        assert!(gowers_norm_pow(&t_state(), 4, &c).is_err());
        let big = zero_state(8);
        assert_eq!(gowers_norm_pow(&big, 3, &c).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn stabilizer_state_construction() {
        let c = caps();
        let z = stabilizer_state(&sp(1, &["Z"]), 0, &c).unwrap();
        assert_eq!(z.amplitudes(), zero_state(1).amplitudes());

        let plus = stabilizer_state(&sp(1, &["X"]), 0, &c).unwrap();
        assert!((plus.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((plus.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-12);

        let minus = stabilizer_state(&sp(1, &["X"]), 1, &c).unwrap();
        assert!((minus.amplitudes()[1].re + FRAC_1_SQRT_2).abs() < 1e-12);

        let one = stabilizer_state(&sp(1, &["Z"]), 1, &c).unwrap();
        assert_eq!(one.amplitudes()[1], C64::new(1.0, 0.0));

        let again = stabilizer_state(&sp(1, &["X"]), 0, &c).unwrap();
        assert_eq!(plus.amplitudes(), again.amplitudes());

        assert!(stabilizer_state(&sp(2, &["ZI"]), 0, &c).is_err());
    }

    #[test]
    fn fidelity_oracles() {
        let c = caps();
        let w = stabilizer_fidelity_exact(&zero_state(2), &c).unwrap();
        assert!((w.fidelity - 1.0).abs() < 1e-12);
        assert_eq!(w.group, sp(2, &["ZI", "IZ"]));
        assert_eq!(w.generator_signs, 0);

        let w = stabilizer_fidelity_exact(&t_state(), &c).unwrap();
        let expect = (std::f64::consts::PI / 8.0).cos().powi(2);
        assert!((w.fidelity - expect).abs() < 1e-12);
        assert_eq!(w.group, sp(1, &["X"]));
        assert_eq!(w.generator_signs, 0);

        let one = QuantumState::basis_state(1, 1, &c).unwrap();
        let w = stabilizer_fidelity_exact(&one, &c).unwrap();
        assert!((w.fidelity - 1.0).abs() < 1e-12);
        assert_eq!((w.group, w.generator_signs), (sp(1, &["Z"]), 1));

        let bell = stabilizer_state(&sp(2, &["XX", "ZZ"]), 0, &c).unwrap();
        let w = stabilizer_fidelity_exact(&bell, &c).unwrap();
        assert!((w.fidelity - 1.0).abs() < 1e-12);
        assert_eq!(w.group, sp(2, &["XX", "ZZ"]));
    }

    #[test]
    fn fact1_values() {
        let c = caps();
        let spec = weyl_spectrum(&t_state(), &c).unwrap();
        let (value, group) = fact1_certificate(&spec, &c).unwrap();
        assert!((value - 0.75).abs() < 1e-12);
        assert_eq!(group, sp(1, &["X"]));

        let spec = weyl_spectrum(&zero_state(1), &c).unwrap();
        let (value, group) = fact1_certificate(&spec, &c).unwrap();
        assert!((value - 1.0).abs() < 1e-12);
        assert_eq!(group, sp(1, &["Z"]));

        let bell = stabilizer_state(&sp(2, &["XX", "ZZ"]), 0, &c).unwrap();
        let spec = weyl_spectrum(&bell, &c).unwrap();
        let (value, group) = fact1_certificate(&spec, &c).unwrap();
        assert!((value - 1.0).abs() < 1e-12);
        assert_eq!(group, sp(2, &["XX", "ZZ"]));
    }

    #[test]
    fn fact1_never_exceeds_fidelity() {
        let c = caps();
        for s in [t_state(), t_state().tensor(&t_state(), &c).unwrap()] {
            let spec = weyl_spectrum(&s, &c).unwrap();
            let (bound, _) = fact1_certificate(&spec, &c).unwrap();
            let exact = stabilizer_fidelity_exact(&s, &c).unwrap().fidelity;
            assert!(bound <= exact + 1e-12);
        }
    }

    #[test]
    fn csv_export() {
        let spec = weyl_spectrum(&zero_state(1), &caps()).unwrap();
        let q = weyl_distribution(&spec).unwrap();
        let csv = spectrum_csv(&spec, &q).unwrap();
        assert_eq!(csv, "pauli,alpha,p,q\nI,1,0.5,0.5\nZ,1,0.5,0.5\nX,0,0,0\nY,0,0,0\n");
    }
}
