//! Measurement-level simulation of the tolerant stabilizer tester: Bell
//! difference sampling from the characteristic distribution, two-copy
//! estimation of squared Weyl expectations, and the accept/reject rule
//! with explicit copy accounting.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::pauli::PauliIndex;
use crate::spectra::{weyl_spectrum, WeylSpectrum};
use crate::weyl::QuantumState;

/// A seeded source of tester measurements on copies of one fixed state.
///
/// Every sample charges the exact number of state copies the physical
/// protocol would consume: four per Bell difference sample and two per
/// squared-expectation sample.
#[derive(Debug, Clone)]
pub struct SampleChannel {
    n: usize,
    cum_p: Vec<f64>,
    alpha: Vec<f64>,
    rng: ChaCha8Rng,
    copies: u64,
    seed: u64,
}

impl SampleChannel {
    /// Opens a channel on a state, computing its spectrum once.
    pub fn from_state(s: &QuantumState, seed: u64, caps: &Caps) -> Result<Self> {
        Ok(Self::from_spectrum(&weyl_spectrum(s, caps)?, seed))
    }

    /// Opens a channel directly on a precomputed spectrum.
    pub fn from_spectrum(spec: &WeylSpectrum, seed: u64) -> Self {
        let mut cum = 0.0;
        let cum_p = spec
            .p()
            .iter()
            .map(|&v| {
                cum += v;
                cum
            })
            .collect();
        SampleChannel {
            n: spec.n(),
            cum_p,
            alpha: spec.alpha().to_vec(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            copies: 0,
            seed,
        }
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The seed the channel was opened with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Total state copies consumed so far.
    pub fn copies_used(&self) -> u64 {
        self.copies
    }

    fn draw_key(&mut self) -> u64 {
        let r: f64 = self.rng.random();
        let idx = self.cum_p.partition_point(|&c| c <= r);
        idx.min(self.cum_p.len() - 1) as u64
    }

    /// One Bell difference sample: the XOR of two independent draws from
    /// the characteristic distribution. Consumes four copies.
    pub fn bell_difference_sample(&mut self) -> PauliIndex {
        let key = self.draw_key() ^ self.draw_key();
        self.copies += 4;
        PauliIndex::from_key(self.n, key)
    }

    /// One unbiased `{-1, +1}` sample whose mean is `alpha(x)^2`, from
    /// two independent single-copy measurements. Consumes two copies.
    pub fn pauli_squared_sample(&mut self, x: &PauliIndex) -> Result<i8> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        let prob = 0.5 * (1.0 + self.alpha[x.key() as usize]);
        let mut product = 1i8;
        for _ in 0..2 {
            let r: f64 = self.rng.random();
            if r >= prob {
                product = -product;
            }
        }
        self.copies += 2;
        Ok(product)
    }

    /// The `m`-round uniformity estimator: each round Bell-samples an
    /// index and measures its squared expectation, six copies per round.
    pub fn estimate_uniformity(&mut self, m: usize) -> Result<f64> {
        if m == 0 {
            return Err(Error::Config("estimator needs at least one round".into()));
        }
        let mut acc = 0.0f64;
        for _ in 0..m {
            let x = self.bell_difference_sample();
            acc += self.pauli_squared_sample(&x)? as f64;
        }
        Ok(acc / m as f64)
    }
}

/// Parameters of the tolerant tester, with the acceptance threshold and
/// concentration margin derived from the promise gap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TesterConfig {
    /// Fidelity promise on accepted states.
    pub eps1: f64,
    /// Uniformity promise separating rejected states.
    pub eps2: f64,
    /// Allowed probability of a wrong verdict.
    pub fail_prob: f64,
    /// Accept when the estimate reaches this value.
    pub threshold: f64,
    /// Estimator deviation the round count guards against.
    pub deviation: f64,
}

impl TesterConfig {
    /// Standard parameters: threshold `eps1^6 / 2` with deviation
    /// `eps1^6 / 4`.
    pub fn new(eps1: f64, eps2: f64, fail_prob: f64) -> Result<Self> {
        let gap = eps1.powi(6);
        Self::with_margins(eps1, eps2, fail_prob, 0.5 * gap, 0.25 * gap)
    }

    /// Explicit threshold and deviation, validated like [`Self::new`].
    pub fn with_margins(
        eps1: f64,
        eps2: f64,
        fail_prob: f64,
        threshold: f64,
        deviation: f64,
    ) -> Result<Self> {
        if !(eps1 > 0.0 && eps1 <= 1.0) {
            return Err(Error::Config(format!("eps1 must lie in (0, 1], got {eps1}")));
        }
        if !(eps2 > 0.0 && eps2 < eps1) {
            return Err(Error::Config(format!(
                "eps2 must lie in (0, eps1), got {eps2} with eps1 = {eps1}"
            )));
        }
        if !(fail_prob > 0.0 && fail_prob < 1.0) {
            return Err(Error::Config(format!(
                "failure probability must lie in (0, 1), got {fail_prob}"
            )));
        }
        if !(threshold > 0.0 && deviation > 0.0) {
            return Err(Error::Config(format!(
                "threshold and deviation must be positive, got {threshold} and {deviation}"
            )));
        }
        Ok(TesterConfig {
            eps1,
            eps2,
            fail_prob,
            threshold,
            deviation,
        })
    }

    /// The Hoeffding round count `ceil(2 ln(2 / fail_prob) / deviation^2)`;
    /// independent of the number of qubits.
    pub fn rounds(&self) -> usize {
        (2.0 * (2.0 / self.fail_prob).ln() / (self.deviation * self.deviation)).ceil() as usize
    }
}

/// The tester's decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Accept,
    Reject,
}

/// One complete tester run: the verdict together with every quantity a
/// reader needs to audit it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TesterVerdict {
    pub decision: Decision,
    pub eta_hat: f64,
    pub m: usize,
    pub copies: u64,
    pub threshold: f64,
    pub margin: f64,
    pub seed: u64,
}

/// Runs the tolerant tester with standard margins.
pub fn tolerant_test(
    channel: &mut SampleChannel,
    eps1: f64,
    eps2: f64,
    fail_prob: f64,
) -> Result<TesterVerdict> {
    tolerant_test_with(channel, &TesterConfig::new(eps1, eps2, fail_prob)?)
}

/// Runs the tolerant tester: estimates uniformity over the configured
/// round count and accepts exactly when the estimate clears the
/// threshold.
pub fn tolerant_test_with(
    channel: &mut SampleChannel,
    config: &TesterConfig,
) -> Result<TesterVerdict> {
    let m = config.rounds();
    let before = channel.copies_used();
    let eta_hat = channel.estimate_uniformity(m)?;
    let decision = if eta_hat >= config.threshold {
        Decision::Accept
    } else {
        Decision::Reject
    };
    Ok(TesterVerdict {
        decision,
        eta_hat,
        m,
        copies: channel.copies_used() - before,
        threshold: config.threshold,
        margin: eta_hat - config.threshold,
        seed: channel.seed(),
    })
}

/// Derives a decorrelated stream seed from a base seed and an index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
