//! Reproducible state generation, state files on disk, and batch sweeps
//! that tabulate every analysis quantity side by side.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cover::{canonical_form, fidelity_from_subgroup, greedy_subgroup};
use crate::error::{Error, Result};
use crate::sampler::{derive_seed, tolerant_test_with, SampleChannel, TesterConfig};
use crate::spectra::{
    fact1_certificate, gowers_norm_pow, stabilizer_fidelity_exact, stabilizer_state,
    weyl_distribution, weyl_spectrum, weyl_uniformity,
};
use crate::subspace::{enumerate_lagrangians, lagrangian_count, F2Subspace};
use crate::weyl::{QuantumState, C64};

/// The families of states the harness can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    /// A Haar-random pure state from seeded Gaussian amplitudes.
    RandomHaar,
    /// A uniformly random signed stabilizer state.
    RandomStabilizer,
    /// The `n`-fold tensor power of the single-qubit magic state.
    TTensor,
    /// A random stabilizer state mixed with a Haar-random direction.
    NoisyStabilizer,
    /// A state read from a JSON file.
    File,
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            StateKind::RandomHaar => "random-haar",
            StateKind::RandomStabilizer => "random-stabilizer",
            StateKind::TTensor => "t-tensor",
            StateKind::NoisyStabilizer => "noisy-stabilizer",
            StateKind::File => "file",
        };
        f.write_str(name)
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-haar" => Ok(StateKind::RandomHaar),
            "random-stabilizer" => Ok(StateKind::RandomStabilizer),
            "t-tensor" => Ok(StateKind::TTensor),
            "noisy-stabilizer" => Ok(StateKind::NoisyStabilizer),
            "file" => Ok(StateKind::File),
            other => Err(Error::Parse(format!(
                "unknown state kind {other:?}, expected one of random-haar, \
                 random-stabilizer, t-tensor, noisy-stabilizer, file"
            ))),
        }
    }
}

/// A complete recipe for one state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSpec {
    pub kind: StateKind,
    pub n: usize,
    pub seed: u64,
    /// Mixing weight of the Haar direction for noisy stabilizers.
    pub noise: f64,
    /// Source path for the file kind.
    pub path: Option<PathBuf>,
}

impl StateSpec {
    /// A generated state with no file backing.
    pub fn new(kind: StateKind, n: usize, seed: u64, noise: f64) -> Self {
        StateSpec {
            kind,
            n,
            seed,
            noise,
            path: None,
        }
    }

    /// A state loaded from a JSON file.
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        StateSpec {
            kind: StateKind::File,
            n: 0,
            seed: 0,
            noise: 0.0,
            path: Some(path.into()),
        }
    }
}

fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (r * theta.cos(), r * theta.sin())
}

fn normalized(n: usize, mut amps: Vec<C64>, caps: &Caps) -> Result<QuantumState> {
    let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq < 1e-24 {
        return Err(Error::Internal("degenerate state vector".into()));
    }
    let norm = norm_sq.sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    QuantumState::new(n, amps, caps)
}

fn haar_amps(n: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..1usize << n)
        .map(|_| {
            let (re, im) = gaussian_pair(rng);
            C64::new(re, im)
        })
        .collect()
}

fn random_group_and_signs(
    n: usize,
    rng: &mut ChaCha8Rng,
    caps: &Caps,
) -> Result<(F2Subspace, u64)> {
    let index = rng.random_range(0..lagrangian_count(n));
    let group = enumerate_lagrangians(n, caps)?
        .nth(index as usize)
        .ok_or_else(|| Error::Internal("lagrangian index out of range".into()))?;
    let signs = rng.random_range(0..1u64 << n);
    Ok((group, signs))
}

/// Materializes the state a spec describes. Generation is deterministic
/// in the seed.
pub fn generate_state(spec: &StateSpec, caps: &Caps) -> Result<QuantumState> {
    if !(0.0..=1.0).contains(&spec.noise) {
        return Err(Error::Config(format!(
            "noise must lie in [0, 1], got {}",
            spec.noise
        )));
    }
    match spec.kind {
        StateKind::RandomHaar => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            normalized(spec.n, haar_amps(spec.n, &mut rng), caps)
        }
        StateKind::RandomStabilizer => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let (group, signs) = random_group_and_signs(spec.n, &mut rng, caps)?;
            stabilizer_state(&group, signs, caps)
        }
        StateKind::TTensor => {
            let scale = std::f64::consts::FRAC_1_SQRT_2.powi(spec.n as i32);
            let amps = (0..1usize << spec.n)
                .map(|e| {
                    let phase = std::f64::consts::FRAC_PI_4 * (e as u64).count_ones() as f64;
                    C64::from_polar(scale, phase)
                })
                .collect();
            QuantumState::new(spec.n, amps, caps)
        }
        StateKind::NoisyStabilizer => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let (group, signs) = random_group_and_signs(spec.n, &mut rng, caps)?;
            let stab = stabilizer_state(&group, signs, caps)?;
            let haar = normalized(spec.n, haar_amps(spec.n, &mut rng), caps)?;
            let amps = stab
                .amplitudes()
                .iter()
                .zip(haar.amplitudes())
                .map(|(s, h)| s * (1.0 - spec.noise) + h * spec.noise)
                .collect();
            normalized(spec.n, amps, caps)
        }
        StateKind::File => {
            let path = spec.path.as_ref().ok_or_else(|| {
                Error::Config("the file state kind needs a path".into())
            })?;
            load_state(path, caps)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    n: usize,
    amplitudes: Vec<(f64, f64)>,
}

/// Saves a state as JSON with fields `n` and `amplitudes`, the latter a
/// list of `[re, im]` pairs in basis order.
pub fn save_state(s: &QuantumState, path: impl AsRef<Path>) -> Result<()> {
    let file = StateFile {
        n: s.n(),
        amplitudes: s.amplitudes().iter().map(|a| (a.re, a.im)).collect(),
    };
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Loads a state saved by [`save_state`], revalidating normalization.
pub fn load_state(path: impl AsRef<Path>, caps: &Caps) -> Result<QuantumState> {
    let file: StateFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    let amps = file
        .amplitudes
        .into_iter()
        .map(|(re, im)| C64::new(re, im))
        .collect();
    QuantumState::new(file.n, amps, caps)
}

/// One batch of same-kind states in a sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: StateKind,
    pub n: usize,
    pub count: usize,
    /// Base seed; state `i` uses `seed + i`.
    pub seed: u64,
    #[serde(default)]
    pub noise: f64,
}

/// A full sweep: ensembles to tabulate and an optional tester to run on
/// every state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ensembles: Vec<EnsembleSpec>,
    #[serde(default)]
    pub tester: Option<TesterConfig>,
}

/// Sweep results: the CSV table and one message per failed row.
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub csv: String,
    pub errors: Vec<String>,
}

/// The sweep CSV header.
pub const SWEEP_HEADER: &str =
    "kind,n,seed,noise,gowers3_pow8,eta,fact1,exact_fidelity,cover_bound,k,m,verdict";

struct SweepRow {
    gowers: f64,
    eta: f64,
    fact1: f64,
    fidelity: f64,
    cover_bound: f64,
    k: usize,
    m: usize,
    verdict: Option<String>,
}

fn sweep_row(
    state_spec: &StateSpec,
    tester: Option<&TesterConfig>,
    caps: &Caps,
) -> Result<SweepRow> {
    let s = generate_state(state_spec, caps)?;
    let spec = weyl_spectrum(&s, caps)?;
    let gowers = gowers_norm_pow(&s, 3, caps)?;
    let q = weyl_distribution(&spec)?;
    let eta = weyl_uniformity(&spec, &q)?;
    let (fact1, _) = fact1_certificate(&spec, caps)?;
    let fidelity = stabilizer_fidelity_exact(&s, caps)?.fidelity;
    let v = greedy_subgroup(&spec, eta.min(1.0))?;
    let (cover_bound, _) = fidelity_from_subgroup(&spec, &v, caps)?;
    let form = canonical_form(&v)?;
    let verdict = match tester {
        None => None,
        Some(config) => {
            let mut channel =
                SampleChannel::from_spectrum(&spec, derive_seed(state_spec.seed, 1));
            let verdict = tolerant_test_with(&mut channel, config)?;
            Some(format!("{:?}", verdict.decision))
        }
    };
    Ok(SweepRow {
        gowers,
        eta,
        fact1,
        fidelity,
        cover_bound,
        k: form.k,
        m: form.m,
        verdict,
    })
}

/// Runs a sweep. Every state gets one CSV row; rows whose analysis fails
/// keep their identity columns, leave the rest blank, and add a message
/// to `errors`. Rows with `eta < 1` feed the empirical exponent
/// `ln(fidelity) / ln(eta)`, whose range is appended as comment lines.
pub fn run_sweep(config: &SweepConfig, caps: &Caps) -> Result<SweepOutput> {
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    let mut errors = Vec::new();
    let mut ratios: Vec<f64> = Vec::new();
    for ens in &config.ensembles {
        for i in 0..ens.count {
            let seed = ens.seed.wrapping_add(i as u64);
            let state_spec = StateSpec::new(ens.kind, ens.n, seed, ens.noise);
            match sweep_row(&state_spec, config.tester.as_ref(), caps) {
                Ok(row) => {
                    if row.eta < 1.0 - 1e-9 {
                        ratios.push(row.fidelity.ln() / row.eta.ln());
                    }
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                        ens.kind,
                        ens.n,
                        seed,
                        ens.noise,
                        row.gowers,
                        row.eta,
                        row.fact1,
                        row.fidelity,
                        row.cover_bound,
                        row.k,
                        row.m,
                        row.verdict.as_deref().unwrap_or("")
                    ));
                }
                Err(err) => {
                    errors.push(format!("{} n={} seed={seed}: {err}", ens.kind, ens.n));
                    csv.push_str(&format!(
                        "{},{},{},{},,,,,,,,\n",
                        ens.kind, ens.n, seed, ens.noise
                    ));
                }
            }
        }
    }
    if !ratios.is_empty() {
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        csv.push_str(&format!("# empirical_exponent_min = {min}\n"));
        csv.push_str(&format!("# empirical_exponent_max = {max}\n"));
    }
    Ok(SweepOutput { csv, errors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::inner_product;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn t_tensor_amplitudes() {
        let spec = StateSpec::new(StateKind::TTensor, 1, 0, 0.0);
        let s = generate_state(&spec, &caps()).unwrap();
        assert_eq!(s.amplitudes()[0], C64::from_polar(FRAC_1_SQRT_2, 0.0));
        assert_eq!(s.amplitudes()[1], C64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4));

        let spec = StateSpec::new(StateKind::TTensor, 3, 0, 0.0);
        let s = generate_state(&spec, &caps()).unwrap();
        let a7 = s.amplitudes()[7];
        assert!((a7.arg() - 3.0 * FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in [
            StateKind::RandomHaar,
            StateKind::RandomStabilizer,
            StateKind::NoisyStabilizer,
        ] {
            let spec = StateSpec::new(kind, 3, 11, 0.25);
            let a = generate_state(&spec, &caps()).unwrap();
            let b = generate_state(&spec, &caps()).unwrap();
            assert_eq!(a.amplitudes(), b.amplitudes(), "kind {kind}");
        }
    }

    #[test]
    fn zero_noise_reproduces_the_stabilizer() {
        let noisy = StateSpec::new(StateKind::NoisyStabilizer, 2, 5, 0.0);
        let clean = StateSpec::new(StateKind::RandomStabilizer, 2, 5, 0.0);
        let a = generate_state(&noisy, &caps()).unwrap();
        let b = generate_state(&clean, &caps()).unwrap();
        let overlap = inner_product(&a, &b).unwrap().norm_sqr();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noise_bounds_are_checked() {
        let spec = StateSpec::new(StateKind::NoisyStabilizer, 2, 5, 1.5);
        assert!(generate_state(&spec, &caps()).is_err());
    }

    #[test]
    fn state_files_round_trip() {
        let spec = StateSpec::new(StateKind::RandomHaar, 3, 9, 0.0);
        let s = generate_state(&spec, &caps()).unwrap();
        let dir = std::env::temp_dir().join("stabtest-harness-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.json");
        save_state(&s, &path).unwrap();
        let loaded = load_state(&path, &caps()).unwrap();
        assert_eq!(s.amplitudes(), loaded.amplitudes());
        fs::remove_file(&path).unwrap();

        let via_spec = StateSpec::from_path(dir.join("missing.json"));
        assert!(generate_state(&via_spec, &caps()).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in [
            StateKind::RandomHaar,
            StateKind::RandomStabilizer,
            StateKind::TTensor,
            StateKind::NoisyStabilizer,
            StateKind::File,
        ] {
            let name = kind.to_string();
            assert_eq!(name.parse::<StateKind>().unwrap(), kind);
        }
        assert!("haar".parse::<StateKind>().is_err());
    }

    #[test]
    fn sweep_golden_row_for_t() {
        let config = SweepConfig {
            ensembles: vec![EnsembleSpec {
                kind: StateKind::TTensor,
                n: 1,
                count: 1,
                seed: 0,
                noise: 0.0,
            }],
            tester: None,
        };
        let out = run_sweep(&config, &caps()).unwrap();
        assert!(out.errors.is_empty());
        let mut lines = out.csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_HEADER);
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..4], &["t-tensor", "1", "0", "0"]);
        let grab = |i: usize| row[i].parse::<f64>().unwrap();
        assert!((grab(4) - 0.75).abs() < 1e-12);
        assert!((grab(5) - 0.625).abs() < 1e-12);
        assert!((grab(6) - 0.75).abs() < 1e-12);
        assert!((grab(7) - (std::f64::consts::PI / 8.0).cos().powi(2)).abs() < 1e-12);
        assert!((grab(8) - 0.75).abs() < 1e-12);
        assert_eq!(&row[9..], &["0", "1", ""]);
        assert!(out.csv.contains("# empirical_exponent_min"));
    }

    #[test]
    fn sweep_over_stabilizers_is_flat() {
        let config = SweepConfig {
            ensembles: vec![EnsembleSpec {
                kind: StateKind::RandomStabilizer,
                n: 2,
                count: 5,
                seed: 31,
                noise: 0.0,
            }],
            tester: Some(TesterConfig::new(0.9, 0.2, 0.05).unwrap()),
        };
        let out = run_sweep(&config, &caps()).unwrap();
        assert!(out.errors.is_empty());
        for line in out.csv.lines().skip(1) {
            let row: Vec<&str> = line.split(',').collect();
            for col in 4..=8 {
                let value: f64 = row[col].parse().unwrap();
                assert!((value - 1.0).abs() < 1e-9, "column {col} in {line}");
            }
            assert_eq!(row[11], "Accept");
        }
        assert!(!out.csv.contains('#'));
    }

    #[test]
    fn sweep_records_row_failures() {
        let config = SweepConfig {
            ensembles: vec![EnsembleSpec {
                kind: StateKind::RandomHaar,
                n: 8,
                count: 1,
                seed: 1,
                noise: 0.0,
            }],
            tester: None,
        };
        let out = run_sweep(&config, &caps()).unwrap();
        assert_eq!(out.errors.len(), 1);
        let row = out.csv.lines().nth(1).unwrap();
        assert!(row.starts_with("random-haar,8,1,0,"));
        assert_eq!(row.matches(',').count(), 11);
        assert!(row.ends_with(",,,,,,,,"));
    }
}
