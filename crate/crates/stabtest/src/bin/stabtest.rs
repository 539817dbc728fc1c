//! Command-line front end: generate states, analyze them, run the
//! tolerant tester, build stabilizer covers, and sweep ensembles.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stabtest::cover::{fidelity_from_subgroup, purity_bound_check, stabilizer_cover};
use stabtest::harness::{
    generate_state, run_sweep, save_state, EnsembleSpec, StateKind, StateSpec, SweepConfig,
};
use stabtest::sampler::{derive_seed, tolerant_test_with, SampleChannel, TesterConfig};
use stabtest::spectra::{
    gowers_norm_pow, spectrum_csv, stabilizer_fidelity_exact, weyl_distribution,
    weyl_spectrum, weyl_uniformity,
};
use stabtest::{Caps, Error, F2Subspace, PauliIndex, Result};

#[derive(Parser)]
#[command(
    name = "stabtest",
    version,
    about = "Stabilizer property testing on explicit statevectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a state and save it as JSON.
    Gen {
        #[command(flatten)]
        state: StateArgs,
        /// Output path for the state file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute one analysis quantity of a state.
    Analyze {
        /// Quantity to compute.
        #[arg(value_enum)]
        what: AnalyzeWhat,
        #[command(flatten)]
        state: StateArgs,
        /// Gowers norm order.
        #[arg(long, default_value_t = 3)]
        k: u32,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the tolerant stabilizer tester and print its verdict as JSON.
    Test {
        #[command(flatten)]
        state: StateArgs,
        /// Fidelity promise on accepted states.
        #[arg(long, default_value_t = 0.9)]
        eps1: f64,
        /// Uniformity promise on rejected states; defaults to eps1 / 2.
        #[arg(long)]
        eps2: Option<f64>,
        /// Allowed probability of a wrong verdict.
        #[arg(long, default_value_t = 0.05)]
        fail_prob: f64,
    },
    /// Build the stabilizer cover of a subgroup, optionally bounding a
    /// state against it.
    Cover {
        /// Inline generators, e.g. "XI,ZZ".
        #[arg(long)]
        subgroup: Option<String>,
        /// JSON file holding an array of Pauli strings.
        #[arg(long, conflicts_with = "subgroup")]
        subgroup_file: Option<PathBuf>,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Tabulate an ensemble of states as CSV.
    Sweep {
        /// State family to sweep.
        #[arg(long, value_parser = parse_kind)]
        kind: StateKind,
        /// Number of qubits.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of states.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Base seed; state i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Haar mixing weight for noisy stabilizers.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Also run the tolerant tester on every state.
        #[arg(long)]
        tester: bool,
        #[arg(long, default_value_t = 0.9)]
        eps1: f64,
        #[arg(long, default_value_t = 0.2)]
        eps2: f64,
        #[arg(long, default_value_t = 0.05)]
        fail_prob: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeWhat {
    Gowers,
    Spectrum,
    Fidelity,
    Uniformity,
}

#[derive(Args)]
struct StateArgs {
    /// State family to generate.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<StateKind>,
    /// Number of qubits.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Haar mixing weight for noisy stabilizers.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Load the state from a JSON file instead of generating it.
    #[arg(long, conflicts_with = "kind")]
    file: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<StateKind> {
    s.parse()
}

impl StateArgs {
    fn given(&self) -> bool {
        self.kind.is_some() || self.file.is_some()
    }

    fn spec(&self) -> Result<StateSpec> {
        if let Some(path) = &self.file {
            return Ok(StateSpec::from_path(path));
        }
        match self.kind {
            Some(StateKind::File) => Err(Error::Config(
                "use --file to load a state from disk".into(),
            )),
            Some(kind) => Ok(StateSpec::new(kind, self.n, self.seed, self.noise)),
            None => Err(Error::Config("pass --kind or --file".into())),
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_subgroup(
    inline: &Option<String>,
    file: &Option<PathBuf>,
) -> Result<F2Subspace> {
    let names: Vec<String> = if let Some(list) = inline {
        list.split(',').map(|s| s.trim().to_string()).collect()
    } else if let Some(path) = file {
        serde_json::from_str(&fs::read_to_string(path)?)?
    } else {
        return Err(Error::Config(
            "pass --subgroup or --subgroup-file".into(),
        ));
    };
    if names.is_empty() {
        return Err(Error::Config("the subgroup needs at least one generator".into()));
    }
    let gens: Vec<PauliIndex> = names
        .iter()
        .map(|name| name.parse())
        .collect::<Result<_>>()?;
    F2Subspace::span(gens[0].n(), &gens)
}

fn run(cli: Cli, caps: &Caps) -> Result<()> {
    match cli.command {
        Command::Gen { state, out } => {
            let spec = state.spec()?;
            let s = generate_state(&spec, caps)?;
            save_state(&s, &out)?;
            println!("wrote {} state on {} qubits to {}", spec.kind, s.n(), out.display());
        }
        Command::Analyze { what, state, k, out } => {
            let s = generate_state(&state.spec()?, caps)?;
            let report = match what {
                AnalyzeWhat::Gowers => {
                    let pow = gowers_norm_pow(&s, k, caps)?;
                    format!("gowers{}_pow{} = {}\n", k, 1u32 << k, pow)
                }
                AnalyzeWhat::Spectrum => {
                    let spec = weyl_spectrum(&s, caps)?;
                    let q = weyl_distribution(&spec)?;
                    spectrum_csv(&spec, &q)?
                }
                AnalyzeWhat::Fidelity => {
                    let w = stabilizer_fidelity_exact(&s, caps)?;
                    let signs: String = (0..w.group.dim())
                        .map(|i| if w.generator_signs >> i & 1 == 1 { '-' } else { '+' })
                        .collect();
                    format!(
                        "fidelity = {}\ngroup = {}\nsigns = {}\n",
                        w.fidelity,
                        w.group.to_pauli_strings().join(","),
                        signs
                    )
                }
                AnalyzeWhat::Uniformity => {
                    let spec = weyl_spectrum(&s, caps)?;
                    let q = weyl_distribution(&spec)?;
                    format!("eta = {}\n", weyl_uniformity(&spec, &q)?)
                }
            };
            emit(&out, &report)?;
        }
        Command::Test {
            state,
            eps1,
            eps2,
            fail_prob,
        } => {
            let spec = state.spec()?;
            let s = generate_state(&spec, caps)?;
            let config = TesterConfig::new(eps1, eps2.unwrap_or(eps1 / 2.0), fail_prob)?;
            let mut channel = SampleChannel::from_state(&s, derive_seed(spec.seed, 1), caps)?;
            let verdict = tolerant_test_with(&mut channel, &config)?;
            println!("{}", serde_json::to_string_pretty(&verdict)?);
        }
        Command::Cover {
            subgroup,
            subgroup_file,
            state,
        } => {
            let v = parse_subgroup(&subgroup, &subgroup_file)?;
            let cover = stabilizer_cover(&v, caps)?;
            if state.given() {
                let s = generate_state(&state.spec()?, caps)?;
                let spec = weyl_spectrum(&s, caps)?;
                let purity = purity_bound_check(&spec, &v)?;
                let (bound, group) = fidelity_from_subgroup(&spec, &v, caps)?;
                let combined = serde_json::json!({
                    "cover": serde_json::from_str::<serde_json::Value>(&cover.to_json()?)?,
                    "purity": {
                        "lhs": purity.lhs,
                        "rhs": purity.rhs,
                        "ok": purity.ok,
                    },
                    "fidelity_bound": {
                        "value": bound,
                        "group": group.to_pauli_strings(),
                    },
                });
                println!("{}", serde_json::to_string_pretty(&combined)?);
            } else {
                println!("{}", cover.to_json()?);
            }
        }
        Command::Sweep {
            kind,
            n,
            count,
            seed,
            noise,
            tester,
            eps1,
            eps2,
            fail_prob,
            out,
        } => {
            let config = SweepConfig {
                ensembles: vec![EnsembleSpec {
                    kind,
                    n,
                    count,
                    seed,
                    noise,
                }],
                tester: if tester {
                    Some(TesterConfig::new(eps1, eps2, fail_prob)?)
                } else {
                    None
                },
            };
            let output = run_sweep(&config, caps)?;
            for message in &output.errors {
                eprintln!("row failed: {message}");
            }
            emit(&out, &output.csv)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(caps) => caps,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli, &caps) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
