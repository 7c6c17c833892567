//! Command-line surface. Every subcommand's arguments serialize into the
//! run manifest, and `rerun` deserializes them back.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "syllo", version, about = "Syllogistic reasoning workbench")]
pub struct Cli {
    /// Maximum worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Emit the ground-truth validity table and partition counts.
    Oracle(OracleArgs),
    /// Simulate a mental-models reasoner into a response profile.
    Simulate(SimulateArgs),
    /// Sweep the reasoner parameter grid into behavior vectors.
    Sweep(SweepArgs),
    /// Fit a PCA to sweep vectors and project other reasoners into it.
    Pca(PcaArgs),
    /// Compare reasoner profiles: accuracy, correlation, ordering,
    /// fallacies, NVC rates.
    Analyze(AnalyzeArgs),
    /// Elicit responses from a completion endpoint (or the bundled mock).
    Harness(HarnessArgs),
    /// Re-execute a run from its manifest.
    Rerun(RerunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Oracle(_) => "oracle",
            Command::Simulate(_) => "simulate",
            Command::Sweep(_) => "sweep",
            Command::Pca(_) => "pca",
            Command::Analyze(_) => "analyze",
            Command::Harness(_) => "harness",
            Command::Rerun(_) => "rerun",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct OracleArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// Classical semantics: no existential import.
    #[arg(long)]
    pub no_import: bool,

    /// Print the valid conclusions of a single syllogism and exit.
    #[arg(long)]
    pub syllogism: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// TOML file with `len`, `broad`, `systm2`, `weaken`; keys present in
    /// the file take precedence over the corresponding flags.
    #[arg(long)]
    pub params: Option<PathBuf>,

    /// Poisson mean of the model size (>= 1).
    #[arg(long, default_value_t = 3.0)]
    pub len: f64,

    /// Broad-set sampling probability in [0, 1].
    #[arg(long, default_value_t = 0.4)]
    pub broad: f64,

    /// Counterexample-search propensity in [0, 1].
    #[arg(long, default_value_t = 0.4)]
    pub systm2: f64,

    /// Weakening preference in [0, 1].
    #[arg(long, default_value_t = 0.4)]
    pub weaken: f64,

    /// Responses per syllogism.
    #[arg(long, default_value_t = 100)]
    pub runs: u32,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Mutation budget per counterexample search.
    #[arg(long, default_value_t = syllo::mental::DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: usize,

    /// Individual-set file overriding the bundled sets.
    #[arg(long)]
    pub sets: Option<PathBuf>,

    /// Restrict to these syllogism ids (default: all 64).
    #[arg(long = "syllogism")]
    pub syllogisms: Vec<String>,

    /// Profile label in the output.
    #[arg(long, default_value = "simulated")]
    pub label: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// TOML file with `len`, `broad`, `systm2`, `weaken` value lists
    /// (default: the bundled 1296-point grid).
    #[arg(long)]
    pub grid: Option<PathBuf>,

    /// Responses per (grid point, syllogism).
    #[arg(long, default_value_t = 100)]
    pub runs: u32,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Per-point work budget in work units.
    #[arg(long, default_value_t = syllo::behavior::DEFAULT_WORK_CAP)]
    pub work_cap: u64,

    #[arg(long, default_value_t = syllo::mental::DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: usize,

    /// Individual-set file overriding the bundled sets.
    #[arg(long)]
    pub sets: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PcaArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// Sweep CSV to fit.
    #[arg(long)]
    pub sweep: PathBuf,

    #[arg(long, default_value_t = 4)]
    pub components: usize,

    /// Apply the error-only control before fitting.
    #[arg(long)]
    pub zero_correct: bool,

    /// Project profiles into the fitted space: NAME=PROFILE.csv.
    #[arg(long = "project")]
    pub project: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// Human response CSV (participant_id,syllogism_id,response_code).
    #[arg(long)]
    pub human: Option<PathBuf>,

    /// Additional profiles: NAME=PROFILE.csv.
    #[arg(long = "profile")]
    pub profiles: Vec<String>,

    /// LM logs: NAME=LOG.jsonl.
    #[arg(long = "lm-log")]
    pub lm_logs: Vec<String>,

    /// Multi-match counting for LM logs.
    #[arg(long, default_value = "fractional")]
    pub count_mode: String,

    /// Skip the built-in oracle-uniform and uniform-9 baselines.
    #[arg(long)]
    pub no_baselines: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct HarnessArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// Elicitation method: generative, multiple-choice, or binary.
    #[arg(long)]
    pub method: String,

    /// Prompt variant: stepxstep, logically, empty, or alt.
    #[arg(long, default_value = "stepxstep")]
    pub variant: String,

    /// Completion endpoint URL; bearer token read from SYLLO_API_TOKEN.
    #[arg(long, conflicts_with = "mock")]
    pub endpoint: Option<String>,

    /// Run offline against the oracle-backed mock client.
    #[arg(long)]
    pub mock: bool,

    /// Content-triple CSV (default: the bundled 30).
    #[arg(long)]
    pub triples: Option<PathBuf>,

    /// Use only the first N triples.
    #[arg(long)]
    pub max_triples: Option<usize>,

    /// Restrict to these syllogism ids (default: all 64).
    #[arg(long = "syllogism")]
    pub syllogisms: Vec<String>,

    /// Samples per item (generative method).
    #[arg(long, default_value_t = 30)]
    pub samples: u32,

    #[arg(long, default_value_t = 0.5)]
    pub temperature: f64,

    #[arg(long, default_value_t = 75)]
    pub max_tokens: u32,

    /// Seed of the conclusion-order shuffles.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// NVC threshold of the binary method.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,

    #[arg(long, default_value = "lm-run")]
    pub run_id: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    /// Manifest of the run to repeat.
    pub manifest: PathBuf,

    /// Output directory override.
    #[arg(long)]
    pub out: PathBuf,
}

/// `NAME=PATH` arguments.
pub fn parse_named(value: &str) -> anyhow::Result<(String, PathBuf)> {
    let (name, path) = value
        .split_once('=')
        .ok_or_else(|| anyhow::anyhow!("expected NAME=PATH, got {value:?}"))?;
    if name.is_empty() {
        anyhow::bail!("empty name in {value:?}");
    }
    Ok((name.to_string(), PathBuf::from(path)))
}
