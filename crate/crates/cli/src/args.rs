use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "qai", version, about = "Seeded quantum algorithm simulations with JSON/CSV output")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Seed for every random draw in the run.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Report a duration of zero so repeated runs are byte-identical.
    #[arg(long)]
    #[serde(skip)]
    pub frozen_clock: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Photon through one or two beam splitters, plus the two-step interference comparison.
    InterfereDemo(InterfereArgs),
    /// Deutsch-Jozsa on a built-in constant or balanced function.
    Dj(DjArgs),
    /// Grover search for marked items.
    Grover(GroverArgs),
    /// Quantum Fourier transform of a basis state or periodic comb.
    Qft(QftArgs),
    /// Shor factoring of a small odd composite.
    Shor(ShorArgs),
    /// Lattice-of-sets search on a constraint problem.
    Hogg(HoggArgs),
    /// Hadamard-phase-Hadamard search on a constraint problem.
    Hth(HthArgs),
    /// Associative memory recall of a partial pattern.
    Qam(QamArgs),
    /// Multi-universe genetic algorithm on a TSP instance.
    Qga(QgaArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InterfereArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Number of beam splitters (1 or 2).
    #[arg(long, default_value_t = 2)]
    pub splitters: u8,
    /// Absorbing screen on the lower path.
    #[arg(long)]
    pub block_path: bool,
    /// Which-path measurement between the splitters.
    #[arg(long)]
    pub mid_measurement: bool,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DjFunction {
    Zero,
    One,
    Parity,
    RandomBalanced,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DjArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = DjFunction::Parity)]
    pub function: DjFunction,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroverArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    /// Marked items as integers, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub marked: Vec<usize>,
    /// Defaults to ⌊π/4·√(2ⁿ/k)⌋.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Also run the ancilla-qubit formulation.
    #[arg(long)]
    pub ancilla: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QftArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    /// Input basis state.
    #[arg(long, conflicts_with = "period")]
    pub basis: Option<usize>,
    /// Input equal superposition of multiples of this period.
    #[arg(long)]
    pub period: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ShorArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = 32)]
    pub max_attempts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyChoice {
    All,
    Sign,
    Conflict,
    Identity,
    Solutions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderChoice {
    Both,
    PhaseThenMix,
    MixThenPhase,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HoggArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Constraint problem in `csp` or `graph` format.
    #[arg(long)]
    pub input: PathBuf,
    /// Starting level of the lattice.
    #[arg(long, default_value_t = 2)]
    pub level: usize,
    #[arg(long, value_enum, default_value_t = PolicyChoice::All)]
    pub policy: PolicyChoice,
    #[arg(long, value_enum, default_value_t = OrderChoice::Both)]
    pub order: OrderChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixerChoice {
    Zero,
    Conflict,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HthArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to the Grover count for the instance's solution count.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = PolicyChoice::Solutions)]
    pub policy: PolicyChoice,
    #[arg(long, value_enum, default_value_t = MixerChoice::Zero)]
    pub mixer: MixerChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffusionChoice {
    Memory,
    Average,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QamArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// One binary pattern per line.
    #[arg(long)]
    pub patterns: PathBuf,
    /// Partial pattern over {0,1,?}, e.g. `1?`.
    #[arg(long)]
    pub query: String,
    /// Fixed iteration count instead of the exact-simulation scan.
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long, value_enum, default_value_t = DiffusionChoice::Memory)]
    pub diffusion: DiffusionChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionChoice {
    Rank,
    RankSpace,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QgaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Cities as `id x y` lines.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub universes: usize,
    #[arg(long, default_value_t = 20)]
    pub population: usize,
    #[arg(long, default_value_t = 0.3)]
    pub mutation: f64,
    #[arg(long, default_value_t = 0.8)]
    pub crossover: f64,
    #[arg(long, default_value_t = 0.2)]
    pub interference: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_generations: usize,
    #[arg(long, value_enum, default_value_t = SelectionChoice::Rank)]
    pub selection: SelectionChoice,
    /// Run to the generation cap, ignoring the no-improvement rule.
    #[arg(long)]
    pub no_patience: bool,
}
