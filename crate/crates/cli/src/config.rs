//! Command configurations. Each one is both a clap subcommand and the
//! `config` object embedded in reports, so a report can be replayed.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

fn default_step_limit() -> usize {
    lll_core::DEFAULT_STEP_LIMIT
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cmd {
    /// Certify an instance (symmetric, weighted or ε-correct).
    Check(CheckArgs),
    /// Run the resampling process on a seeded table.
    Solve(SolveArgs),
    /// Pile validation, traceback and the index bound.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Truncated runs on a shared lifted table and their defect.
    Approx(ApproxArgs),
    /// Coloring applications.
    #[command(subcommand)]
    Apps(AppsCmd),
    /// Tilings, block code, entropy estimates and parameter arithmetic.
    #[command(subcommand)]
    Entropy(EntropyCmd),
    /// Write a generated instance to a file.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Slll,
    Glll,
    Eps,
}

/// How ω is obtained for weighted checks.
#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaArgs {
    /// JSON array of per-event weights.
    #[arg(long)]
    pub omega: Option<PathBuf>,
    /// The same weight for every event.
    #[arg(long, conflicts_with = "omega")]
    pub omega_const: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "slll")]
    pub mode: CheckMode,
    #[command(flatten)]
    pub omega: OmegaArgs,
    /// ε for the ε-correct check.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleArg {
    Lex,
    Random,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replica i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub replicas: usize,
    #[arg(long, value_enum, default_value = "lex")]
    pub rule: RuleArg,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCmd {
    /// Check a pile file; with an instance and seed also check it appears.
    Validate(ValidateArgs),
    /// Pile of the resampling history behind one selection.
    Traceback(TracebackArgs),
    /// Monte-Carlo mean of the index of a domain against the weighted bound.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateArgs {
    #[arg(long)]
    pub pile: PathBuf,
    #[arg(long, requires = "seed")]
    pub instance: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TracebackArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub domain: usize,
    /// Step at which the domain was selected.
    #[arg(long)]
    pub step: usize,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub domain: usize,
    #[arg(long, default_value_t = 1000)]
    pub tables: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_height: usize,
    #[command(flatten)]
    pub omega: OmegaArgs,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproxArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Number of shared-table seeds.
    #[arg(long, default_value_t = 50)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed truncation N instead of choosing it.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 256)]
    pub max_n: usize,
    #[command(flatten)]
    pub omega: OmegaArgs,
}

/// Graph descriptions: path:N, cycle:N, complete:N, kbip:A,B,
/// regular-tf:N,D,SEED, bounded:N,MAXDEG,EDGES,SEED or file:PATH.
pub type GraphSpec = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyArg {
    Cyclic,
    Disjoint,
    RandomLinear,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphArgs {
    #[arg(long, default_value_t = 6)]
    pub k: usize,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "cyclic")]
    pub topology: TopologyArg,
    /// Degree cap for random-linear.
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppsCmd {
    /// Two-coloring of a k-uniform hypergraph.
    Hypergraph(AppHypergraphArgs),
    /// List coloring with sparse color sharing.
    Listcolor(ListcolorArgs),
    /// Nonrepetitive coloring of short paths.
    Nonrep(NonrepArgs),
    /// Acyclic coloring of short cycles.
    Acyclic(AcyclicArgs),
    /// Good partial coloring followed by greedy extension.
    Goodcolor(GoodcolorArgs),
    /// Embed a bounded-degree graph into a regular one.
    Regularize(RegularizeArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppHypergraphArgs {
    #[command(flatten)]
    pub graph: HypergraphArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListcolorArgs {
    #[arg(long, default_value = "bounded:500,8,1600,0")]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 64)]
    pub palette: u32,
    #[arg(long, default_value_t = 0)]
    pub lists_seed: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonrepArgs {
    #[arg(long, default_value = "path:4")]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 3)]
    pub palette: u32,
    /// Longest path (vertices) to constrain; even.
    #[arg(long, default_value_t = 4)]
    pub lmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also search exhaustively.
    #[arg(long)]
    pub brute: bool,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: usize,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcyclicArgs {
    #[arg(long, default_value = "cycle:4")]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 3)]
    pub palette: u32,
    #[arg(long, default_value_t = 4)]
    pub cmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub brute: bool,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: usize,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoodcolorArgs {
    #[arg(long, default_value = "regular-tf:2000,8,0")]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "LLL_STEP_LIMIT", default_value_t = default_step_limit())]
    #[serde(default = "default_step_limit")]
    pub step_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularizeArgs {
    #[arg(long)]
    pub graph: GraphSpec,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyCmd {
    /// Greedy quasi-tiling of [0, m) by intervals [0, ℓ).
    Tile(TileArgs),
    /// Encode a word, decode it back and report the layout.
    Code(CodeArgs),
    /// Plug-in block entropy of sampled Bernoulli words.
    Estimate(EstimateArgs),
    /// Words of length n with programs of length at most n − c.
    Counting(CountingArgs),
    /// Threshold t for given ε, d, δ.
    Params(ParamsArgs),
    /// Low-complexity window events on a cyclic ring.
    Complexity(ComplexityArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileArgs {
    #[arg(long)]
    pub m: usize,
    /// Tile lengths, comma separated, strictly increasing.
    #[arg(long, value_delimiter = ',', required = true)]
    pub tiles: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeArgs {
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub tiles: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Bits per symbol.
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    /// Explicit word as a string of symbol digits (base 2^s, s ≤ 3).
    #[arg(long, conflicts_with_all = ["m", "p"])]
    pub word: Option<String>,
    /// Length of a sampled word.
    #[arg(long, default_value_t = 1024)]
    pub m: usize,
    /// Probability of a one per bit of each sampled symbol.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled words (ignored with --word).
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateArgs {
    #[arg(long, default_value_t = 8)]
    pub window: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompressorArg {
    Identity,
    RunLength,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountingArgs {
    #[arg(long, value_enum, default_value = "run-length")]
    pub decompressor: DecompressorArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurrogateArg {
    CodeLength,
    RunLength,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexityArgs {
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[arg(long, default_value_t = 3)]
    pub t: u32,
    /// Size M of the ring ℤ_M.
    #[arg(long, default_value_t = 64)]
    pub ring: usize,
    /// Radii a_n of the windows [−a_n, a_n].
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub radii: Vec<u64>,
    #[arg(long, value_enum, default_value = "code-length")]
    pub surrogate: SurrogateArg,
    /// Tile lengths for the code-length surrogate.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub tiles: Vec<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub max_events: usize,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenCmd {
    /// Hypergraph two-coloring instance.
    Hypergraph(GenHypergraphArgs),
    /// Nonrepetitive-coloring instance.
    Nonrep(GenGraphArgs),
    /// Acyclic-coloring instance (lmax is the longest cycle).
    Acyclic(GenGraphArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenHypergraphArgs {
    #[command(flatten)]
    pub graph: HypergraphArgs,
    /// Where the instance is written.
    #[arg(long)]
    pub write: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenGraphArgs {
    #[arg(long)]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 3)]
    pub palette: u32,
    #[arg(long, default_value_t = 4)]
    pub lmax: usize,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: usize,
    #[arg(long)]
    pub write: PathBuf,
}
