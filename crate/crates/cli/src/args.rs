use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dv_core::Strategy;

#[derive(Debug, Parser)]
#[command(name = "dv", version, about = "Keep few columns of a matrix while keeping its rows distinct")]
pub struct Cli {
    /// Input file: a matrix (.dvm), a hitting set instance (.hs) or, for
    /// `generate --kind d3is`, a graph.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Random seed (generate only).
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a minimum set of at most K columns that keeps all rows distinct.
    Solve(SolveArgs),
    /// Report the complexity regime of the input's distance profile.
    Classify(ClassifyArgs),
    /// Apply answer-preserving reduction rules and write the reduced matrix.
    Reduce(ReduceArgs),
    /// Shrink the instance to a kernel for the chosen parameter.
    Kernel(KernelArgs),
    /// Greedy solution within a factor H of the optimum.
    Approx,
    /// Generate an instance with a known distance profile.
    Generate(GenerateArgs),
    /// Check whether a column set keeps all rows distinct.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Budget: maximum number of retained columns.
    #[arg(long)]
    pub k: usize,

    #[arg(long, default_value = "auto", value_parser = ["auto", "exact", "branch", "poly"])]
    pub algo: String,

    /// Run the data-parallel loops on one thread.
    #[arg(long)]
    pub sequential: bool,
}

impl SolveArgs {
    pub fn strategy(&self) -> Strategy {
        self.algo.parse().expect("restricted by the value parser")
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Also print the weight classes and their sunflower structure.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Preprocess,
    Inessential,
    Dominance,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Rules to apply, in order.
    #[arg(long, value_delimiter = ',', default_value = "preprocess,inessential,dominance")]
    pub rules: Vec<Rule>,

    /// Where to write the reduced matrix (standard output if absent).
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelParam {
    /// Maximum pairwise distance H and budget k.
    #[value(name = "h-k")]
    HK,
    /// Alphabet size and budget k.
    #[value(name = "sigma-k")]
    SigmaK,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub param: KernelParam,

    #[arg(long)]
    pub k: usize,

    /// Where to write the kernel (standard output if absent).
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Write the intermediate hitting set kernel (.hs) instead of a matrix;
    /// h-k only.
    #[arg(long)]
    pub emit_hs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    D3is,
    Pad1,
    Pad2,
    Sunflower,
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub kind: Kind,

    /// Matrix file to write; the metadata goes next to it with a .json
    /// extension.
    #[arg(long, value_name = "PATH")]
    pub output: PathBuf,

    /// Budget. Required for pad1 and pad2; d3is derives it from --target.
    #[arg(long)]
    pub k: Option<usize>,

    /// d3is: vertices of a random graph when no --input graph is given.
    #[arg(long)]
    pub vertices: Option<usize>,

    /// d3is: edge probability of the random graph.
    #[arg(long, default_value_t = 0.4)]
    pub edge_prob: f64,

    /// d3is: size of the sought distance-3 independent set (default: the
    /// maximum, computed exactly).
    #[arg(long)]
    pub target: Option<usize>,

    /// pad2: distance offset a.
    #[arg(long, default_value_t = 0)]
    pub a: usize,

    /// pad1, pad2: distance offset b.
    #[arg(long, default_value_t = 0)]
    pub b: usize,

    /// sunflower: petal sizes.
    #[arg(long, value_delimiter = ',')]
    pub petals: Vec<usize>,

    /// sunflower: core size.
    #[arg(long, default_value_t = 0)]
    pub core: usize,

    /// random: number of rows.
    #[arg(long)]
    pub rows: Option<usize>,

    /// random: number of columns.
    #[arg(long)]
    pub cols: Option<usize>,

    /// random: minimum pairwise distance.
    #[arg(long)]
    pub alpha: Option<usize>,

    /// random: maximum pairwise distance.
    #[arg(long)]
    pub beta: Option<usize>,

    /// random: sampling attempts before giving up.
    #[arg(long, default_value_t = 1000)]
    pub attempts: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Retained columns, 1-based.
    #[arg(long, value_delimiter = ',', required = true)]
    pub columns: Vec<usize>,

    /// Also require at most K columns.
    #[arg(long)]
    pub k: Option<usize>,
}
