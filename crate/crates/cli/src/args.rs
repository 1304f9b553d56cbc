use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used by every randomized path unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0x0074_7275_7373;

#[derive(Parser, Debug)]
#[command(name = "truss", version, about = "Exact and truncated k-truss decomposition, extremal constructions and bound checks")]
pub struct Cli {
    /// Edge list to read ("-" or absent for stdin).
    #[arg(short, long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Where to write results (absent for stdout).
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Skip single-token lines (isolated vertices) instead of rejecting them.
    #[arg(long, global = true)]
    pub allow_isolated: bool,

    /// Report timings and work counters on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size, degree, degeneracy and triangle statistics.
    Stats {
        #[arg(long)]
        json: bool,
    },
    /// List triangles as "u v w", or per-edge counts with --counts.
    Triangles {
        /// Print "u<TAB>v<TAB>count" for every edge instead.
        #[arg(long)]
        counts: bool,
    },
    /// Exact trussness of every edge as "u<TAB>v<TAB>tau".
    Truss {
        /// Print "tau<TAB>edges" instead.
        #[arg(long, conflicts_with = "keep")]
        histogram: bool,
        /// Print the maximal K-truss as an edge list instead.
        #[arg(long, value_name = "K")]
        keep: Option<u32>,
    },
    /// Trussness below --k-trunc; other edges are reported as lower bounds.
    TruncatedTruss(WitnessArgs),
    /// Connected components of the edges with tau >= k.
    Components {
        #[arg(long)]
        k: u32,
    },
    /// Emit an extremal construction as an edge list, preceded by its receipt.
    Generate {
        /// Omit the "# key: value" receipt lines.
        #[arg(long, global = true)]
        no_receipt: bool,
        #[command(subcommand)]
        generator: Generator,
    },
    /// Check a graph and exit with status 1 if the check fails.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Time the peeler and the witness decomposition on files or a family.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct WitnessArgs {
    #[arg(long)]
    pub k_trunc: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random sets L [default: ceil(10 k_trunc ln n)].
    #[arg(long)]
    pub sets: Option<usize>,
    /// Inclusion probability q [default: 1/k_trunc].
    #[arg(long)]
    pub prob: Option<f64>,
    #[arg(long, value_enum, default_value_t = Init::Direct)]
    pub init: Init,
    /// Heavy/light exponent for --init matrix [default: max(log_m k_trunc, 2/3)].
    #[arg(long)]
    pub b: Option<f64>,
    /// Byte budget for the witness table.
    #[arg(long, env = "TRUSS_MEM_CAP", default_value_t = truss_core::witness::DEFAULT_MEM_CAP)]
    pub mem_cap: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Init {
    Direct,
    Matrix,
}

#[derive(Subcommand, Debug)]
pub enum Generator {
    /// s copies of K_{k+2} glued in a chain.
    CliqueChain {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
    },
    /// Clique chain on exactly n vertices.
    ChainRemainder {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Cycle C_{n-2} plus two apexes.
    #[command(name = "critical-2truss")]
    Critical2truss {
        #[arg(long)]
        n: u32,
    },
    /// Suspend the input k-truss with 1 or 2 new apexes.
    Suspend {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        added: u32,
    },
    /// K_{k-1} glued into every face of a torus embedding with two t-faces.
    TorusCritical {
        #[arg(long)]
        squares: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: u32,
    },
    /// Critical k-truss on n vertices.
    Critical {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Every edge lies in at least k triangles and no vertex is isolated.
    Truss {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// The graph is a k-truss with no proper k-truss inside.
    Critical {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Degree, size, clustering, triangle and trussness bounds.
    Bounds {
        /// Only report per-component checks at this k.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Edge-list files to measure.
    pub files: Vec<PathBuf>,
    /// Built-in family to measure instead of files.
    #[arg(long, value_enum, conflicts_with = "files")]
    pub family: Option<Family>,
    /// Cutoff for the witness decomposition.
    #[arg(long, default_value_t = 5)]
    pub k_trunc: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Skip the witness decomposition.
    #[arg(long)]
    pub no_witness: bool,
    #[arg(long, env = "TRUSS_MEM_CAP", default_value_t = truss_core::witness::DEFAULT_MEM_CAP)]
    pub mem_cap: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// K_n for n in 50, 100, 200.
    Complete,
    /// Cycles and stars on 50..200 vertices.
    TriangleFree,
    /// G(200, 0.1), five seeds.
    Gnp,
    /// Clique chains k = 4, s in 10, 20, 40.
    Chain,
}
