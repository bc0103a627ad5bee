mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use blockforge_core::{BallMode, Budgets};

#[derive(Parser, Debug)]
#[command(name = "blockforge", version, about = "Strong blocking sets from expanders, with exhaustive verification")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sharded enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a point supply and measure its general-position parameters.
    Supply(SupplyArgs),
    /// Produce a graph file.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Build a blocking set from a graph and a point supply.
    Construct(ConstructArgs),
    /// Check that a point set is a strong s-blocking set.
    Verify(VerifyArgs),
    /// Check s-minimality of a linear code.
    Mincheck(MincheckArgs),
    /// Convert between point sets and generator matrices.
    Convert(ConvertArgs),
    /// Bound the second adjacency eigenvalue of a regular graph.
    Spectra(SpectraArgs),
    /// Smallest strong s-blocking set of PG(k-1, q) by branch and bound.
    Oracle(OracleArgs),
    /// Time construction and verification on complete-graph cherry instances.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Field as `p` or `p,m` (order p^m).
    #[arg(long)]
    pub field: String,
    /// Modulus coefficients c_0,...,c_m (lowest degree first); defaults to the least irreducible.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupplyMode {
    Mds,
    Random,
}

#[derive(Args, Debug)]
pub struct SupplyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SupplyMode::Mds)]
    pub mode: SupplyMode,
    /// Required independence: every s+1 points independent.
    #[arg(long)]
    pub s: Option<usize>,
    /// Required span threshold: every t points span.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub max_tries: usize,
    /// Write the supply (and its .json sidecar) here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    /// Lubotzky-Phillips-Sarnak Ramanujan graph X^{p,q}.
    Lps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Read, validate and re-emit a graph file (`-` for stdin).
    FromFile {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// G^u: vertices joined when their distance is at most u.
    Power {
        #[arg(long)]
        graph: std::path::PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// D-blow-up: each vertex becomes D copies, edges become complete bipartite joins.
    Blowup {
        #[arg(long)]
        graph: std::path::PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    Cherry,
    Ballpower,
    Neighborhood,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BallModeArg {
    CommonCenter,
    PairwiseDistance,
}

impl From<BallModeArg> for BallMode {
    fn from(m: BallModeArg) -> Self {
        match m {
            BallModeArg::CommonCenter => BallMode::CommonCenter,
            BallModeArg::PairwiseDistance => BallMode::PairwiseDistance,
        }
    }
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub recipe: Recipe,
    /// Graph file (`-` for stdin).
    #[arg(long)]
    pub graph: std::path::PathBuf,
    /// Supply file (`-` for stdin).
    #[arg(long)]
    pub supply: std::path::PathBuf,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, value_enum, default_value_t = BallModeArg::CommonCenter)]
    pub ball_mode: BallModeArg,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Point-set file; stdin when omitted or `-`.
    #[arg(long)]
    pub set: Option<std::path::PathBuf>,
    #[arg(long)]
    pub s: usize,
    /// Sample this many random subspaces instead of enumerating all of them.
    #[arg(long)]
    pub sampled: Option<u64>,
    /// Keep going after the first counterexample and count all of them.
    #[arg(long)]
    pub exhaust_all: bool,
    /// Also check the affine set {0} ∪ F_q^* B against all codimension-(s+1) cosets.
    #[arg(long)]
    pub affine: bool,
}

#[derive(Args, Debug)]
pub struct MincheckArgs {
    /// Generator matrix file; stdin when omitted or `-`.
    #[arg(long)]
    pub code: Option<std::path::PathBuf>,
    #[arg(long)]
    pub s: usize,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// Point set to turn into a generator matrix.
    #[arg(long, conflicts_with = "code", required_unless_present = "code")]
    pub set: Option<std::path::PathBuf>,
    /// Generator matrix to turn into a point set.
    #[arg(long)]
    pub code: Option<std::path::PathBuf>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectraArgs {
    /// Graph file; stdin when omitted or `-`.
    #[arg(long)]
    pub graph: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also sample this many sets for each expander-mixing inequality.
    #[arg(long)]
    pub mixing: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub k: usize,
    /// Complete-graph sizes to run, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
}

pub struct Context {
    pub seed: u64,
    pub jobs: usize,
    pub format: Format,
    pub budgets: Budgets,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = match Budgets::from_env() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let jobs = cli.jobs as usize;
    // determinism does not depend on the pool size; this only caps parallelism
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    let ctx = Context { seed: cli.seed, jobs, format: cli.format, budgets };
    let outcome = match cli.command {
        Command::Supply(a) => commands::supply(&ctx, a),
        Command::Graph(g) => commands::graph(&ctx, g),
        Command::Construct(a) => commands::construct(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Mincheck(a) => commands::mincheck(&ctx, a),
        Command::Convert(a) => commands::convert(&ctx, a),
        Command::Spectra(a) => commands::spectra(&ctx, a),
        Command::Oracle(a) => commands::oracle(&ctx, a),
        Command::Bench(a) => commands::bench(&ctx, a),
    };
    match outcome {
        Ok(commands::Status::Success) => ExitCode::SUCCESS,
        Ok(commands::Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
