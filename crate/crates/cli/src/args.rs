use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Continuous-time quantum walk analysis")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps and grids (1 runs sequentially).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Eigenvalue grouping tolerance (default 1e-9 * max(1, spectral radius)).
    #[arg(long, global = true, env = "QWALK_TOL")]
    pub tol: Option<f64>,
    /// Leave the timing field out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family graph (optionally composed with another graph) as JSON.
    Generate(GenerateArgs),
    /// Eigenvalues, multiplicities and algebraic classes.
    Spectrum(GraphArg),
    /// Eigenvalue support and periodicity of a state.
    Support(SupportArgs),
    /// Perfect state transfer between given states, or a pair-state sweep.
    Ppst(PpstArgs),
    /// Pretty good transfer: obstructions, family predicates and fidelity evidence.
    Pgst(PgstArgs),
    /// Fractional revival between two states at a given time.
    Revival(RevivalArgs),
    /// Grid estimate of the infimum of |U(t)_aa|.
    Sedentary(SedentaryArgs),
    /// Multi-state transfer across isomorphic branches.
    Mstate(MstateArgs),
    /// Verify a branch pair, check the block decomposition and lift transfers.
    BranchVerify(BranchArgs),
    /// Recompute a characterization or worked example.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph JSON file.
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// path, cycle, complete, star, book, cayley or complete-minus-c4s.
    pub family: String,
    /// Size parameter (n, or l for star/book).
    pub size: Option<usize>,
    /// Cayley group orders, e.g. `8,4`.
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<usize>,
    /// Cayley connection set, elements separated by `;`, e.g. `0,1;1,0`.
    #[arg(long)]
    pub connset: Option<String>,
    /// Close the connection set under negation.
    #[arg(long)]
    pub symmetrize: bool,
    /// Removed 4-cycles for complete-minus-c4s, e.g. `0,1,2,3;4,5,6,7`.
    #[arg(long)]
    pub c4s: Option<String>,
    /// Cartesian product with this graph file.
    #[arg(long)]
    pub product: Option<PathBuf>,
    /// Join with this graph file.
    #[arg(long)]
    pub join: Option<PathBuf>,
    /// Corona with this graph file.
    #[arg(long)]
    pub corona: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SupportArgs {
    pub graph: PathBuf,
    /// `a` (vertex), `a,b` (pair) or `a=1,b=-2,...` (coefficients, normalized).
    #[arg(long)]
    pub state: String,
    /// Also test strong cospectrality against this state.
    #[arg(long)]
    pub with: Option<String>,
    /// Support threshold on projection norms.
    #[arg(long, default_value_t = 1e-9)]
    pub support_tol: f64,
}

#[derive(Debug, Args)]
pub struct PpstArgs {
    pub graph: PathBuf,
    /// Source and target pairs `a,b,c,d`.
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    /// Certify every pair of pair states.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Args)]
pub struct PgstArgs {
    pub graph: PathBuf,
    /// Source and target pairs `a,b,c,d`.
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, default_value_t = 1e4)]
    pub horizon: f64,
    #[arg(long, default_value_t = 0.999)]
    pub threshold: f64,
    /// Stop scanning once the threshold is reached.
    #[arg(long)]
    pub stop_early: bool,
    /// JSON list of automorphisms (permutations of vertex ids).
    #[arg(long)]
    pub automorphisms: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RevivalArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub target: String,
    /// Time, e.g. `2*pi/sqrt(5)` or `1.25`.
    #[arg(long)]
    pub time: String,
    #[arg(long, default_value_t = 1e-9)]
    pub residual_tol: f64,
}

#[derive(Debug, Args)]
pub struct SedentaryArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub vertex: String,
    #[arg(long, default_value_t = 1e3)]
    pub horizon: f64,
}

#[derive(Debug, Args)]
pub struct MstateArgs {
    pub graph: PathBuf,
    /// Branch pair JSON file (one object or a list), all sharing copy 1.
    #[arg(long)]
    pub branches: PathBuf,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Coefficients l_1..l_m (normalized; must sum to zero).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct BranchArgs {
    pub graph: PathBuf,
    pub branch: PathBuf,
    /// Times for the block check, e.g. `0.3,1,pi/2`.
    #[arg(long, value_delimiter = ',')]
    pub times: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// paths, cycles, figure1, figure2, p6-edges, c10-edges, book, revival or figure4.
    pub id: String,
    /// Largest n for the path and cycle tables.
    #[arg(long)]
    pub max: Option<usize>,
    /// Horizon for fidelity evidence.
    #[arg(long, default_value_t = 1e4)]
    pub horizon: f64,
}
