mod commands;
mod document;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::emit_failure;

#[derive(Parser)]
#[command(
    name = "linkform",
    version,
    about = "Linking forms, linking complexes and Z/k-bordism"
)]
struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form, order and nonsingularity of a form.
    Classify { form: PathBuf },
    /// k-rank or stable k-rank.
    Rank(RankArgs),
    /// Build L(M)_k and run checks on it.
    Complex(ComplexArgs),
    /// Bordism groups in degrees 0 and 1, or the class of a <k,k>-manifold.
    Bordism(BordismArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write the document of W_k^g, optionally in a scrambled basis.
    Standard(StandardArgs),
}

#[derive(Args)]
pub struct RankArgs {
    pub form: PathBuf,
    #[arg(short, long)]
    pub k: u64,
    #[arg(long)]
    pub stable: bool,
    #[arg(long, default_value_t = 2)]
    pub gmax: usize,
    /// Search nodes allowed.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Exit with status 4 unless the value is certified.
    #[arg(long)]
    pub require_certified: bool,
}

#[derive(Args)]
pub struct ComplexArgs {
    pub form: PathBuf,
    #[arg(short, long)]
    pub k: u64,
    /// Materialize only up to this many vertices; larger complexes are served lazily.
    #[arg(long, default_value_t = 20_000)]
    pub max_vertices: u64,
    #[arg(long)]
    pub export_dot: Option<PathBuf>,
    #[arg(long)]
    pub export_json: Option<PathBuf>,
    #[arg(long)]
    pub homology_max_dim: Option<usize>,
    /// Check the link of this many sampled vertices.
    #[arg(long)]
    pub verify_links: Option<usize>,
    /// Find a short path between two vertex indices.
    #[arg(long, num_args = 2, value_names = ["F", "G"])]
    pub path: Option<Vec<u64>>,
    #[arg(long, default_value_t = linkform::verify::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args)]
pub struct BordismArgs {
    #[arg(long, conflicts_with = "manifold")]
    pub degree: Option<i64>,
    #[arg(short, long)]
    pub k: Option<u64>,
    #[arg(short, long)]
    pub l: Option<u64>,
    /// JSON description of a closed 1-dimensional <k,k>-manifold.
    #[arg(long)]
    pub manifold: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = linkform::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Search nodes allowed in rank computations.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args)]
pub struct StandardArgs {
    #[arg(short, long)]
    pub k: u64,
    #[arg(short, long, default_value_t = 1)]
    pub g: usize,
    /// Extra summands W_n, repeatable.
    #[arg(long = "plus")]
    pub plus: Vec<u64>,
    /// Scramble the basis with this seed.
    #[arg(long)]
    pub scramble: Option<u64>,
    #[arg(long)]
    pub name: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = match &cli.command {
        Command::Classify { form } => ("classify", commands::classify(form)),
        Command::Rank(a) => ("rank", commands::rank(a)),
        Command::Complex(a) => ("complex", commands::complex(a)),
        Command::Bordism(a) => ("bordism", commands::bordism(a)),
        Command::Verify(a) => ("verify", commands::verify(a)),
        Command::Standard(a) => ("standard", commands::standard(a)),
    };
    match result {
        Ok(report) => {
            report.emit(cli.json);
            ExitCode::from(report.exit_code)
        }
        Err(f) => {
            emit_failure(name, &f, cli.json);
            ExitCode::from(f.code)
        }
    }
}
