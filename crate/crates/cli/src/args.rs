use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Enumerate and verify geodetic graphs homeomorphic to a geodetic base.
#[derive(Parser, Debug)]
#[command(name = "geodetic", version, about)]
pub struct Cli {
    /// Worker threads (default: available parallelism). Output never depends on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Where to write the run manifest (default: inside the output directory
    /// for `enum` and `orbits`, otherwise standard error).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a base graph, a subdivision of it, or a K_n^i graph as JSON.
    Build(BuildArgs),
    /// Write the geodetic system of a base graph as JSON.
    System(SystemArgs),
    /// Enumerate the geodetic homeomorphs of a base for one diameter.
    Enum(EnumArgs),
    /// Test a graph for geodeticity.
    Verify(VerifyArgs),
    /// Reduce enumerated solutions to isomorphism classes.
    Orbits(OrbitsArgs),
    /// Closed-form counts.
    Count(CountArgs),
    /// Write a graph as DOT.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// c5, k4, kN, petersen, hoffman_singleton, or moore:K:D.
    #[arg(long)]
    pub base: String,
    /// Comma-separated segment lengths in sorted edge order.
    #[arg(long, value_delimiter = ',', conflicts_with = "plesnik")]
    pub lengths: Option<Vec<u32>>,
    /// Comma-separated node numbers of a K_n^i graph (complete bases only).
    #[arg(long, value_delimiter = ',')]
    pub plesnik: Option<Vec<u32>>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    #[arg(long)]
    pub base: String,
    /// BFS root of the spanning tree behind the odd rows.
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    /// k4, c5 or petersen.
    #[arg(long)]
    pub base: String,
    /// Target diameter D.
    #[arg(long)]
    pub diameter: u32,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Output directory (default: solutions to standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for one DOT file and one graph JSON file per solution.
    #[arg(long)]
    pub dot_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Allow more right-hand sides than the default cap.
    #[arg(long)]
    pub max_tuples_override: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub base: String,
    /// Enumerate at this diameter.
    #[arg(long, required_unless_present = "solutions")]
    pub diameter: Option<u32>,
    /// Read length vectors from a solutions CSV written by `enum`.
    #[arg(long, conflicts_with = "diameter")]
    pub solutions: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub max_tuples_override: bool,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Largest number of parts (partitions).
    #[arg(long, default_value_t = 10)]
    pub max_k: usize,
    /// Largest integer (partitions).
    #[arg(long, default_value_t = 15)]
    pub max_i: usize,
    /// Diameter or inclusive range `a..b` (k4, petersen-conjecture).
    #[arg(long, default_value = "1..8")]
    pub d: String,
    /// Node count (kn).
    #[arg(long, default_value_t = 5)]
    pub n: u64,
    /// Plesnik total or inclusive range `a..b` (kn).
    #[arg(long, default_value = "0..5")]
    pub i: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    /// Graph JSON file.
    #[arg(long, conflicts_with = "base", required_unless_present = "base")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub base: Option<String>,
    /// Segment lengths applied to `--base`.
    #[arg(long, value_delimiter = ',', requires = "base")]
    pub lengths: Option<Vec<u32>>,
    /// Graph name in the DOT header.
    #[arg(long, default_value = "G")]
    pub name: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Unique,
    EvenCircuit,
    Neighborhood,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Partitions,
    K4,
    Kn,
    PetersenConjecture,
}
