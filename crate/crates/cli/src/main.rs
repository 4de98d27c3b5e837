//! `fatpoints`: bounds, Betti tables and oracle checks for fat point schemes.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fatpoints",
    version,
    about = "Hilbert function bounds for fat points in the projective plane"
)]
struct Cli {
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated scheme as JSON.
    Gen(GenArgs),
    /// Reduce a scheme along lines and print the trace.
    Reduce(ReduceArgs),
    /// Print the lower and upper bound sequences f and F.
    Bounds(BoundsArgs),
    /// Decide whether a vector is GMS.
    Gms(VectorArgs),
    /// Print the table of generator and syzygy count intervals.
    Betti(BoundsArgs),
    /// Print oracle Hilbert function values.
    Hilbert(HilbertArgs),
    /// Compare f, the oracle and F degree by degree.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Star,
    Grid,
    NongreedyGrid,
    Linear,
    LineCount,
    Intersections,
    ProjectivePlane,
    DualHesse,
    SixPoint,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: FamilyName,
    /// Number of lines.
    #[arg(long)]
    pub s: Option<usize>,
    /// Multiplicity factor; a list for line-count configurations.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u64>,
    /// Order of the finite plane.
    #[arg(long)]
    pub q: Option<u64>,
    /// Realize coordinates over F_p.
    #[arg(long)]
    pub p: Option<u64>,
    /// Point multiplicities per line of a line-count configuration.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<u64>,
    /// Point counts per line of a linear configuration.
    #[arg(long, value_delimiter = ',')]
    pub counts: Vec<u64>,
    /// Line multiplicities of an intersections family.
    #[arg(long, value_delimiter = ',')]
    pub e: Vec<u32>,
    /// Integer line coefficients `a b c`, lines separated by `;`.
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Use the reduced intersections scheme.
    #[arg(long)]
    pub reduced: bool,
    /// Grid rows.
    #[arg(long)]
    pub rows: Option<usize>,
    /// Grid columns.
    #[arg(long)]
    pub cols: Option<usize>,
    /// Double grid points `i:j` (column, row), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub doubles: Vec<String>,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Scheme JSON file; `-` reads standard input.
    #[arg(long)]
    pub scheme: PathBuf,
    /// Lines to reduce along, in order.
    #[arg(long, value_delimiter = ',', conflicts_with = "greedy")]
    pub lines: Vec<String>,
    /// Choose lines greedily by intersection degree.
    #[arg(long)]
    pub greedy: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub source: SchemeArgs,
}

#[derive(Debug, Args)]
pub struct VectorArgs {
    /// Comma-separated naturals.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub vector: Vec<String>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Comma-separated reduction vector.
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present = "scheme",
        conflicts_with = "scheme",
        allow_hyphen_values = true
    )]
    pub vector: Option<Vec<String>>,
    /// Scheme JSON file; `-` reads standard input.
    #[arg(long)]
    pub scheme: Option<PathBuf>,
    /// Lines to reduce the scheme along, in order.
    #[arg(
        long,
        value_delimiter = ',',
        requires = "scheme",
        conflicts_with = "greedy"
    )]
    pub lines: Vec<String>,
    /// Choose lines greedily by intersection degree.
    #[arg(long, requires = "scheme")]
    pub greedy: bool,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    /// Scheme JSON file; `-` reads standard input.
    #[arg(long)]
    pub scheme: PathBuf,
    /// Last degree to print; defaults to the regularity index, at most 64.
    #[arg(long)]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SchemeArgs,
    /// Last degree to check; defaults to the regularity index, at most 64.
    #[arg(long)]
    pub max_degree: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Reduce(a) => commands::reduce(&a.source, cli.json),
        Command::Bounds(a) => commands::bounds(a, cli.json),
        Command::Gms(a) => commands::gms(a, cli.json),
        Command::Betti(a) => commands::betti(a, cli.json),
        Command::Hilbert(a) => commands::hilbert(a, cli.json),
        Command::Check(a) => commands::check(&a.source, a.max_degree, cli.json),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            for note in &out.notes {
                eprintln!("{note}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
