mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superbider_core::engine::{ParityChoice, Symmetry};
use superbider_core::{HalfInt, Scalar};

#[derive(Parser, Debug)]
#[command(
    name = "superbider",
    version,
    about = "Exact centroids, super-biderivations and commutative post-Lie products on truncation windows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog algebras and modules.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Super-Jacobi and super-skew checks on a window; with --module also the module axiom.
    Check(CheckArgs),
    /// Centroid of a module.
    Centroid(MapArgs),
    /// Homogeneous super-biderivations into a module.
    Bider(BiderArgs),
    /// Commutative post-Lie products.
    Postlie(PostlieArgs),
    /// Run the built-in classification cases.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct WindowArgs {
    /// Window bound on generator indices (integer or p/2).
    #[arg(short = 'N', value_name = "N")]
    pub n: Option<HalfInt>,
    /// Bound on the degree shift.
    #[arg(short = 'K', value_name = "K")]
    pub k: Option<HalfInt>,
    /// Interior bound; defaults to N - 2K.
    #[arg(long = "nint", value_name = "N_INT")]
    pub n_int: Option<HalfInt>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Record elapsed_ms in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    #[arg(long)]
    pub algebra: String,
    /// Catalog module over the algebra.
    #[arg(long, conflicts_with = "adjoint")]
    pub module: Option<String>,
    /// Use the adjoint module (the default without --module).
    #[arg(long)]
    pub adjoint: bool,
    /// Catalog parameter, e.g. b=-1/2. Repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, Scalar)>,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, Scalar)>,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    pub parity: ParityArg,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BiderArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, value_enum, default_value_t = SymmetryArg::None)]
    pub symmetry: SymmetryArg,
}

#[derive(Args, Debug, Clone)]
pub struct PostlieArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, Scalar)>,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Run only this case.
    #[arg(long)]
    pub case: Option<String>,
    /// Keep only samples at this parameter value (b only).
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, Scalar)>,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
    Both,
}

impl From<ParityArg> for ParityChoice {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => ParityChoice::Even,
            ParityArg::Odd => ParityChoice::Odd,
            ParityArg::Both => ParityChoice::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    Symmetric,
    Skew,
    None,
}

impl From<SymmetryArg> for Symmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Symmetric => Symmetry::Symmetric,
            SymmetryArg::Skew => Symmetry::Skew,
            SymmetryArg::None => Symmetry::Unrestricted,
        }
    }
}

fn parse_param(s: &str) -> Result<(String, Scalar), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value: Scalar = value.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((name.trim().to_string(), value))
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("SUPERBIDER_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("SUPERBIDER_THREADS must be a positive integer, got `{v}`"))?;
        anyhow::ensure!(n > 0, "SUPERBIDER_THREADS must be a positive integer, got `{v}`");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::List { json } => commands::list(*json),
        Command::Check(a) => commands::check(a, &echo),
        Command::Centroid(a) => commands::centroid(a, &echo),
        Command::Bider(a) => commands::bider(a, &echo),
        Command::Postlie(a) => commands::postlie(a, &echo),
        Command::VerifyPaper(a) => commands::verify_paper(a, &echo),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
