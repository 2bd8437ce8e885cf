//! Command-line front end: descriptor extraction, kNN classification,
//! k-means clustering, PCA/MDS coordinates, and curve evaluation.
//!
//! Exit codes: 0 success, 1 data error (unreadable or malformed inputs),
//! 2 usage error (clap handles those).

mod commands;
mod selftest;

use clap::{Parser, Subcommand, ValueEnum};
use lbpkit::learning::DistanceKind;
use lbpkit::lbp::MappingKind;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "lbpkit", version, about = "Local binary pattern descriptors and the classical learning layer around them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract histogram descriptors from PGM/PPM images (one CSV row per image).
    Describe(DescribeArgs),
    /// Extract a three-plane spatiotemporal descriptor from a directory of PGM frames.
    DescribeVideo(DescribeVideoArgs),
    /// Classify query vectors against a labeled training CSV with kNN.
    Classify(ClassifyArgs),
    /// Cluster feature vectors with seeded k-means.
    Cluster(ClusterArgs),
    /// Compute visualization coordinates with PCA or classical MDS.
    Reduce(ReduceArgs),
    /// Compute a ROC or precision-recall curve from a score CSV.
    Eval(EvalArgs),
    /// Run the embedded golden-value suite and report pass/fail.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum MappingArg {
    #[value(name = "full")]
    Full,
    #[value(name = "u2")]
    U2,
    #[value(name = "ri")]
    Ri,
    #[value(name = "riu2")]
    Riu2,
}

impl From<MappingArg> for MappingKind {
    fn from(arg: MappingArg) -> Self {
        match arg {
            MappingArg::Full => MappingKind::Full,
            MappingArg::U2 => MappingKind::Uniform,
            MappingArg::Ri => MappingKind::RotationInvariant,
            MappingArg::Riu2 => MappingKind::UniformRotationInvariant,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceArg {
    #[value(name = "chi-square")]
    ChiSquare,
    #[value(name = "l1")]
    L1,
    #[value(name = "l2")]
    L2,
    #[value(name = "intersection")]
    Intersection,
}

impl From<DistanceArg> for DistanceKind {
    fn from(arg: DistanceArg) -> Self {
        match arg {
            DistanceArg::ChiSquare => DistanceKind::ChiSquare,
            DistanceArg::L1 => DistanceKind::L1,
            DistanceArg::L2 => DistanceKind::L2,
            DistanceArg::Intersection => DistanceKind::HistogramIntersection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pca,
    Mds,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveArg {
    Roc,
    Pr,
}

#[derive(clap::Args)]
struct DescribeArgs {
    /// Input images (PGM P2/P5 or PPM P6, max value 255).
    #[arg(required = true)]
    images: Vec<PathBuf>,
    /// Samples per ring.
    #[arg(long, default_value_t = 8)]
    p: u32,
    /// Ring radius in pixels.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Code-to-bin mapping.
    #[arg(long, value_enum, default_value_t = MappingArg::U2)]
    mapping: MappingArg,
    /// Window grid as GXxGY, e.g. 4x4.
    #[arg(long, value_parser = parse_grid, default_value = "1x1")]
    grid: (usize, usize),
    /// Normalize each window histogram to sum 1.
    #[arg(long)]
    normalize: bool,
    /// Use the fixed 3x3 operator and report the mean contrast per image.
    #[arg(long, conflicts_with_all = ["p", "r", "median_window"])]
    basic: bool,
    /// Replace point samples by medians of WxW windows (odd W).
    #[arg(long, value_name = "W", value_parser = parse_odd_window)]
    median_window: Option<usize>,
    /// Output file (defaults to stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct DescribeVideoArgs {
    /// Directory of PGM frames, ordered by file name.
    frames: PathBuf,
    /// Samples per ring, applied to all three planes.
    #[arg(long, default_value_t = 8)]
    p: u32,
    /// Ring radius, applied to all three planes.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, value_enum, default_value_t = MappingArg::U2)]
    mapping: MappingArg,
    #[arg(long)]
    normalize: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ClassifyArgs {
    /// Labeled training vectors (dataset CSV).
    #[arg(long)]
    train: PathBuf,
    /// Query vectors (dataset CSV; the label column may be empty).
    #[arg(long)]
    query: PathBuf,
    /// Neighbors to vote.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value_t = DistanceArg::ChiSquare)]
    distance: DistanceArg,
    /// Treat query labels as ground truth and append a confusion summary.
    #[arg(long)]
    labels: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ClusterArgs {
    /// Feature vectors (dataset CSV; labels are ignored).
    features: PathBuf,
    /// Number of clusters.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    max_iter: u64,
    /// Assignments CSV (defaults to stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Model JSON with centroids, assignments, iterations, and SSE
    /// (defaults to stdout, after the assignments).
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ReduceArgs {
    /// Feature vectors (dataset CSV; labels pass through to the output).
    features: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Output dimensionality.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    dims: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct EvalArgs {
    /// Headerless score,label rows with labels in {0,1}.
    scores: PathBuf,
    #[arg(long, value_enum)]
    curve: CurveArg,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (gx, gy) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("{s:?} is not a grid; expected GXxGY, e.g. 4x4"))?;
    let gx: usize = gx.parse().map_err(|_| format!("bad window count {gx:?}"))?;
    let gy: usize = gy.parse().map_err(|_| format!("bad window count {gy:?}"))?;
    if gx == 0 || gy == 0 {
        return Err("window counts must be positive".into());
    }
    Ok((gx, gy))
}

fn parse_odd_window(s: &str) -> Result<usize, String> {
    let w: usize = s.parse().map_err(|_| format!("bad window side {s:?}"))?;
    if w == 0 || w % 2 == 0 {
        return Err(format!("window side {w} must be odd"));
    }
    Ok(w)
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Describe(args) => commands::describe(args),
        Command::DescribeVideo(args) => commands::describe_video(args),
        Command::Classify(args) => commands::classify(args),
        Command::Cluster(args) => commands::cluster(args),
        Command::Reduce(args) => commands::reduce(args),
        Command::Eval(args) => commands::eval(args),
        Command::Selftest => selftest::run(),
    };
    if let Err(message) = result {
        eprintln!("error: {message}");
        std::process::exit(1);
    }
}
