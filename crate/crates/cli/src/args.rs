use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "mixup",
    version,
    about = "Mixup barcodes of filtration inclusions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mixup barcode of A ↪ A ∪ B, or of an explicit filtered pair.
    Mixup(MixupArgs),
    /// Class-by-class mean mixup percentages of a labelled cloud.
    Pairwise(PairwiseArgs),
    /// Mixup profile of a series of labelled clouds.
    Profile(ProfileArgs),
    /// k-medoids subsample of a cloud.
    Subsample(SubsampleArgs),
    /// Cross-check the reduction against the rank-function oracle.
    Verify(VerifyArgs),
    /// Render a JSON result of `mixup`, `pairwise` or `profile` as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Euclidean,
    Sqeuclidean,
    /// The file holds a distance matrix.
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AggregateArg {
    Total,
    Mean,
}

#[derive(Debug, Clone, Args)]
pub struct PairInput {
    /// Point cloud A (or distance matrix with `--metric matrix`).
    #[arg(long)]
    pub a: Option<PathBuf>,
    /// Point cloud B.
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Explicit filtered pair, one cell per line: `id dim value L|K faces...`.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub filtration: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    pub metric: MetricArg,
    /// With `--metric matrix`: points `0..N` form A, the rest form B.
    #[arg(long)]
    pub split: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Filtration {
    /// Vietoris–Rips threshold.
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub kmax: usize,
    /// Homology degrees, comma separated; defaults to 0..=kmax.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Vec<usize>,
    /// Value substituted for infinite deaths in statistics.
    #[arg(long)]
    pub clamp: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct Sampling {
    /// k-medoids size for A in degrees ≥ 1 (0 keeps all points).
    #[arg(long, default_value_t = 500)]
    pub subsample_a: usize,
    /// k-medoids size for B in degrees ≥ 1 (0 keeps all points).
    #[arg(long, default_value_t = 100)]
    pub subsample_b: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct MixupArgs {
    #[command(flatten)]
    pub input: PairInput,
    #[command(flatten)]
    pub filtration: Filtration,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PairwiseArgs {
    /// Labelled point cloud; the last column is an integer label.
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    pub metric: MetricArg,
    #[command(flatten)]
    pub filtration: Filtration,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Manifest with one `layer step path` line per labelled cloud; paths
    /// are relative to the manifest.
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    pub metric: MetricArg,
    #[arg(long, value_enum, default_value_t = AggregateArg::Total)]
    pub profile_aggregate: AggregateArg,
    #[command(flatten)]
    pub filtration: Filtration,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SubsampleArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    pub metric: MetricArg,
    /// Treat the last column as a label and subsample per label.
    #[arg(long)]
    pub labeled: bool,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: PairInput,
    #[command(flatten)]
    pub filtration: Filtration,
    /// Check this many random instances instead of an input.
    #[arg(long, conflicts_with_all = ["a", "b", "filtration"])]
    pub random: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// JSON written by `mixup`, `pairwise` or `profile`.
    #[arg(long)]
    pub input: PathBuf,
    /// Degrees to draw; matrices use the first one.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
