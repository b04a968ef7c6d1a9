use clap::{Args, Parser, Subcommand, ValueEnum};

use pmspace::Rational;

#[derive(Parser, Debug)]
#[command(name = "pm", version, about = "Exact partial metric space toolkit")]
pub struct Cli {
    /// `json` writes one JSON document to stdout and a summary to stderr;
    /// `text` writes the summary to stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Seed for every randomized step.
    #[arg(long, env = "PM_SEED", default_value_t = 0, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the partial metric axioms on a finite space.
    Axioms(SpaceArg),
    /// Sequence analyzers.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Separation, diagonal, order, covers and nets.
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// Condition checks, iteration and enumeration of self-maps.
    #[command(subcommand)]
    Fixedpoint(FixedpointCmd),
    /// Built-in example spaces and their facts.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Random partial metric spaces.
    #[command(subcommand)]
    Random(RandomCmd),
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArg {
    /// Catalog id (e.g. `ex5.4`) or path to a space JSON file.
    #[arg(long)]
    pub space: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqMode {
    Converges,
    Proper,
    Induced,
    Cauchy,
    CauchyInduced,
    LimitSet,
    Compact,
}

#[derive(Subcommand, Debug)]
pub enum AnalyzeCmd {
    /// Analyze one sequence.
    Seq(SeqArgs),
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    /// Sequence JSON, inline (starting with `{`) or a file path.
    #[arg(long, conflicts_with = "generator")]
    pub seq: Option<String>,
    /// Catalog generator id (e.g. `ex4.8.n`).
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long, value_enum, default_value_t = SeqMode::Converges)]
    pub mode: SeqMode,
    /// Candidate limit for the convergence modes.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, default_value = "1/1000000")]
    pub tol: Rational,
    /// Number of terms examined (defaults to the sequence's own horizon).
    #[arg(long)]
    pub horizon: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum TopologyCmd {
    Separation(SpaceArg),
    Gdelta(SpaceArg),
    Order(SpaceArg),
    Maximal(SpaceArg),
    Cover(CoverArgs),
    Net(NetArgs),
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    /// Comma-separated ball centers.
    #[arg(long, value_delimiter = ',', required = true)]
    pub centers: Vec<String>,
    #[arg(long)]
    pub eps: Rational,
}

#[derive(Args, Debug)]
pub struct NetArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    #[arg(long)]
    pub eps: Rational,
    /// Restrict to these points before building the net.
    #[arg(long, value_delimiter = ',')]
    pub restrict: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CondKind {
    Max,
    Min,
    Contraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairsKind {
    All,
    Sample,
}

#[derive(Args, Debug)]
pub struct CondParams {
    #[arg(long, default_value = "1/2")]
    pub alpha: Rational,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum FixedpointCmd {
    /// Check one condition for one map.
    Check(CheckArgs),
    /// Iterate a map from a starting point.
    Iterate(IterateArgs),
    /// All self-maps of a space with at most 5 points meeting the conditions.
    Enumerate(EnumerateArgs),
    /// Solve on the bottom set (with `--map`) or list the constant maps that
    /// meet the max-condition (without).
    Bottom(BottomArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    /// Catalog map, `id`, `const.<point>`, or a JSON file `{"from": "to", ...}`.
    #[arg(long)]
    pub map: String,
    #[arg(long, value_enum)]
    pub cond: CondKind,
    #[command(flatten)]
    pub params: CondParams,
    /// `all`: every pair of the finite point set; `sample`: the canonical
    /// sample plus `--extra` seeded points.
    #[arg(long, value_enum, default_value_t = PairsKind::All)]
    pub pairs: PairsKind,
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub from: String,
    #[arg(long, default_value = "1/1000000")]
    pub tol: Rational,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    /// Repeat to require several conditions at once.
    #[arg(long, value_enum, required = true)]
    pub cond: Vec<CondKind>,
    #[command(flatten)]
    pub params: CondParams,
}

#[derive(Args, Debug)]
pub struct BottomArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    #[arg(long)]
    pub map: Option<String>,
    /// α grid; the solver uses the first value.
    #[arg(long, value_delimiter = ',', default_value = "0/1,1/2,3/4")]
    pub alpha: Vec<Rational>,
    #[arg(long, requires = "map")]
    pub from: Option<String>,
    #[arg(long, default_value = "1/1000000")]
    pub tol: Rational,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    /// Canonical sample of a catalog space as space JSON.
    Export(SpaceArg),
    /// Run the catalog facts.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "space")]
    pub all: bool,
    /// Limit to these catalog entries.
    #[arg(long, value_delimiter = ',')]
    pub space: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
pub enum RandomCmd {
    Generate(GenerateArgs),
    /// Check structural invariants on a run of random spaces.
    PropertyRun(PropertyArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Zero weights, producing a metric space.
    #[arg(long)]
    pub metric: bool,
}

#[derive(Args, Debug)]
pub struct PropertyArgs {
    #[arg(long, default_value_t = 200)]
    pub count: u64,
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
}
