//! Argument grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use dataset::{Era, PeriodScheme};

use crate::render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "euroleague-stats",
    version,
    about = "Statistical analyses of six decades of European basketball finals"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub globals: Globals,
}

#[derive(Debug, clap::Args)]
pub struct Globals {
    /// Directory holding the historical CSV tables.
    #[arg(long, global = true, default_value = "data", value_name = "DIR")]
    pub data_dir: PathBuf,

    /// Report format written to standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Also write an SVG line chart of the report's headline series.
    #[arg(long, global = true, value_name = "FILE")]
    pub plot: Option<PathBuf>,

    /// Seed for the Monte-Carlo simulation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Monte-Carlo iteration count.
    #[arg(long, global = true, default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub iterations: u64,

    /// Free-throw weight in the possession estimate.
    #[arg(long, global = true, default_value_t = dataset::DEFAULT_FREE_THROW_WEIGHT)]
    pub lambda: f64,

    /// Moving-average window, in seasons.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub window: Option<u64>,

    /// Era filter: "full" or "modern".
    #[arg(long, global = true, value_parser = parse_era)]
    pub era: Option<Era>,

    /// Season closing the old era, as an ordinal (1998) or label (1997-98).
    #[arg(long, global = true, value_parser = parse_break_season, value_name = "SEASON")]
    pub break_season: Option<i32>,

    /// Comma-separated period buckets, e.g. 1958-1970,1971-1980,...
    #[arg(long, global = true, value_parser = parse_period_scheme, value_name = "PERIODS")]
    pub period_scheme: Option<PeriodScheme>,

    /// Decimal places for real numbers in reports.
    #[arg(long, global = true, default_value_t = 4,
          value_parser = clap::value_parser!(u32).range(1..=12))]
    pub precision: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Titles and appearances by region and period, with Friedman tests.
    Dominance,
    /// Champion and opponent scoring averages by period.
    ChampionDominance,
    /// Top-scorer share of each finals side, with structural-break tests.
    Pluralism,
    /// Possessions per final before and after the break season.
    Pace,
    /// Correlation between a top scorer's output and the team's finish.
    ScorerCorrelation,
    /// Expected versus observed titles under equal final-four odds.
    FinalFourOdds,
    /// Run one statistical test on columns of a CSV file.
    #[command(subcommand)]
    Test(TestCommand),
}

#[derive(Debug, Subcommand)]
pub enum TestCommand {
    /// Friedman rank test; rows are blocks, listed columns are treatments.
    Friedman(ColumnsArgs),
    /// Paired signed-rank test on two columns.
    Wilcoxon(PairArgs),
    /// Rank-sum comparison of two independent columns.
    MannWhitney(PairArgs),
    /// Runs test of sign randomness around a threshold.
    Runs(RunsArgs),
    /// Product-moment correlation of two columns.
    Pearson(PairArgs),
    /// Rank correlation of two columns.
    Spearman(PairArgs),
    /// Two-sided exact binomial test.
    Binomial(BinomialArgs),
    /// Monte-Carlo multinomial goodness of fit over final-four rows.
    Multinomial(ColumnsArgs),
    /// Structural-break unit-root test on one column.
    ZivotAndrews(ZivotAndrewsArgs),
}

#[derive(Debug, clap::Args)]
pub struct ColumnsArgs {
    /// CSV file to read.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Comma-separated column names. For `multinomial`: exactly four
    /// participant columns, the winner first.
    #[arg(long, value_delimiter = ',', required = true)]
    pub columns: Vec<String>,
}

#[derive(Debug, clap::Args)]
pub struct PairArgs {
    /// CSV file to read.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// First column name.
    #[arg(long)]
    pub x: String,
    /// Second column name.
    #[arg(long)]
    pub y: String,
}

#[derive(Debug, clap::Args)]
pub struct RunsArgs {
    /// CSV file to read.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Column holding the sequence.
    #[arg(long)]
    pub column: String,
    /// Values above count as one sign, values below as the other.
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
}

#[derive(Debug, clap::Args)]
pub struct BinomialArgs {
    /// Observed success count.
    #[arg(long)]
    pub successes: u64,
    /// Number of trials.
    #[arg(long)]
    pub trials: u64,
    /// Null success probability.
    #[arg(long, default_value_t = 0.25)]
    pub prob: f64,
}

#[derive(Debug, clap::Args)]
pub struct ZivotAndrewsArgs {
    /// CSV file to read.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Column holding the series, in time order.
    #[arg(long)]
    pub column: String,
    /// Column holding per-observation labels.
    #[arg(long)]
    pub label_column: Option<String>,
    /// Lagged differences in the test regression.
    #[arg(long, default_value_t = 5)]
    pub lags: usize,
    /// Fraction trimmed from each end of the break-candidate range.
    #[arg(long, default_value_t = 0.15)]
    pub trim: f64,
}

fn parse_era(text: &str) -> Result<Era, String> {
    Era::parse(text).ok_or_else(|| format!("expected 'full' or 'modern', got '{text}'"))
}

fn parse_break_season(text: &str) -> Result<i32, String> {
    if let Ok(ordinal) = text.parse::<i32>() {
        return Ok(ordinal);
    }
    let err = || format!("expected a season like 1998 or 1997-98, got '{text}'");
    let (first, second) = text.split_once('-').ok_or_else(err)?;
    let first: i32 = first.trim().parse().map_err(|_| err())?;
    let second: i32 = second.trim().parse().map_err(|_| err())?;
    let ordinal = first + 1;
    if ordinal.rem_euclid(100) != second {
        return Err(err());
    }
    Ok(ordinal)
}

fn parse_period_scheme(text: &str) -> Result<PeriodScheme, String> {
    PeriodScheme::parse(text).map_err(|err| err.to_string())
}
