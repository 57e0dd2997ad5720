//! Command-line front end: runs the bundled analyses or individual
//! statistical tests over CSV data and renders CSV/JSON reports and SVG
//! line charts.
//!
//! Every command is deterministic given its flags (including `--seed`),
//! so repeated runs produce byte-identical artifacts.

mod args;
mod chart;
mod input;
mod render;

use std::ffi::OsString;
use std::io::Write;

use analyses::{AnalysisError, AnalysisId, AnalysisReport, NamedSeries};
use clap::Parser;
use dataset::{DatasetError, Era};
use stats_tests::{
    binomial_test_two_sided, friedman_test, mann_whitney, pearson_test, runs_test, spearman_test,
    wilcoxon_signed_rank, zivot_andrews, StatsError,
};

use args::{Args, Command, TestCommand};
pub use chart::{chart_svg, render_line_chart};
pub use render::{render_report, Format, OutputSpec, SCHEMA_VERSION};

/// Failure classes, each mapped to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself was malformed. Exit 2.
    Usage(String),
    /// Input data failed to load or validate. Exit 3.
    Data(String),
    /// An artifact could not be read or written. Exit 3.
    Io(String),
    /// A well-formed request with no defined answer. Exit 4.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Io(_) => 3,
            CliError::Domain(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Io(_) => "io",
            CliError::Domain(_) => "domain",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Io(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<DatasetError> for CliError {
    fn from(err: DatasetError) -> CliError {
        match err {
            DatasetError::Domain(message) => CliError::Domain(message),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<StatsError> for CliError {
    fn from(err: StatsError) -> CliError {
        CliError::Domain(err.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(err: AnalysisError) -> CliError {
        match err {
            AnalysisError::Dataset(inner) => inner.into(),
            AnalysisError::Stats(inner) => inner.into(),
        }
    }
}

/// Parse and execute one invocation, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return 0;
            }
            let text = err.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return 2;
        }
    };
    match execute(&args) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!(
                "error: {}: {}",
                err.kind(),
                err.message().replace('\n', "; ")
            );
            err.exit_code()
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let report = build_report(args)?;
    let spec = OutputSpec::new(
        args.globals.format,
        args.globals.plot.clone(),
        args.globals.precision as usize,
    )?;
    let bytes = render_report(&report, &spec);
    std::io::stdout()
        .write_all(&bytes)
        .map_err(|err| CliError::Io(format!("writing report: {err}")))?;
    if let Some(path) = &spec.plot_path {
        let selection = plot_selection(&report);
        render_line_chart(&selection, report.analysis.as_str(), path)?;
    }
    Ok(())
}

fn build_report(args: &Args) -> Result<AnalysisReport, CliError> {
    let globals = &args.globals;
    let window = globals.window.map(|w| w as usize);
    let scheme = || {
        globals
            .period_scheme
            .clone()
            .unwrap_or_else(dataset::PeriodScheme::default_history)
    };
    let load = || dataset::load_dataset(&globals.data_dir).map_err(CliError::from);
    match &args.command {
        Command::Dominance => Ok(analyses::analyze_dominance(&load()?, &scheme())?),
        Command::ChampionDominance => {
            Ok(analyses::analyze_champion_dominance(&load()?, &scheme())?)
        }
        Command::Pluralism => Ok(analyses::analyze_pluralism(
            &load()?,
            globals.break_season,
            window,
        )?),
        Command::Pace => Ok(analyses::analyze_pace(
            &load()?,
            globals.lambda,
            globals.break_season,
            window,
        )?),
        Command::ScorerCorrelation => Ok(analyses::analyze_scorer_correlation(&load()?)?),
        Command::FinalFourOdds => Ok(analyses::analyze_final_four_randomness(
            &load()?,
            globals.era.unwrap_or(Era::Full),
            globals.iterations,
            globals.seed,
        )?),
        Command::Test(test) => single_test_report(test, globals),
    }
}

fn single_test_report(
    test: &TestCommand,
    globals: &args::Globals,
) -> Result<AnalysisReport, CliError> {
    let mut report = AnalysisReport::new(AnalysisId::SingleTest);
    match test {
        TestCommand::Friedman(a) => {
            let blocks = input::numeric_matrix(&a.input, &a.columns)?;
            report.push_test("friedman", friedman_test(&blocks)?);
        }
        TestCommand::Wilcoxon(a) => {
            let (x, y) = input::paired_columns(&a.input, &a.x, &a.y)?;
            report.push_test("wilcoxon", wilcoxon_signed_rank(&x, &y, false)?);
        }
        TestCommand::MannWhitney(a) => {
            let x = input::numeric_column(&a.input, &a.x)?;
            let y = input::numeric_column(&a.input, &a.y)?;
            report.push_test("mann_whitney", mann_whitney(&x, &y, false)?);
        }
        TestCommand::Runs(a) => {
            let values = input::numeric_column(&a.input, &a.column)?;
            report.push_test("runs", runs_test(&values, a.threshold)?);
        }
        TestCommand::Pearson(a) => {
            let (x, y) = input::paired_columns(&a.input, &a.x, &a.y)?;
            report.push_test("pearson", pearson_test(&x, &y)?);
        }
        TestCommand::Spearman(a) => {
            let (x, y) = input::paired_columns(&a.input, &a.x, &a.y)?;
            report.push_test("spearman", spearman_test(&x, &y)?);
        }
        TestCommand::Binomial(a) => {
            report.push_test(
                "binomial",
                binomial_test_two_sided(a.successes, a.trials, a.prob)?,
            );
        }
        TestCommand::Multinomial(a) => {
            let observations = input::final_four_observations(&a.input, &a.columns)?;
            report.push_test(
                "multinomial",
                stats_tests::multinomial_mc_gof(&observations, globals.iterations, globals.seed)?,
            );
        }
        TestCommand::ZivotAndrews(a) => {
            let (values, labels) =
                input::labelled_column(&a.input, &a.column, a.label_column.as_deref())?;
            report.push_break_test("zivot_andrews", zivot_andrews(&values, &labels, a.lags, a.trim)?);
        }
    }
    Ok(report)
}

/// The series a `--plot` chart draws, chosen to echo the headline figure
/// of each analysis.
fn plot_selection(report: &AnalysisReport) -> Vec<&NamedSeries> {
    let by_name = |wanted: &[&str]| {
        report
            .series
            .iter()
            .filter(|s| wanted.contains(&s.name.as_str()))
            .collect::<Vec<_>>()
    };
    match report.analysis {
        AnalysisId::ChampionDominance => by_name(&["champion_ppg", "opponent_ppg"]),
        AnalysisId::Pluralism => report
            .series
            .iter()
            .filter(|s| {
                s.name.starts_with("pooled_share_ma") || s.name.starts_with("share_difference_ma")
            })
            .collect(),
        _ => report.series.iter().collect(),
    }
}
