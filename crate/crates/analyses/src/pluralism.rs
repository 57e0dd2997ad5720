//! Concentration of finals scoring on each side's top scorer.

use dataset::{
    merge_by_ordinal, moving_average, scorer_share_pairs, scorer_share_series, Dataset, Fork,
    SharePair, SideRole, TimeSeries,
};
use stats_tests::{runs_test, wilcoxon_signed_rank, zivot_andrews};

use crate::report::{AnalysisId, AnalysisReport, NamedSeries};
use crate::Result;

/// Last season before the structural break separating the old era from
/// the modern one.
pub const DEFAULT_BREAK_ORDINAL: i32 = 1998;

const ZA_LAGS: usize = 5;
const ZA_TRIM: f64 = 0.15;
const DEFAULT_WINDOW: usize = 10;

/// Compare the champion's and the runner-up's top-scorer shares across
/// every final: paired signed-rank and runs tests over the whole history,
/// a structural-break search on the annual share difference, and re-tests
/// restricted to the era after the break.
pub fn analyze_pluralism(
    dataset: &Dataset,
    break_ordinal: Option<i32>,
    window: Option<usize>,
) -> Result<AnalysisReport> {
    let break_ordinal = break_ordinal.unwrap_or(DEFAULT_BREAK_ORDINAL);
    let window = window.unwrap_or(DEFAULT_WINDOW);
    let mut report = AnalysisReport::new(AnalysisId::Pluralism);

    let champion = scorer_share_series(dataset, SideRole::Champion);
    let runner_up = scorer_share_series(dataset, SideRole::RunnerUp);
    let pairs = scorer_share_pairs(dataset);

    let mut pooled = TimeSeries::new();
    for ((season, champ), (_, runner)) in champion.iter().zip(runner_up.iter()) {
        pooled
            .push(season.clone(), (champ + runner) / 2.0)
            .expect("share series are season-sorted");
    }
    let difference = difference_by_season(&pairs);
    let annual_difference = merge_by_ordinal(&difference);
    let pooled_annual = merge_by_ordinal(&pooled);

    report
        .series
        .push(NamedSeries::from_time_series("champion_share", &champion));
    report
        .series
        .push(NamedSeries::from_time_series("runner_up_share", &runner_up));
    report.series.push(NamedSeries::from_annual(
        &format!("pooled_share_ma{window}"),
        &moving_average(&pooled_annual, window)?,
    ));
    report.series.push(NamedSeries::from_annual(
        "share_difference",
        &annual_difference,
    ));
    report.series.push(NamedSeries::from_annual(
        &format!("share_difference_ma{window}"),
        &moving_average(&annual_difference, window)?,
    ));

    let game_differences: Vec<f64> = pairs.iter().map(|p| p.difference).collect();
    let zeros = vec![0.0; game_differences.len()];

    report.push_test(
        "wilcoxon_full",
        wilcoxon_signed_rank(&game_differences, &zeros, false)?,
    );
    report.push_test("runs_full", runs_test(&game_differences, 0.0)?);

    let values: Vec<f64> = annual_difference.iter().map(|&(_, v)| v).collect();
    let labels: Vec<String> = annual_difference
        .iter()
        .map(|&(ordinal, _)| dataset::season_label_for(ordinal))
        .collect();
    report.push_break_test(
        "zivot_andrews",
        zivot_andrews(&values, &labels, ZA_LAGS, ZA_TRIM)?,
    );

    let modern_differences: Vec<f64> = pairs
        .iter()
        .filter(|p| p.season.ordinal > break_ordinal && p.season.fork != Fork::FibaBranch)
        .map(|p| p.difference)
        .collect();
    let modern_zeros = vec![0.0; modern_differences.len()];

    report.push_test(
        "wilcoxon_modern",
        wilcoxon_signed_rank(&modern_differences, &modern_zeros, false)?,
    );
    report.push_test("runs_modern", runs_test(&modern_differences, 0.0)?);

    report.notes.push(format!(
        "{} finals in the full period, {} in the era after the {} season",
        pairs.len(),
        modern_differences.len(),
        dataset::season_label_for(break_ordinal)
    ));
    Ok(report)
}

fn difference_by_season(pairs: &[SharePair]) -> TimeSeries {
    let mut series = TimeSeries::new();
    let mut iter = pairs.iter().peekable();
    while let Some(first) = iter.next() {
        let mut sum = first.difference;
        let mut count = 1.0;
        while let Some(next) = iter.peek() {
            if next.season.key() != first.season.key() {
                break;
            }
            sum += iter.next().expect("peeked").difference;
            count += 1.0;
        }
        series
            .push(first.season.clone(), sum / count)
            .expect("final games are sorted by season");
    }
    series
}
