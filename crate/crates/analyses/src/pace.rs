//! Game pace in the finals, via possession estimates from box scores.

use dataset::{
    merge_by_ordinal, moving_average, possessions_for_final, possessions_series, Dataset,
    DatasetError,
};
use stats_tests::mann_whitney;

use crate::report::{AnalysisId, AnalysisReport, Cell, NamedSeries, Table};
use crate::Result;

const DEFAULT_WINDOW: usize = 5;
const LAMBDA_STEP: f64 = 0.1;

fn split_by_break(dataset: &Dataset, lambda: f64, break_ordinal: i32) -> (Vec<f64>, Vec<f64>) {
    let mut before = Vec::new();
    let mut after = Vec::new();
    for game in &dataset.final_games {
        if let Some(value) = possessions_for_final(game, lambda) {
            if game.season.ordinal <= break_ordinal {
                before.push(value);
            } else {
                after.push(value);
            }
        }
    }
    (before, after)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Estimate possessions for every final with a box score, smooth the
/// series, and test whether pace differs before and after the break year.
pub fn analyze_pace(
    dataset: &Dataset,
    lambda: f64,
    break_ordinal: Option<i32>,
    window: Option<usize>,
) -> Result<AnalysisReport> {
    if !lambda.is_finite() || !(0.0..=1.0).contains(&lambda) {
        return Err(DatasetError::Domain(format!(
            "free-throw weight must lie in [0, 1], got {lambda}"
        ))
        .into());
    }
    let break_ordinal = break_ordinal.unwrap_or(crate::DEFAULT_BREAK_ORDINAL);
    let window = window.unwrap_or(DEFAULT_WINDOW);
    let mut report = AnalysisReport::new(AnalysisId::Pace);

    let (series, skipped) = possessions_series(dataset, lambda);
    if series.is_empty() {
        return Err(DatasetError::Domain(
            "no final games carry complete box scores".to_string(),
        )
        .into());
    }
    report
        .series
        .push(NamedSeries::from_time_series("possessions", &series));
    report.series.push(NamedSeries::from_annual(
        &format!("possessions_ma{window}"),
        &moving_average(&merge_by_ordinal(&series), window)?,
    ));

    let (before, after) = split_by_break(dataset, lambda, break_ordinal);
    if before.is_empty() || after.is_empty() {
        return Err(DatasetError::Domain(format!(
            "every final with a box score falls on one side of the {break_ordinal} break"
        ))
        .into());
    }

    let mut group_table = Table::new("possession_groups", &["group", "games", "mean"]);
    group_table.push_row(
        "before_break",
        vec![Cell::Int(before.len() as i64), Cell::Real(mean(&before))],
    );
    group_table.push_row(
        "after_break",
        vec![Cell::Int(after.len() as i64), Cell::Real(mean(&after))],
    );
    report.tables.push(group_table);

    let mut sensitivity = Table::new(
        "lambda_sensitivity",
        &["lambda", "mean_before", "mean_after"],
    );
    for shifted in [lambda - LAMBDA_STEP, lambda, lambda + LAMBDA_STEP] {
        let shifted = shifted.clamp(0.0, 1.0);
        let (shifted_before, shifted_after) = split_by_break(dataset, shifted, break_ordinal);
        sensitivity.push_row(
            format!("{shifted:.2}"),
            vec![
                Cell::Real(mean(&shifted_before)),
                Cell::Real(mean(&shifted_after)),
            ],
        );
    }
    report.tables.push(sensitivity);

    report.push_test("mann_whitney", mann_whitney(&before, &after, false)?);

    report.notes.push(format!(
        "{} finals lack box scores and are excluded; break after the {} season",
        skipped,
        dataset::season_label_for(break_ordinal)
    ));
    Ok(report)
}
