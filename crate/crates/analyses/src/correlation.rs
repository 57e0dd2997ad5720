//! Association between leading scorers and their team's season outcome.

use dataset::Dataset;
use stats_tests::{pearson_test, spearman_test};

use crate::report::{AnalysisId, AnalysisReport, Cell, NamedSeries, SeriesPoint, Table};
use crate::Result;

/// Correlate each season's top scorer's points per game with how far the
/// scorer's club progressed, using both Pearson and Spearman tests.
pub fn analyze_scorer_correlation(dataset: &Dataset) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::new(AnalysisId::ScorerCorrelation);

    let mut table = Table::new(
        "top_scorers",
        &["season", "player", "team", "ppg", "performance", "score"],
    );
    let mut ppg_points = Vec::new();
    let mut score_points = Vec::new();
    let mut ppg = Vec::new();
    let mut scores = Vec::new();
    for record in &dataset.top_scorers {
        let label = record.season.to_string();
        let score = record.performance_label.score();
        table.push_row(
            label.clone(),
            vec![
                Cell::Text(record.player.clone()),
                Cell::Text(record.team_name.clone()),
                Cell::Real(record.ppg),
                Cell::Text(record.performance_label.as_str().to_string()),
                Cell::Real(score),
            ],
        );
        ppg_points.push(SeriesPoint {
            ordinal: record.season.ordinal,
            label: label.clone(),
            value: record.ppg,
        });
        score_points.push(SeriesPoint {
            ordinal: record.season.ordinal,
            label,
            value: score,
        });
        ppg.push(record.ppg);
        scores.push(score);
    }
    report.tables.push(table);
    report.series.push(NamedSeries {
        name: "top_scorer_ppg".to_string(),
        points: ppg_points,
    });
    report.series.push(NamedSeries {
        name: "performance_score".to_string(),
        points: score_points,
    });

    report.push_test("pearson", pearson_test(&ppg, &scores)?);
    report.push_test("spearman", spearman_test(&ppg, &scores)?);

    report.notes.push(format!(
        "{} seasons with a recorded top scorer",
        dataset.top_scorers.len()
    ));
    Ok(report)
}
