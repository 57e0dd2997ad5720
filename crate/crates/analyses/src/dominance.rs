//! Titles and final four appearances per geographic region.

use dataset::{
    appearances_by_region_period, country_rollup, titles_by_region_period, Dataset, PeriodScheme,
    Region, RegionPeriodTable,
};
use stats_tests::friedman_test;

use crate::report::{AnalysisId, AnalysisReport, Cell, NamedSeries, SeriesPoint, Table};
use crate::Result;

fn region_slug(region: Region) -> &'static str {
    match region {
        Region::Spain => "spain",
        Region::Italy => "italy",
        Region::ExUssrExYugoslavia => "ex_ussr_ex_yugoslavia",
        Region::Other => "other",
    }
}

fn counts_table(title: &str, counts: &RegionPeriodTable) -> Table {
    let mut columns = vec!["period"];
    for region in Region::ALL {
        columns.push(region.display_name());
    }
    let mut table = Table::new(title, &columns);
    for (period, row) in counts.periods.iter().zip(&counts.counts) {
        table.push_row(
            period.label(),
            row.iter().map(|&c| Cell::Int(c as i64)).collect(),
        );
    }
    table
}

fn counts_series(prefix: &str, counts: &RegionPeriodTable) -> Vec<NamedSeries> {
    Region::ALL
        .iter()
        .enumerate()
        .map(|(column, region)| NamedSeries {
            name: format!("{prefix}_{}", region_slug(*region)),
            points: counts
                .periods
                .iter()
                .zip(&counts.counts)
                .map(|(period, row)| SeriesPoint {
                    ordinal: period.end,
                    label: period.label(),
                    value: row[column] as f64,
                })
                .collect(),
        })
        .collect()
}

/// Count titles and appearances per region and period, and test with
/// Friedman whether the regions differ once period effects are blocked
/// out.
pub fn analyze_dominance(dataset: &Dataset, scheme: &PeriodScheme) -> Result<AnalysisReport> {
    let titles = titles_by_region_period(dataset, scheme)?;
    let appearances = appearances_by_region_period(dataset, scheme)?;

    let mut report = AnalysisReport::new(AnalysisId::Dominance);
    report.tables.push(counts_table("titles_by_region", &titles));
    report
        .tables
        .push(counts_table("appearances_by_region", &appearances));

    let mut rollup_table = Table::new(
        "titles_and_appearances_by_country",
        &["country", "winners", "runner_ups", "appearances", "teams"],
    );
    for row in country_rollup(dataset) {
        rollup_table.push_row(
            row.country,
            vec![
                Cell::Int(row.winners as i64),
                Cell::Int(row.runner_ups as i64),
                Cell::Int(row.appearances as i64),
                Cell::Int(row.teams as i64),
            ],
        );
    }
    report.tables.push(rollup_table);

    report.series.extend(counts_series("titles", &titles));
    report
        .series
        .extend(counts_series("appearances", &appearances));

    report.push_test("friedman_titles", friedman_test(&titles.to_blocks())?);
    report.push_test(
        "friedman_appearances",
        friedman_test(&appearances.to_blocks())?,
    );

    report.notes.push(format!(
        "{} final fours bucketed into {} periods; periods are blocks, regions are treatments",
        dataset.final_fours.len(),
        scheme.periods().len()
    ));
    Ok(report)
}
