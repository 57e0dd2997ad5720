//! Scoring dominance of champions over their opponents.

use dataset::{Dataset, DatasetError, PeriodScheme};

use crate::report::{AnalysisId, AnalysisReport, Cell, NamedSeries, SeriesPoint, Table};
use crate::Result;

const HIGH_DOMINANCE_PCT: f64 = 20.0;
const EXTREME_DOMINANCE_PCT: f64 = 30.0;

/// Compare champion and opponent scoring averages season by season and
/// per period: means for both sides, the per-team average, and the
/// percentage difference, flagging seasons of unusual dominance.
pub fn analyze_champion_dominance(
    dataset: &Dataset,
    scheme: &PeriodScheme,
) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::new(AnalysisId::ChampionDominance);

    let mut champion_points = Vec::new();
    let mut opponent_points = Vec::new();
    let mut diff_points = Vec::new();
    let mut per_team_points = Vec::new();
    let mut period_sums = vec![(0.0f64, 0.0f64, 0u32); scheme.periods().len()];
    let mut flagged = Vec::new();

    for record in &dataset.champion_scoring {
        let ordinal = record.season.ordinal;
        let label = record.season.to_string();
        let diff_pct =
            (record.champion_ppg - record.opponent_ppg) / record.opponent_ppg * 100.0;
        let point = |value: f64| SeriesPoint {
            ordinal,
            label: label.clone(),
            value,
        };
        champion_points.push(point(record.champion_ppg));
        opponent_points.push(point(record.opponent_ppg));
        diff_points.push(point(diff_pct));
        per_team_points.push(point((record.champion_ppg + record.opponent_ppg) / 2.0));

        let bucket = scheme.bucket(ordinal).ok_or_else(|| {
            DatasetError::Domain(format!("period scheme does not cover season '{label}'"))
        })?;
        period_sums[bucket].0 += record.champion_ppg;
        period_sums[bucket].1 += record.opponent_ppg;
        period_sums[bucket].2 += 1;

        if diff_pct > HIGH_DOMINANCE_PCT {
            flagged.push((label.clone(), diff_pct));
        }
    }

    let mut period_table = Table::new(
        "scoring_by_period",
        &["period", "champion", "opponent", "per_team"],
    );
    let mut period_diff_points = Vec::new();
    for (period, (champion_sum, opponent_sum, seasons)) in
        scheme.periods().iter().zip(&period_sums)
    {
        if *seasons == 0 {
            continue;
        }
        let champion = champion_sum / f64::from(*seasons);
        let opponent = opponent_sum / f64::from(*seasons);
        period_table.push_row(
            period.label(),
            vec![
                Cell::Real(champion),
                Cell::Real(opponent),
                Cell::Real((champion + opponent) / 2.0),
            ],
        );
        period_diff_points.push(SeriesPoint {
            ordinal: period.end,
            label: period.label(),
            value: (champion - opponent) / opponent * 100.0,
        });
    }
    report.tables.push(period_table);

    let mut flag_table = Table::new(
        "high_dominance_seasons",
        &["season", "difference_pct", "above_30_pct"],
    );
    let extreme = flagged
        .iter()
        .filter(|(_, diff)| *diff > EXTREME_DOMINANCE_PCT)
        .count();
    for (label, diff_pct) in &flagged {
        flag_table.push_row(
            label.clone(),
            vec![
                Cell::Real(*diff_pct),
                Cell::Int(i64::from(*diff_pct > EXTREME_DOMINANCE_PCT)),
            ],
        );
    }
    report.tables.push(flag_table);

    report.series.push(NamedSeries {
        name: "champion_ppg".to_string(),
        points: champion_points,
    });
    report.series.push(NamedSeries {
        name: "opponent_ppg".to_string(),
        points: opponent_points,
    });
    report.series.push(NamedSeries {
        name: "scoring_difference_pct".to_string(),
        points: diff_points,
    });
    report.series.push(NamedSeries {
        name: "per_team_average".to_string(),
        points: per_team_points,
    });
    report.series.push(NamedSeries {
        name: "period_difference_pct".to_string(),
        points: period_diff_points,
    });

    report.notes.push(format!(
        "{} of {} seasons exceed a {HIGH_DOMINANCE_PCT:.0}% scoring difference, \
         {extreme} exceed {EXTREME_DOMINANCE_PCT:.0}%",
        flagged.len(),
        dataset.champion_scoring.len()
    ));
    Ok(report)
}
