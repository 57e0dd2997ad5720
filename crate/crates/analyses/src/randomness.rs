//! Are titles consistent with every finalist having a one-in-four chance?

use std::collections::BTreeMap;

use dataset::{expected_titles, final_fours_in_era, team_records, Dataset, Era};
use stats_tests::{binomial_test_two_sided, multinomial_mc_gof, FinalFourObservation};

use crate::report::{AnalysisId, AnalysisReport, Cell, Table};
use crate::Result;

const NULL_TITLE_PROBABILITY: f64 = 0.25;
const FLAG_THRESHOLD: f64 = 0.1;

/// Compare every club's observed titles with the count expected if each
/// final four were a fair four-way draw: per-club binomial tests plus a
/// Monte Carlo goodness-of-fit test over the era's title distribution.
pub fn analyze_final_four_randomness(
    dataset: &Dataset,
    era: Era,
    iterations: u64,
    seed: u64,
) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::new(AnalysisId::FinalFourRandomness);

    let records = team_records(dataset, era);
    let mut table = Table::new(
        "expected_and_observed_titles",
        &[
            "team",
            "appearances",
            "expected_titles",
            "observed_titles",
            "difference",
            "binomial_p",
            "flagged",
        ],
    );
    let mut flagged = 0usize;
    for record in &records {
        let result = binomial_test_two_sided(
            record.titles,
            record.appearances,
            NULL_TITLE_PROBABILITY,
        )?;
        let expected = expected_titles(record.appearances);
        let flag = result.p_value < FLAG_THRESHOLD;
        flagged += usize::from(flag);
        table.push_row(
            record.team.clone(),
            vec![
                Cell::Int(record.appearances as i64),
                Cell::Real(expected),
                Cell::Int(record.titles as i64),
                Cell::Real(record.titles as f64 - expected),
                Cell::Real(result.p_value),
                Cell::Int(i64::from(flag)),
            ],
        );
    }
    report.tables.push(table);

    let ids: BTreeMap<&str, u32> = records
        .iter()
        .enumerate()
        .map(|(index, record)| (record.team.as_str(), index as u32))
        .collect();
    let observations: Vec<FinalFourObservation> = final_fours_in_era(dataset, era)
        .iter()
        .map(|ff| FinalFourObservation {
            participants: [
                ids[ff.placed[0].as_str()],
                ids[ff.placed[1].as_str()],
                ids[ff.placed[2].as_str()],
                ids[ff.placed[3].as_str()],
            ],
            winner: ids[ff.winner()],
        })
        .collect();
    report.push_test(
        "multinomial",
        multinomial_mc_gof(&observations, iterations, seed)?,
    );

    report.notes.push(format!(
        "era '{}': {} final fours, {} clubs, {} flagged below p = {FLAG_THRESHOLD}",
        era.as_str(),
        observations.len(),
        records.len(),
        flagged
    ));
    Ok(report)
}
