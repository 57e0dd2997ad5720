//! Derived series and summary tables built from a loaded dataset.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::{
    BoxScore, Dataset, FinalFourRecord, FinalGame, Fork, Region, SeasonId, TimeSeries,
};
use crate::{DatasetError, Result};

/// Weight applied to free-throw attempts when estimating possessions.
pub const DEFAULT_FREE_THROW_WEIGHT: f64 = 0.44;

/// First season of the modern era subset, by final year.
pub const MODERN_ERA_START: i32 = 1999;

/// An inclusive range of season ordinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Period {
    pub start: i32,
    pub end: i32,
}

impl Period {
    pub fn label(&self) -> String {
        format!("{}-{}", self.start, self.end)
    }

    pub fn contains(&self, ordinal: i32) -> bool {
        self.start <= ordinal && ordinal <= self.end
    }
}

/// An ordered, non-overlapping set of periods used to bucket seasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodScheme {
    periods: Vec<Period>,
}

impl PeriodScheme {
    /// The six periods used throughout the reports.
    pub fn default_history() -> PeriodScheme {
        let bounds = [
            (1958, 1970),
            (1971, 1980),
            (1981, 1990),
            (1991, 2000),
            (2001, 2010),
            (2011, 2018),
        ];
        PeriodScheme {
            periods: bounds
                .iter()
                .map(|&(start, end)| Period { start, end })
                .collect(),
        }
    }

    /// Parse a comma-separated list of `start-end` ranges, for example
    /// `1958-1988,1989-2018`.
    pub fn parse(text: &str) -> Result<PeriodScheme> {
        let mut periods = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            let Some((start, end)) = piece.split_once('-') else {
                return Err(DatasetError::Domain(format!(
                    "period '{piece}' must look like 1958-1970"
                )));
            };
            let start: i32 = start.trim().parse().map_err(|_| {
                DatasetError::Domain(format!("period '{piece}' has a malformed start year"))
            })?;
            let end: i32 = end.trim().parse().map_err(|_| {
                DatasetError::Domain(format!("period '{piece}' has a malformed end year"))
            })?;
            if start > end {
                return Err(DatasetError::Domain(format!(
                    "period '{piece}' ends before it starts"
                )));
            }
            if let Some(previous) = periods.last() {
                let previous: &Period = previous;
                if start <= previous.end {
                    return Err(DatasetError::Domain(format!(
                        "period '{piece}' overlaps or precedes '{}'",
                        previous.label()
                    )));
                }
            }
            periods.push(Period { start, end });
        }
        if periods.is_empty() {
            return Err(DatasetError::Domain(
                "a period scheme needs at least one period".to_string(),
            ));
        }
        Ok(PeriodScheme { periods })
    }

    pub fn periods(&self) -> &[Period] {
        &self.periods
    }

    pub fn labels(&self) -> Vec<String> {
        self.periods.iter().map(Period::label).collect()
    }

    /// Index of the period containing `ordinal`, if any.
    pub fn bucket(&self, ordinal: i32) -> Option<usize> {
        self.periods.iter().position(|p| p.contains(ordinal))
    }
}

/// Counts per period and region, with regions in [`Region::ALL`] order.
#[derive(Debug, Clone, Serialize)]
pub struct RegionPeriodTable {
    pub periods: Vec<Period>,
    pub counts: Vec<[u64; 4]>,
}

impl RegionPeriodTable {
    /// Rows as blocks of observations, one value per region, for use with
    /// rank tests that compare the regions across periods.
    pub fn to_blocks(&self) -> Vec<Vec<f64>> {
        self.counts
            .iter()
            .map(|row| row.iter().map(|&c| c as f64).collect())
            .collect()
    }

    pub fn region_totals(&self) -> [u64; 4] {
        let mut totals = [0u64; 4];
        for row in &self.counts {
            for (total, count) in totals.iter_mut().zip(row) {
                *total += count;
            }
        }
        totals
    }
}

fn region_period_counts<'a, F, I>(
    dataset: &'a Dataset,
    scheme: &PeriodScheme,
    credit: F,
) -> Result<RegionPeriodTable>
where
    F: Fn(&'a FinalFourRecord) -> I,
    I: IntoIterator<Item = &'a str>,
{
    let mut counts = vec![[0u64; 4]; scheme.periods().len()];
    for record in &dataset.final_fours {
        let bucket = scheme.bucket(record.season.ordinal).ok_or_else(|| {
            DatasetError::Domain(format!(
                "period scheme does not cover season '{}'",
                record.season.label
            ))
        })?;
        for team in credit(record) {
            let info = dataset
                .team(team)
                .expect("loaded datasets resolve every placed team");
            let region = Region::ALL
                .iter()
                .position(|r| *r == info.region)
                .expect("every region is enumerated");
            counts[bucket][region] += 1;
        }
    }
    Ok(RegionPeriodTable {
        periods: scheme.periods().to_vec(),
        counts,
    })
}

/// Championship titles per region and period.
pub fn titles_by_region_period(
    dataset: &Dataset,
    scheme: &PeriodScheme,
) -> Result<RegionPeriodTable> {
    region_period_counts(dataset, scheme, |record| [record.winner()])
}

/// Final four appearances per region and period.
pub fn appearances_by_region_period(
    dataset: &Dataset,
    scheme: &PeriodScheme,
) -> Result<RegionPeriodTable> {
    region_period_counts(dataset, scheme, |record| {
        record.placed.iter().map(String::as_str)
    })
}

/// Per-country totals across the whole history.
#[derive(Debug, Clone, Serialize)]
pub struct CountryRow {
    pub country: String,
    pub winners: u64,
    pub runner_ups: u64,
    pub appearances: u64,
    /// Distinct clubs from the country that reached a final four.
    pub teams: u64,
}

/// Fold the final four history into one row per country, ordered by
/// winners, runner-ups, and appearances, all descending.
pub fn country_rollup(dataset: &Dataset) -> Vec<CountryRow> {
    #[derive(Default)]
    struct Acc {
        winners: u64,
        runner_ups: u64,
        appearances: u64,
        teams: BTreeSet<String>,
    }
    let mut by_country: BTreeMap<String, Acc> = BTreeMap::new();
    for record in &dataset.final_fours {
        for (slot, team) in record.placed.iter().enumerate() {
            let info = dataset
                .team(team)
                .expect("loaded datasets resolve every placed team");
            let acc = by_country.entry(info.country.clone()).or_default();
            acc.appearances += 1;
            acc.teams.insert(team.clone());
            if slot == 0 {
                acc.winners += 1;
            } else if slot == 1 {
                acc.runner_ups += 1;
            }
        }
    }
    let mut rows: Vec<CountryRow> = by_country
        .into_iter()
        .map(|(country, acc)| CountryRow {
            country,
            winners: acc.winners,
            runner_ups: acc.runner_ups,
            appearances: acc.appearances,
            teams: acc.teams.len() as u64,
        })
        .collect();
    rows.sort_by(|a, b| {
        (b.winners, b.runner_ups, b.appearances, &a.country).cmp(&(
            a.winners,
            a.runner_ups,
            a.appearances,
            &b.country,
        ))
    });
    rows
}

/// Which side of a final a derived value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SideRole {
    Champion,
    RunnerUp,
}

/// Top-scorer point share per season for one side of the final, averaged
/// over legs when a title was decided over two games.
pub fn scorer_share_series(dataset: &Dataset, role: SideRole) -> TimeSeries {
    let mut series = TimeSeries::new();
    let mut games = dataset.final_games.iter().peekable();
    while let Some(first) = games.next() {
        let mut sum = share_of(first, role);
        let mut count = 1.0;
        while let Some(next) = games.peek() {
            if next.season.key() != first.season.key() {
                break;
            }
            sum += share_of(games.next().unwrap(), role);
            count += 1.0;
        }
        series
            .push(first.season.clone(), sum / count)
            .expect("final games are sorted by season");
    }
    series
}

fn share_of(game: &FinalGame, role: SideRole) -> f64 {
    match role {
        SideRole::Champion => game.champion.scorer_share(),
        SideRole::RunnerUp => game.runner_up.scorer_share(),
    }
}

/// Both sides' top-scorer shares for a single final game.
#[derive(Debug, Clone, Serialize)]
pub struct SharePair {
    pub season: SeasonId,
    pub leg: u32,
    pub champion_share: f64,
    pub runner_up_share: f64,
    /// Champion share minus runner-up share, evaluated as a single
    /// division of exact integer cross-products so that games whose
    /// differences are equal as rationals stay tied in `f64`.
    pub difference: f64,
}

/// One share observation per final game, in season order.
pub fn scorer_share_pairs(dataset: &Dataset) -> Vec<SharePair> {
    dataset
        .final_games
        .iter()
        .map(|game| {
            let c = &game.champion;
            let r = &game.runner_up;
            let numer = i64::from(c.top_scorer_points) * i64::from(r.points)
                - i64::from(r.top_scorer_points) * i64::from(c.points);
            let denom = i64::from(c.points) * i64::from(r.points);
            SharePair {
                season: game.season.clone(),
                leg: game.leg,
                champion_share: c.scorer_share(),
                runner_up_share: r.scorer_share(),
                difference: numer as f64 / denom as f64,
            }
        })
        .collect()
}

/// Estimate the number of possessions in a final.
///
/// Each side yields two estimates: possessions spent,
/// `FGA + w*FTA - OREB + TO`, and possessions gained,
/// `FGM + w*FTM + DREB_opponent + TO`. The game value is the mean of the
/// four. Returns `None` when either side lacks a box score.
pub fn possessions_for_final(game: &FinalGame, free_throw_weight: f64) -> Option<f64> {
    let champion = game.champion.box_score?;
    let runner_up = game.runner_up.box_score?;
    let spent = |own: &BoxScore| {
        f64::from(own.fga) + free_throw_weight * f64::from(own.fta) - f64::from(own.oreb)
            + f64::from(own.turnovers)
    };
    let gained = |own: &BoxScore, opponent: &BoxScore| {
        f64::from(own.fgm)
            + free_throw_weight * f64::from(own.ftm)
            + f64::from(opponent.dreb)
            + f64::from(own.turnovers)
    };
    Some(
        (spent(&champion)
            + gained(&champion, &runner_up)
            + spent(&runner_up)
            + gained(&runner_up, &champion))
            / 4.0,
    )
}

/// Season-level possession estimates, averaging legs with box scores.
/// Returns the series and the number of games that had to be skipped for
/// lack of a box score.
pub fn possessions_series(dataset: &Dataset, free_throw_weight: f64) -> (TimeSeries, u64) {
    let mut series = TimeSeries::new();
    let mut skipped = 0u64;
    let mut games = dataset.final_games.iter().peekable();
    while let Some(first) = games.next() {
        let mut season_games = vec![first];
        while let Some(next) = games.peek() {
            if next.season.key() != first.season.key() {
                break;
            }
            season_games.push(games.next().unwrap());
        }
        let mut sum = 0.0;
        let mut count = 0.0;
        for game in season_games {
            match possessions_for_final(game, free_throw_weight) {
                Some(value) => {
                    sum += value;
                    count += 1.0;
                }
                None => skipped += 1,
            }
        }
        if count > 0.0 {
            series
                .push(first.season.clone(), sum / count)
                .expect("final games are sorted by season");
        }
    }
    (series, skipped)
}

/// Collapse a series to one point per ordinal, averaging entries that share
/// a year (the duplicated 2000-01 season).
pub fn merge_by_ordinal(series: &TimeSeries) -> Vec<(i32, f64)> {
    let mut points: Vec<(i32, f64)> = Vec::new();
    let mut count_at_last = 0.0;
    for (season, value) in series.iter() {
        match points.last_mut() {
            Some((ordinal, mean)) if *ordinal == season.ordinal => {
                count_at_last += 1.0;
                *mean += (value - *mean) / count_at_last;
            }
            _ => {
                points.push((season.ordinal, *value));
                count_at_last = 1.0;
            }
        }
    }
    points
}

/// Trailing moving average over ordinal-keyed points. Each output point is
/// the mean of the window ending at its ordinal. A window longer than the
/// series yields an empty result.
pub fn moving_average(points: &[(i32, f64)], window: usize) -> Result<Vec<(i32, f64)>> {
    if window == 0 {
        return Err(DatasetError::Domain(
            "moving average window must be positive".to_string(),
        ));
    }
    if window > points.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(points.len() - window + 1);
    for end in (window - 1)..points.len() {
        let sum: f64 = points[end + 1 - window..=end].iter().map(|(_, v)| v).sum();
        out.push((points[end].0, sum / window as f64));
    }
    Ok(out)
}

/// Standard label for a season ending in `ordinal`, such as "1957-58".
pub fn season_label_for(ordinal: i32) -> String {
    format!("{}-{:02}", ordinal - 1, ordinal.rem_euclid(100))
}

/// Titles a team would collect if every final four were a coin-flip among
/// its four participants.
pub fn expected_titles(appearances: u64) -> f64 {
    appearances as f64 / 4.0
}

/// Season filter for era-restricted analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Era {
    Full,
    Modern,
}

impl Era {
    pub fn parse(token: &str) -> Option<Era> {
        match token {
            "full" => Some(Era::Full),
            "modern" => Some(Era::Modern),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Era::Full => "full",
            Era::Modern => "modern",
        }
    }

    pub fn contains(self, season: &SeasonId) -> bool {
        match self {
            Era::Full => true,
            Era::Modern => season.ordinal >= MODERN_ERA_START,
        }
    }
}

/// Final fours within an era, both 2000-01 branches included.
pub fn final_fours_in_era(dataset: &Dataset, era: Era) -> Vec<&FinalFourRecord> {
    dataset
        .final_fours
        .iter()
        .filter(|record| era.contains(&record.season))
        .collect()
}

/// Final games from `first_ordinal` onward, following the continuous
/// lineage: the duplicated 2000-01 season contributes only its
/// euroleague-branch final.
pub fn finals_from(dataset: &Dataset, first_ordinal: i32) -> Vec<&FinalGame> {
    dataset
        .final_games
        .iter()
        .filter(|game| game.season.ordinal >= first_ordinal && game.season.fork != Fork::FibaBranch)
        .collect()
}

/// Appearance and title counts per club within an era.
#[derive(Debug, Clone, Serialize)]
pub struct TeamRecord {
    pub team: String,
    pub appearances: u64,
    pub titles: u64,
}

/// Per-club final four record, ordered by appearances, then titles, both
/// descending.
pub fn team_records(dataset: &Dataset, era: Era) -> Vec<TeamRecord> {
    let mut by_team: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for record in final_fours_in_era(dataset, era) {
        for (slot, team) in record.placed.iter().enumerate() {
            let entry = by_team.entry(team).or_default();
            entry.0 += 1;
            if slot == 0 {
                entry.1 += 1;
            }
        }
    }
    let mut rows: Vec<TeamRecord> = by_team
        .into_iter()
        .map(|(team, (appearances, titles))| TeamRecord {
            team: team.to_string(),
            appearances,
            titles,
        })
        .collect();
    rows.sort_by(|a, b| {
        (b.appearances, b.titles, &a.team).cmp(&(a.appearances, a.titles, &b.team))
    });
    rows
}
