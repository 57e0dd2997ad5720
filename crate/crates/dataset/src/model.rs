//! Record types for the finals history tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::{DatasetError, Result};

/// Competition lineage a season belongs to.
///
/// A single lineage runs from 1958 through 2000. The 2000-01 season was
/// played twice under rival organisers and both finals are kept, so that
/// ordinal appears once per branch. The variant order defines the sort
/// order of same-ordinal seasons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fork {
    Unified,
    FibaBranch,
    EuroleagueBranch,
}

impl Fork {
    pub fn parse(token: &str) -> Option<Fork> {
        match token {
            "unified" => Some(Fork::Unified),
            "fiba_branch" => Some(Fork::FibaBranch),
            "euroleague_branch" => Some(Fork::EuroleagueBranch),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Fork::Unified => "unified",
            Fork::FibaBranch => "fiba_branch",
            Fork::EuroleagueBranch => "euroleague_branch",
        }
    }
}

impl fmt::Display for Fork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Geographic grouping used by the dominance tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Spain,
    Italy,
    ExUssrExYugoslavia,
    Other,
}

impl Region {
    pub const ALL: [Region; 4] = [
        Region::Spain,
        Region::Italy,
        Region::ExUssrExYugoslavia,
        Region::Other,
    ];

    pub fn parse(token: &str) -> Option<Region> {
        match token {
            "Spain" => Some(Region::Spain),
            "Italy" => Some(Region::Italy),
            "ExUSSR_ExYugoslavia" => Some(Region::ExUssrExYugoslavia),
            "Other" => Some(Region::Other),
            _ => None,
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Region::Spain => "Spain",
            Region::Italy => "Italy",
            Region::ExUssrExYugoslavia => "Ex-USSR & Ex-Yugoslavia",
            Region::Other => "Other",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

/// One competition season, keyed by the calendar year its final was played
/// in (`ordinal`) plus the lineage it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeasonId {
    /// Human-readable label such as "1957-58".
    pub label: String,
    /// Final year of the season: 1958 for "1957-58".
    pub ordinal: i32,
    pub fork: Fork,
}

impl SeasonId {
    pub fn key(&self) -> (i32, Fork) {
        (self.ordinal, self.fork)
    }
}

impl PartialOrd for SeasonId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SeasonId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SeasonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fork == Fork::Unified {
            f.write_str(&self.label)
        } else {
            write!(f, "{} ({})", self.label, self.fork)
        }
    }
}

/// A club with its sponsor-era aliases and geography.
#[derive(Debug, Clone, Serialize)]
pub struct TeamInfo {
    pub canonical_id: String,
    /// Every name the club appears under, in file order.
    pub display_names: Vec<String>,
    pub country: String,
    pub region: Region,
}

/// Final-four placements for one season. `placed` is winner, runner-up,
/// third, fourth, as canonical team ids.
#[derive(Debug, Clone, Serialize)]
pub struct FinalFourRecord {
    pub season: SeasonId,
    pub placed: [String; 4],
}

impl FinalFourRecord {
    pub fn winner(&self) -> &str {
        &self.placed[0]
    }

    pub fn runner_up(&self) -> &str {
        &self.placed[1]
    }

    pub fn third(&self) -> &str {
        &self.placed[2]
    }

    pub fn fourth(&self) -> &str {
        &self.placed[3]
    }
}

/// Shooting, rebounding, and turnover counts for one side of a final.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoxScore {
    pub fga: u32,
    pub fgm: u32,
    pub fta: u32,
    pub ftm: u32,
    pub oreb: u32,
    pub dreb: u32,
    pub turnovers: u32,
}

/// One side of a championship final.
#[derive(Debug, Clone, Serialize)]
pub struct FinalSide {
    /// Canonical team id.
    pub team: String,
    /// Team name as it appeared that season.
    pub team_name: String,
    pub points: u32,
    pub top_scorer_points: u32,
    /// Present only for finals with a surviving box score.
    pub box_score: Option<BoxScore>,
}

impl FinalSide {
    /// Share of the side's points scored by its top scorer.
    pub fn scorer_share(&self) -> f64 {
        f64::from(self.top_scorer_points) / f64::from(self.points)
    }
}

/// One championship final game. Early seasons decided the title over two
/// legs; `leg` numbers them from one.
#[derive(Debug, Clone, Serialize)]
pub struct FinalGame {
    pub season: SeasonId,
    pub leg: u32,
    pub champion: FinalSide,
    pub runner_up: FinalSide,
    pub source: String,
}

/// Season scoring averages for the champion and its opponents.
#[derive(Debug, Clone, Serialize)]
pub struct ChampionScoringRecord {
    pub season: SeasonId,
    pub champion_ppg: f64,
    pub opponent_ppg: f64,
    pub source: String,
}

/// How far a season's top scorer's club went that year.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerformanceLabel {
    RegularSeason,
    Top16,
    Quarterfinals,
    FinalFour,
    RunnerUp,
    Winner,
}

impl PerformanceLabel {
    pub fn parse(token: &str) -> Option<PerformanceLabel> {
        match token {
            "regular_season" => Some(PerformanceLabel::RegularSeason),
            "top16" => Some(PerformanceLabel::Top16),
            "quarterfinals" => Some(PerformanceLabel::Quarterfinals),
            "final_four" => Some(PerformanceLabel::FinalFour),
            "runner_up" => Some(PerformanceLabel::RunnerUp),
            "winner" => Some(PerformanceLabel::Winner),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PerformanceLabel::RegularSeason => "regular_season",
            PerformanceLabel::Top16 => "top16",
            PerformanceLabel::Quarterfinals => "quarterfinals",
            PerformanceLabel::FinalFour => "final_four",
            PerformanceLabel::RunnerUp => "runner_up",
            PerformanceLabel::Winner => "winner",
        }
    }

    /// Numeric progress score: deeper runs score higher, with the lost
    /// final halfway between reaching the final four and winning.
    pub fn score(self) -> f64 {
        match self {
            PerformanceLabel::RegularSeason => 1.0,
            PerformanceLabel::Top16 => 2.0,
            PerformanceLabel::Quarterfinals => 3.0,
            PerformanceLabel::FinalFour => 4.0,
            PerformanceLabel::RunnerUp => 4.5,
            PerformanceLabel::Winner => 5.0,
        }
    }
}

/// A season's leading scorer.
#[derive(Debug, Clone, Serialize)]
pub struct TopScorerRecord {
    pub season: SeasonId,
    pub player: String,
    pub ppg: f64,
    /// Canonical id of the player's club.
    pub team: String,
    /// Club name as printed that season.
    pub team_name: String,
    pub performance_label: PerformanceLabel,
}

/// A season-indexed series of values, strictly increasing by
/// `(ordinal, fork)`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TimeSeries {
    entries: Vec<(SeasonId, f64)>,
}

impl TimeSeries {
    pub fn new() -> TimeSeries {
        TimeSeries::default()
    }

    pub fn from_entries(entries: Vec<(SeasonId, f64)>) -> Result<TimeSeries> {
        let mut series = TimeSeries::new();
        for (season, value) in entries {
            series.push(season, value)?;
        }
        Ok(series)
    }

    pub fn push(&mut self, season: SeasonId, value: f64) -> Result<()> {
        if let Some((last, _)) = self.entries.last() {
            if last.key() >= season.key() {
                return Err(DatasetError::Domain(format!(
                    "series entries must be strictly increasing by season: {} does not follow {}",
                    season, last
                )));
            }
        }
        self.entries.push((season, value));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(SeasonId, f64)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|(s, _)| s.label.clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(SeasonId, f64)> {
        self.entries.iter()
    }
}

/// The loaded and cross-validated history tables.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub(crate) teams: BTreeMap<String, TeamInfo>,
    pub(crate) alias_to_canonical: BTreeMap<String, String>,
    /// Sorted by `(ordinal, fork)`.
    pub final_fours: Vec<FinalFourRecord>,
    /// Sorted by `(ordinal, fork, leg)`.
    pub final_games: Vec<FinalGame>,
    /// Sorted by `(ordinal, fork)`; one record per final four season.
    pub champion_scoring: Vec<ChampionScoringRecord>,
    /// Sorted by `(ordinal, fork)`.
    pub top_scorers: Vec<TopScorerRecord>,
}

impl Dataset {
    /// Look up a club by canonical id.
    pub fn team(&self, canonical_id: &str) -> Option<&TeamInfo> {
        self.teams.get(canonical_id)
    }

    /// Resolve any recorded name to its canonical id.
    pub fn canonical(&self, name: &str) -> Option<&str> {
        self.alias_to_canonical.get(name).map(String::as_str)
    }

    /// All clubs, ordered by canonical id.
    pub fn teams(&self) -> impl Iterator<Item = &TeamInfo> {
        self.teams.values()
    }

    pub fn team_count(&self) -> usize {
        self.teams.len()
    }
}
