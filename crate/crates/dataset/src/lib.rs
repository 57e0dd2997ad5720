//! Historical Euroleague finals data: typed records, a validating CSV
//! loader, and the derived series and summary tables that the analyses
//! are built on.
//!
//! The bundled tables cover every final four from 1958 through 2018,
//! including the 2000-01 season in which two rival competitions each
//! crowned a champion. Seasons are therefore keyed by `(ordinal, fork)`
//! rather than by year alone.

pub mod derive;
pub mod load;
pub mod model;

pub use derive::{
    appearances_by_region_period, country_rollup, expected_titles, final_fours_in_era,
    finals_from, merge_by_ordinal, moving_average, possessions_for_final, possessions_series,
    scorer_share_pairs, scorer_share_series, season_label_for, team_records,
    titles_by_region_period, CountryRow, Era, Period, PeriodScheme, RegionPeriodTable, SharePair,
    SideRole, TeamRecord, DEFAULT_FREE_THROW_WEIGHT, MODERN_ERA_START,
};
pub use load::load_dataset;
pub use model::{
    BoxScore, ChampionScoringRecord, Dataset, FinalFourRecord, FinalGame, FinalSide, Fork,
    PerformanceLabel, Region, SeasonId, TeamInfo, TimeSeries, TopScorerRecord,
};

use thiserror::Error;

/// Errors raised while loading the data directory or deriving views of it.
#[derive(Debug, Error)]
pub enum DatasetError {
    /// A data file could not be opened or read.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// A cell could not be parsed into the expected type.
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: u64,
        message: String,
    },
    /// A team name did not resolve through the alias table.
    #[error("{file}:{line}: unknown team '{name}'")]
    UnknownTeam {
        file: String,
        line: u64,
        name: String,
    },
    /// A record contradicts another record or an internal consistency rule.
    #[error("{file}:{line}: {message}")]
    Invariant {
        file: String,
        line: u64,
        message: String,
    },
    /// A derived operation was asked for something the data cannot support.
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, DatasetError>;
