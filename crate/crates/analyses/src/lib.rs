//! Report pipelines over the finals history: each analysis combines
//! derived dataset views with hypothesis tests into one structured,
//! serializable report.
//!
//! Reports are deterministic functions of the dataset, the parameters,
//! and the seed, so rendering the same report twice yields identical
//! bytes downstream.

mod champion;
mod correlation;
mod dominance;
mod pace;
mod pluralism;
mod randomness;
mod report;

pub use champion::analyze_champion_dominance;
pub use correlation::analyze_scorer_correlation;
pub use dominance::analyze_dominance;
pub use pace::analyze_pace;
pub use pluralism::{analyze_pluralism, DEFAULT_BREAK_ORDINAL};
pub use randomness::analyze_final_four_randomness;
pub use report::{
    AnalysisId, AnalysisReport, Cell, NamedSeries, NamedTest, SeriesPoint, Table, TableRow,
    TestOutcome,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Dataset(#[from] dataset::DatasetError),
    #[error(transparent)]
    Stats(#[from] stats_tests::StatsError),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
