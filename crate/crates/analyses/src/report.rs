//! Report structure shared by all analyses.

use dataset::TimeSeries;
use serde::Serialize;
use stats_tests::{BreakResult, TestResult};

/// Which analysis produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisId {
    Dominance,
    ChampionDominance,
    Pluralism,
    Pace,
    ScorerCorrelation,
    FinalFourRandomness,
    /// A single statistical test run directly on user-supplied columns.
    SingleTest,
}

impl AnalysisId {
    pub fn as_str(self) -> &'static str {
        match self {
            AnalysisId::Dominance => "dominance",
            AnalysisId::ChampionDominance => "champion_dominance",
            AnalysisId::Pluralism => "pluralism",
            AnalysisId::Pace => "pace",
            AnalysisId::ScorerCorrelation => "scorer_correlation",
            AnalysisId::FinalFourRandomness => "final_four_randomness",
            AnalysisId::SingleTest => "single_test",
        }
    }
}

/// One table cell. Integers and text render without decimal formatting;
/// reals honour the requested output precision.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<Cell>,
}

/// A labelled matrix. The first column name describes the row labels.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Table {
        Table {
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, label: impl Into<String>, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len() + 1, self.columns.len());
        self.rows.push(TableRow {
            label: label.into(),
            cells,
        });
    }
}

/// One point of a plottable series: the season's final year for the x
/// axis plus a human-readable label.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesPoint {
    pub ordinal: i32,
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedSeries {
    pub name: String,
    pub points: Vec<SeriesPoint>,
}

impl NamedSeries {
    pub fn from_time_series(name: &str, series: &TimeSeries) -> NamedSeries {
        NamedSeries {
            name: name.to_string(),
            points: series
                .iter()
                .map(|(season, value)| SeriesPoint {
                    ordinal: season.ordinal,
                    label: season.to_string(),
                    value: *value,
                })
                .collect(),
        }
    }

    /// Build from ordinal-keyed points, labelling each with the standard
    /// season form ("1997-98").
    pub fn from_annual(name: &str, points: &[(i32, f64)]) -> NamedSeries {
        NamedSeries {
            name: name.to_string(),
            points: points
                .iter()
                .map(|&(ordinal, value)| SeriesPoint {
                    ordinal,
                    label: dataset::season_label_for(ordinal),
                    value,
                })
                .collect(),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }
}

/// A named hypothesis-test outcome.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum TestOutcome {
    Standard(TestResult),
    Break(BreakResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedTest {
    pub name: String,
    pub result: TestOutcome,
}

/// The structured output of one analysis.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub analysis: AnalysisId,
    pub tables: Vec<Table>,
    pub series: Vec<NamedSeries>,
    pub tests: Vec<NamedTest>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn new(analysis: AnalysisId) -> AnalysisReport {
        AnalysisReport {
            analysis,
            tables: Vec::new(),
            series: Vec::new(),
            tests: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push_test(&mut self, name: &str, result: TestResult) {
        self.tests.push(NamedTest {
            name: name.to_string(),
            result: TestOutcome::Standard(result),
        });
    }

    pub fn push_break_test(&mut self, name: &str, result: BreakResult) {
        self.tests.push(NamedTest {
            name: name.to_string(),
            result: TestOutcome::Break(result),
        });
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn series(&self, name: &str) -> Option<&NamedSeries> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn standard_test(&self, name: &str) -> Option<&TestResult> {
        self.tests.iter().find_map(|t| match (&t.name, &t.result) {
            (n, TestOutcome::Standard(result)) if n == name => Some(result),
            _ => None,
        })
    }

    pub fn break_test(&self, name: &str) -> Option<&BreakResult> {
        self.tests.iter().find_map(|t| match (&t.name, &t.result) {
            (n, TestOutcome::Break(result)) if n == name => Some(result),
            _ => None,
        })
    }
}
