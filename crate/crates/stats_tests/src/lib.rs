//! Hypothesis-testing procedures over plain numeric inputs.
//!
//! Every test returns a [`TestResult`] carrying the statistic, the p-value,
//! which computational branch produced it, and enough counts to audit the
//! decision. The structural-break test returns a [`BreakResult`] wrapping a
//! `TestResult` with the located break and per-level decisions.
//!
//! Branch selection is explicit and conservative: exact null distributions
//! are used when the sample is small and untied, and the approximations
//! (continuity-corrected normal, t, chi-square, Edgeworth) take over where
//! exactness is unavailable. Callers can force the approximation branch to
//! mirror software that never goes exact.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

mod binomial;
mod correlation;
mod friedman;
mod mann_whitney;
mod multinomial;
mod ranking;
mod runs;
mod wilcoxon;
mod zivot_andrews;

pub use binomial::binomial_test_two_sided;
pub use correlation::{pearson_test, spearman_test};
pub use friedman::friedman_test;
pub use mann_whitney::mann_whitney;
pub use multinomial::{multinomial_mc_gof, FinalFourObservation};
pub use runs::runs_test;
pub use wilcoxon::wilcoxon_signed_rank;
pub use zivot_andrews::{zivot_andrews, BreakResult, Decision};

/// Errors shared by the test procedures.
#[derive(Debug, Error)]
pub enum StatsError {
    /// The input data cannot support the requested test (wrong shape,
    /// degenerate variance, out-of-range parameter).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A lower-level numerical routine refused its arguments.
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
}

pub type Result<T> = std::result::Result<T, StatsError>;

/// Which computational branch produced a p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exact finite null distribution.
    Exact,
    /// Normal approximation (continuity-corrected where applicable).
    NormalApprox,
    /// Student-t approximation.
    TApprox,
    /// Chi-square approximation.
    ChiSquareApprox,
    /// Edgeworth expansion of an exact null.
    Edgeworth,
    /// Monte Carlo estimate.
    MonteCarlo,
    /// Comparison against tabulated critical values; the p-value is a
    /// bracket edge, not a point estimate.
    CriticalValues,
}

/// Tail convention of the reported p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    TwoSided,
    Greater,
    Less,
}

/// Uniform result of a hypothesis test.
#[derive(Debug, Clone, Serialize)]
pub struct TestResult {
    /// The test's headline statistic (V, U, z, t, S, chi-square, ...).
    pub statistic: f64,
    /// Two-sided unless `alternative` says otherwise; always in [0, 1].
    pub p_value: f64,
    /// Computational branch that produced the p-value.
    pub method: Method,
    pub alternative: Alternative,
    /// Method-specific counts: pairs used, zeros dropped, group sizes,
    /// runs, iterations, and the like.
    pub n_summary: BTreeMap<String, u64>,
    /// Optional named reals: mc_standard_error, tie_correction,
    /// critical values, secondary statistics.
    pub extras: BTreeMap<String, f64>,
    /// Set when the data admit only a trivial answer (all differences
    /// zero, all values tied): the p-value is then 1 by convention and the
    /// statistic carries no evidence.
    pub degenerate: bool,
}

impl TestResult {
    fn new(statistic: f64, p_value: f64, method: Method) -> Self {
        TestResult {
            statistic,
            p_value,
            method,
            alternative: Alternative::TwoSided,
            n_summary: BTreeMap::new(),
            extras: BTreeMap::new(),
            degenerate: false,
        }
    }

    fn with_count(mut self, key: &str, value: u64) -> Self {
        self.n_summary.insert(key.to_string(), value);
        self
    }

    fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(StatsError::InvalidInput(msg.into()))
    }
}

fn require_finite(name: &str, values: &[f64]) -> Result<()> {
    require(
        values.iter().all(|v| v.is_finite()),
        format!("{name} contains non-finite values"),
    )
}

pub(crate) use {require as check, require_finite as check_finite};
