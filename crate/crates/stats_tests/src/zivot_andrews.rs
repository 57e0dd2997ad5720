//! Zivot-Andrews unit-root test allowing one endogenous break in both
//! level and trend.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::{check, check_finite, Alternative, Method, Result, StatsError, TestResult};
use numerics::{ols_fit, NumericsError};

/// Critical values for the model with breaks in both intercept and trend,
/// at the 1%, 5%, and 10% levels.
pub const CRITICAL_VALUES: [(f64, f64); 3] = [(0.01, -5.57), (0.05, -5.08), (0.10, -4.82)];

/// Outcome against one tabulated significance level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Reject,
    FailToReject,
}

/// Result of the structural-break unit-root test.
#[derive(Debug, Clone, Serialize)]
pub struct BreakResult {
    /// Statistic, bracketed p-value, and audit counts. `p_value` holds the
    /// conservative upper edge of the bracket (1.0 when the statistic
    /// clears no critical value); `p_bracket` states the bracket itself.
    pub base: TestResult,
    /// 1-based position of the located break in the input series.
    pub break_position: usize,
    /// Label of the break position, taken from the supplied labels.
    pub break_label: String,
    /// Reject/fail-to-reject at each tabulated significance level.
    pub decision_at: BTreeMap<String, Decision>,
    /// Human-readable p bracket, e.g. "> 0.10".
    pub p_bracket: String,
}

/// Zivot-Andrews test on `values` with per-observation `labels`.
///
/// For every candidate break position tau in the trimmed interior, fits
/// `dy_t ~ {1, t, DU_t, DT_t, y_(t-1), dy_(t-1..t-lags)}` where
/// `DU_t = 1[t > tau]`, `DT_t = (t - tau) 1[t > tau]`, and takes the
/// t-statistic on the `y_(t-1)` coefficient; the reported statistic is the
/// minimum over tau and the break is its argmin. Candidates whose design
/// is rank deficient are skipped and counted.
pub fn zivot_andrews(
    values: &[f64],
    labels: &[String],
    lags: usize,
    trim: f64,
) -> Result<BreakResult> {
    let n = values.len();
    check(
        labels.len() == n,
        format!("labels length {} does not match series length {n}", labels.len()),
    )?;
    check_finite("series", values)?;
    check(
        trim > 0.0 && trim < 0.5,
        format!("trim fraction must lie in (0, 0.5), got {trim}"),
    )?;
    check(
        n >= lags + 10,
        format!("series of length {n} is too short for {lags} lags"),
    )?;

    let nf = n as f64;
    let lo = ((trim * nf).ceil() as usize).max(2);
    let hi = (((1.0 - trim) * nf).floor() as usize).min(n - 2);
    check(
        lo <= hi,
        format!("trim {trim} leaves no candidate break positions for length {n}"),
    )?;

    // Regression rows are t = lags + 2 ..= n (1-based), so that y_(t-1)
    // and all lagged differences exist.
    let t_first = lags + 2;
    let rows = n - lags - 1;
    let params = 5 + lags;
    check(
        rows > params,
        format!("series of length {n} leaves {rows} rows for {params} parameters"),
    )?;

    let response: Vec<f64> = (t_first..=n).map(|t| values[t - 1] - values[t - 2]).collect();

    let mut best: Option<(f64, usize)> = None;
    let mut skipped = 0u64;
    for tau in lo..=hi {
        let design: Vec<Vec<f64>> = (t_first..=n)
            .map(|t| {
                let mut row = Vec::with_capacity(params);
                row.push(1.0);
                row.push(t as f64);
                row.push(if t > tau { 1.0 } else { 0.0 });
                row.push(if t > tau { (t - tau) as f64 } else { 0.0 });
                row.push(values[t - 2]);
                for j in 1..=lags {
                    row.push(values[t - 1 - j] - values[t - 2 - j]);
                }
                row
            })
            .collect();
        let fit = match ols_fit(&design, &response) {
            Ok(fit) => fit,
            Err(NumericsError::SingularDesign { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(StatsError::Numerics(e)),
        };
        let t_stat = fit.coefficients[4] / fit.standard_errors[4];
        // A candidate that fits the data exactly has no residual variance
        // and no usable t-statistic.
        if !t_stat.is_finite() {
            skipped += 1;
            continue;
        }
        if best.map_or(true, |(s, _)| t_stat < s) {
            best = Some((t_stat, tau));
        }
    }

    let (statistic, break_position) = best.ok_or_else(|| {
        StatsError::InvalidInput("every candidate break position was rank deficient".into())
    })?;

    let mut decision_at = BTreeMap::new();
    for (level, cv) in CRITICAL_VALUES {
        let reject = statistic < cv;
        decision_at.insert(
            format!("{level:.2}"),
            if reject { Decision::Reject } else { Decision::FailToReject },
        );
    }
    // Rejection is monotone in the level (the critical values increase), so
    // the first rejecting level is the bracket's upper edge and the level
    // just before it is the lower edge.
    let mut p_upper = 1.0;
    let mut lower_edge = 0.0;
    for (level, cv) in CRITICAL_VALUES {
        if statistic < cv {
            p_upper = level;
            break;
        }
        lower_edge = level;
    }
    let p_bracket = if p_upper <= 0.01 {
        "< 0.01".to_string()
    } else if p_upper < 1.0 {
        format!("{lower_edge:.2} - {p_upper:.2}")
    } else {
        format!("> {lower_edge:.2}")
    };

    let mut base = TestResult::new(statistic, p_upper, Method::CriticalValues)
        .with_count("observations", n as u64)
        .with_count("lags", lags as u64)
        .with_count("regression_rows", rows as u64)
        .with_count("candidate_breaks", (hi - lo + 1) as u64)
        .with_extra("break_index", break_position as f64)
        .with_extra("skipped_candidates", skipped as f64);
    for (level, cv) in CRITICAL_VALUES {
        base = base.with_extra(&format!("critical_value_{level:.2}"), cv);
    }
    base.alternative = Alternative::Less;

    Ok(BreakResult {
        base,
        break_position,
        break_label: labels[break_position - 1].clone(),
        decision_at,
        p_bracket,
    })
}
