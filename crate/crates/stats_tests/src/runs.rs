//! Wald-Wolfowitz runs test for randomness of a sign sequence.

use crate::{check, check_finite, Method, Result, StatsError, TestResult};
use numerics::normal_cdf;

/// Runs test on the signs of `values` relative to `threshold`.
///
/// Values exactly equal to the threshold are dropped (count recorded).
/// The statistic is `z = (R - mu) / sigma` with the exact Wald-Wolfowitz
/// moments `mu = 2 n1 n2 / n + 1` and
/// `sigma^2 = (mu - 1)(mu - 2) / (n - 1)`, with no continuity correction.
pub fn runs_test(values: &[f64], threshold: f64) -> Result<TestResult> {
    check(!values.is_empty(), "runs test needs a nonempty sequence")?;
    check_finite("values", values)?;
    check(threshold.is_finite(), "threshold must be finite")?;

    let signs: Vec<bool> = values
        .iter()
        .filter(|v| **v != threshold)
        .map(|v| *v > threshold)
        .collect();
    let dropped = values.len() - signs.len();
    let n1 = signs.iter().filter(|s| **s).count();
    let n2 = signs.len() - n1;

    if n1 == 0 || n2 == 0 {
        return Err(StatsError::InvalidInput(format!(
            "runs test needs both signs present, got {n1} above and {n2} below the threshold"
        )));
    }

    let runs = 1 + signs.windows(2).filter(|w| w[0] != w[1]).count();

    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let n = n1f + n2f;
    let mu = 2.0 * n1f * n2f / n + 1.0;
    let variance = (mu - 1.0) * (mu - 2.0) / (n - 1.0);

    let counts = |tr: TestResult| {
        tr.with_count("n_above", n1 as u64)
            .with_count("n_below", n2 as u64)
            .with_count("runs", runs as u64)
            .with_count("dropped_at_threshold", dropped as u64)
    };

    if variance <= 0.0 {
        // n1 = n2 = 1 gives mu = 2 and zero variance: two observations
        // cannot speak to randomness.
        let mut result = counts(TestResult::new(0.0, 1.0, Method::NormalApprox))
            .with_extra("mu", mu);
        result.degenerate = true;
        return Ok(result);
    }

    let sigma = variance.sqrt();
    let z = (runs as f64 - mu) / sigma;
    let p = (2.0 * normal_cdf(-z.abs())).min(1.0);
    Ok(counts(TestResult::new(z, p, Method::NormalApprox))
        .with_extra("mu", mu)
        .with_extra("sigma", sigma))
}
