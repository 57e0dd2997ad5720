//! Wilcoxon signed-rank test for paired samples.

use crate::ranking::{average_ranks, has_ties, tie_term};
use crate::{check, check_finite, Method, Result, TestResult};
use numerics::{normal_cdf, signed_rank_null_cdf};

/// Largest number of nonzero differences for which the exact null is used.
const EXACT_LIMIT: usize = 25;

/// Paired Wilcoxon signed-rank test, two-sided.
///
/// Differences of exactly zero are dropped (the count is recorded).
/// The exact null distribution is used when at most [`EXACT_LIMIT`]
/// differences remain, none of their magnitudes tie, and `force_approx` is
/// not set; otherwise the continuity-corrected normal approximation with
/// tie-corrected variance applies.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64], force_approx: bool) -> Result<TestResult> {
    check(
        x.len() == y.len(),
        format!("paired test needs equal lengths, got {} and {}", x.len(), y.len()),
    )?;
    check(!x.is_empty(), "paired test needs at least one pair")?;
    check_finite("x", x)?;
    check_finite("y", y)?;

    let supplied = x.len() as u64;
    let diffs: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    let zeros = supplied - diffs.len() as u64;
    let n = diffs.len();

    if n == 0 {
        let mut result = TestResult::new(0.0, 1.0, Method::Exact)
            .with_count("pairs_supplied", supplied)
            .with_count("zeros_dropped", zeros)
            .with_count("pairs_used", 0);
        result.degenerate = true;
        return Ok(result);
    }

    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let (ranks, tie_sizes) = average_ranks(&abs);
    let tied = has_ties(&tie_sizes);
    let v: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();

    let nf = n as f64;
    let total = nf * (nf + 1.0) / 2.0;

    let (p_value, method, mut extras): (f64, Method, Vec<(&str, f64)>) =
        if !force_approx && !tied && n <= EXACT_LIMIT {
            let lower = signed_rank_null_cdf(n, v)?;
            let upper = 1.0 - signed_rank_null_cdf(n, v - 1.0)?;
            (
                (2.0 * lower.min(upper)).min(1.0),
                Method::Exact,
                Vec::new(),
            )
        } else {
            let mu = total / 2.0;
            let variance = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term(&tie_sizes) / 48.0;
            if variance <= 0.0 {
                // Only possible when every difference magnitude is tied into
                // one group of size n with pathological cancellation; treat
                // as no evidence.
                let mut result = TestResult::new(v, 1.0, Method::NormalApprox)
                    .with_count("pairs_supplied", supplied)
                    .with_count("zeros_dropped", zeros)
                    .with_count("pairs_used", n as u64);
                result.degenerate = true;
                return Ok(result);
            }
            let sigma = variance.sqrt();
            let centered = v - mu;
            let z = if centered == 0.0 {
                0.0
            } else {
                (centered - 0.5 * centered.signum()) / sigma
            };
            let p = (2.0 * normal_cdf(-z.abs())).min(1.0);
            (p, Method::NormalApprox, vec![("z", z), ("mu", mu), ("sigma", sigma)])
        };

    extras.push(("rank_sum_total", total));
    let mut result = TestResult::new(v, p_value, method)
        .with_count("pairs_supplied", supplied)
        .with_count("zeros_dropped", zeros)
        .with_count("pairs_used", n as u64);
    for (k, val) in extras {
        result = result.with_extra(k, val);
    }
    Ok(result)
}
