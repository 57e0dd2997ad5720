//! Mann-Whitney U test for two independent samples.

use crate::ranking::{average_ranks, has_ties, tie_term};
use crate::{check, check_finite, Method, Result, TestResult};
use numerics::{mann_whitney_null_cdf, normal_cdf};

/// Largest `n1 * n2` for which the exact null is used.
const EXACT_LIMIT: usize = 400;

/// Mann-Whitney test, two-sided. `U` is the rank-sum statistic of `x`.
///
/// The exact null applies when the pooled sample is tie-free,
/// `n1 * n2 <= 400`, and `force_approx` is not set; otherwise the
/// continuity-corrected normal approximation with tie-corrected variance.
pub fn mann_whitney(x: &[f64], y: &[f64], force_approx: bool) -> Result<TestResult> {
    check(!x.is_empty() && !y.is_empty(), "both groups must be nonempty")?;
    check_finite("x", x)?;
    check_finite("y", y)?;

    let (n1, n2) = (x.len(), y.len());
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let (ranks, tie_sizes) = average_ranks(&pooled);
    let tied = has_ties(&tie_sizes);

    let rank_sum_x: f64 = ranks[..n1].iter().sum();
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let u = rank_sum_x - n1f * (n1f + 1.0) / 2.0;

    let base = |statistic: f64, p: f64, method: Method| {
        TestResult::new(statistic, p, method)
            .with_count("n_x", n1 as u64)
            .with_count("n_y", n2 as u64)
            .with_extra("rank_sum_x", rank_sum_x)
            .with_extra("u_other", n1f * n2f - u)
    };

    if !force_approx && !tied && n1 * n2 <= EXACT_LIMIT {
        let lower = mann_whitney_null_cdf(n1, n2, u)?;
        let upper = 1.0 - mann_whitney_null_cdf(n1, n2, u - 1.0)?;
        let p = (2.0 * lower.min(upper)).min(1.0);
        return Ok(base(u, p, Method::Exact));
    }

    let n = n1f + n2f;
    let mu = n1f * n2f / 2.0;
    let variance = n1f * n2f / 12.0 * ((n + 1.0) - tie_term(&tie_sizes) / (n * (n - 1.0)));
    if variance <= 0.0 {
        // Every pooled value identical: the groups cannot be distinguished.
        let mut result = base(u, 1.0, Method::NormalApprox);
        result.degenerate = true;
        return Ok(result);
    }
    let sigma = variance.sqrt();
    let centered = u - mu;
    let z = if centered == 0.0 {
        0.0
    } else {
        (centered - 0.5 * centered.signum()) / sigma
    };
    let p = (2.0 * normal_cdf(-z.abs())).min(1.0);
    Ok(base(u, p, Method::NormalApprox)
        .with_extra("z", z)
        .with_extra("mu", mu)
        .with_extra("sigma", sigma))
}
