//! Two-sided binomial test with the minimum-likelihood convention.

use crate::{check, Method, Result, TestResult};
use numerics::binomial_pmf;

/// Relative slack when comparing outcome likelihoods, so that outcomes
/// whose probability ties the observed one (up to floating-point noise)
/// are included in the p-value.
const LIKELIHOOD_SLACK: f64 = 1e-7;

/// Two-sided exact binomial test of `k` successes in `n` trials against
/// success probability `p0`.
///
/// The p-value sums the probabilities of every outcome at most as likely
/// as the observed one: `sum of pmf(i) over { i : pmf(i) <= pmf(k) * (1 + 1e-7) }`.
pub fn binomial_test_two_sided(k: u64, n: u64, p0: f64) -> Result<TestResult> {
    check(n >= 1, "binomial test needs at least one trial")?;
    check(k <= n, format!("successes {k} exceed trials {n}"))?;
    check(
        (0.0..=1.0).contains(&p0),
        format!("null probability must lie in [0, 1], got {p0}"),
    )?;

    let observed = binomial_pmf(k, n, p0)?;
    let cutoff = observed * (1.0 + LIKELIHOOD_SLACK);
    let mut p_value = 0.0;
    for i in 0..=n {
        let pi = binomial_pmf(i, n, p0)?;
        if pi <= cutoff {
            p_value += pi;
        }
    }
    Ok(TestResult::new(k as f64, p_value.min(1.0), Method::Exact)
        .with_count("successes", k)
        .with_count("trials", n)
        .with_extra("null_probability", p0)
        .with_extra("observed_pmf", observed))
}
