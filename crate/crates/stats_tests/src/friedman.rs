//! Friedman rank test for treatments across blocks.

use crate::ranking::{average_ranks, tie_term};
use crate::{check, check_finite, Method, Result, TestResult};
use numerics::chi_square_cdf;

/// Friedman test on a blocks-by-treatments table.
///
/// Each row is ranked with average ranks; the chi-square statistic is
/// divided by the tie-correction factor
/// `1 - sum(t^3 - t) / (n * k * (k^2 - 1))`. A table in which every block
/// is completely tied carries no information and comes back degenerate
/// with p = 1.
pub fn friedman_test(table: &[Vec<f64>]) -> Result<TestResult> {
    let n = table.len();
    check(n >= 2, format!("friedman test needs at least 2 blocks, got {n}"))?;
    let k = table[0].len();
    check(
        k >= 2,
        format!("friedman test needs at least 2 treatments, got {k}"),
    )?;
    check(
        table.iter().all(|row| row.len() == k),
        "friedman table rows have inconsistent lengths",
    )?;
    for row in table {
        check_finite("friedman table", row)?;
    }

    let (nf, kf) = (n as f64, k as f64);
    let mut rank_sums = vec![0.0f64; k];
    let mut ties = 0.0f64;
    for row in table {
        let (ranks, tie_sizes) = average_ranks(row);
        for (j, r) in ranks.iter().enumerate() {
            rank_sums[j] += r;
        }
        ties += tie_term(&tie_sizes);
    }

    let correction = 1.0 - ties / (nf * kf * (kf * kf - 1.0));
    let raw = 12.0 / (nf * kf * (kf + 1.0)) * rank_sums.iter().map(|r| r * r).sum::<f64>()
        - 3.0 * nf * (kf + 1.0);

    let df = kf - 1.0;
    if correction <= 0.0 {
        // Every block fully tied: no evidence at all.
        let mut result = TestResult::new(0.0, 1.0, Method::ChiSquareApprox)
            .with_count("blocks", n as u64)
            .with_count("treatments", k as u64)
            .with_extra("degrees_of_freedom", df)
            .with_extra("tie_correction", 0.0);
        result.degenerate = true;
        return Ok(result);
    }

    let statistic = (raw / correction).max(0.0);
    let p_value = 1.0 - chi_square_cdf(statistic, df)?;
    Ok(TestResult::new(statistic, p_value, Method::ChiSquareApprox)
        .with_count("blocks", n as u64)
        .with_count("treatments", k as u64)
        .with_extra("degrees_of_freedom", df)
        .with_extra("tie_correction", correction))
}
