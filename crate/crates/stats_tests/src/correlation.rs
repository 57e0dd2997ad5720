//! Pearson and Spearman correlation tests.

use crate::ranking::{average_ranks, has_ties};
use crate::{check, check_finite, Method, Result, StatsError, TestResult};
use numerics::exact::{spearman_upper_prob, SPEARMAN_EXACT_MAX};
use numerics::{spearman_tail_prob, student_t_cdf};

fn validate_pair(x: &[f64], y: &[f64]) -> Result<usize> {
    check(
        x.len() == y.len(),
        format!("correlation needs equal lengths, got {} and {}", x.len(), y.len()),
    )?;
    check(
        x.len() >= 3,
        format!("correlation needs at least 3 observations, got {}", x.len()),
    )?;
    check_finite("x", x)?;
    check_finite("y", y)?;
    Ok(x.len())
}

/// Product-moment correlation of two equal-length samples.
/// Errors when either sample has zero variance.
fn product_moment(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let da = a - mx;
        let db = b - my;
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(StatsError::InvalidInput(
            "correlation is undefined for a constant sample".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlation test. The headline statistic is
/// `t = r sqrt(n-2) / sqrt(1-r^2)` with `r` itself in the extras.
pub fn pearson_test(x: &[f64], y: &[f64]) -> Result<TestResult> {
    let n = validate_pair(x, y)?;
    let r = product_moment(x, y)?;
    let df = (n - 2) as f64;

    if 1.0 - r * r <= f64::EPSILON {
        // Perfectly linear data: the t statistic diverges.
        let mut result = TestResult::new(f64::INFINITY.copysign(r), 0.0, Method::TApprox)
            .with_count("observations", n as u64)
            .with_extra("r", r)
            .with_extra("degrees_of_freedom", df);
        result.degenerate = true;
        return Ok(result);
    }

    let t = r * (df / (1.0 - r * r)).sqrt();
    let p = (2.0 * (1.0 - student_t_cdf(t.abs(), df)?)).min(1.0);
    Ok(TestResult::new(t, p, Method::TApprox)
        .with_count("observations", n as u64)
        .with_extra("r", r)
        .with_extra("degrees_of_freedom", df))
}

/// Spearman rank correlation test. The headline statistic is
/// `S = (1 - rho) * n (n^2 - 1) / 6`, rho itself in the extras.
///
/// Tie-free samples use the exact null of S up to n = 9 and the Edgeworth
/// expansion beyond; any tie switches to the t approximation.
pub fn spearman_test(x: &[f64], y: &[f64]) -> Result<TestResult> {
    let n = validate_pair(x, y)?;
    let (rx, tx) = average_ranks(x);
    let (ry, ty) = average_ranks(y);
    let tied = has_ties(&tx) || has_ties(&ty);

    let rho = product_moment(&rx, &ry)?;
    let nf = n as f64;
    let s = (1.0 - rho) * nf * (nf * nf - 1.0) / 6.0;

    let base = |statistic: f64, p: f64, method: Method| {
        TestResult::new(statistic, p, method)
            .with_count("observations", n as u64)
            .with_extra("rho", rho)
    };

    if tied {
        let df = nf - 2.0;
        if 1.0 - rho * rho <= f64::EPSILON {
            let mut result = base(s, 0.0, Method::TApprox).with_extra("degrees_of_freedom", df);
            result.degenerate = true;
            return Ok(result);
        }
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let p = (2.0 * (1.0 - student_t_cdf(t.abs(), df)?)).min(1.0);
        return Ok(base(s, p, Method::TApprox)
            .with_extra("t", t)
            .with_extra("degrees_of_freedom", df));
    }

    // Tie-free: S is an even integer and its exact null applies.
    let lower = spearman_tail_prob(n, s.round())?;
    let upper = spearman_upper_prob(n, s.round())?;
    let p = (2.0 * lower.min(upper)).min(1.0);
    let method = if n <= SPEARMAN_EXACT_MAX {
        Method::Exact
    } else {
        Method::Edgeworth
    };
    Ok(base(s, p, method))
}
