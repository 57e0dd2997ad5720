//! Ordinary least squares via Householder QR with column pivoting.
//!
//! Pivoting makes rank deficiency detectable and attributable: when a pivot
//! column's remaining norm falls below a scaled tolerance the fit is refused
//! with the index of the offending input column, instead of silently
//! returning an unstable solution.

use crate::{NumericsError, Result};

/// A fitted least-squares model.
#[derive(Debug, Clone)]
pub struct LinearFit {
    /// Coefficient estimates, in the column order of the design matrix.
    pub coefficients: Vec<f64>,
    /// Standard errors of the coefficients, from s^2 (X'X)^-1.
    pub standard_errors: Vec<f64>,
    /// Residuals y - X beta, one per observation.
    pub residuals: Vec<f64>,
    /// Residual degrees of freedom, rows minus columns.
    pub degrees_of_freedom: usize,
}

/// Fit `response ~ design` by least squares.
///
/// `design` is row-major: one inner slice per observation. Requires more
/// rows than columns and a full-rank design; a rank-deficient design fails
/// with [`NumericsError::SingularDesign`] naming the first unusable column.
pub fn ols_fit(design: &[Vec<f64>], response: &[f64]) -> Result<LinearFit> {
    let m = design.len();
    if m == 0 {
        return Err(NumericsError::Domain("empty design matrix".into()));
    }
    let n = design[0].len();
    if n == 0 {
        return Err(NumericsError::Domain("design matrix has no columns".into()));
    }
    if design.iter().any(|row| row.len() != n) {
        return Err(NumericsError::Domain(
            "design matrix rows have inconsistent lengths".into(),
        ));
    }
    if response.len() != m {
        return Err(NumericsError::Domain(format!(
            "response length {} does not match row count {m}",
            response.len()
        )));
    }
    if m <= n {
        return Err(NumericsError::Domain(format!(
            "least squares needs more rows than columns, got {m} rows for {n} columns"
        )));
    }
    let finite_ok = design.iter().flatten().all(|v| v.is_finite())
        && response.iter().all(|v| v.is_finite());
    if !finite_ok {
        return Err(NumericsError::Domain(
            "design matrix and response must be finite".into(),
        ));
    }

    // Column-major working copy of the design, plus the response.
    let mut a: Vec<Vec<f64>> = (0..n).map(|j| design.iter().map(|r| r[j]).collect()).collect();
    let mut qty: Vec<f64> = response.to_vec();
    let mut pivot: Vec<usize> = (0..n).collect();

    let scale = a
        .iter()
        .map(|col| col.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = scale * (m.max(n) as f64) * f64::EPSILON * 8.0;

    let mut rdiag = vec![0.0f64; n];
    for k in 0..n {
        // Pivot: bring the remaining column with the largest residual norm
        // to position k.
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let norm: f64 = a[j][k..].iter().map(|v| v * v).sum();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        a.swap(k, best);
        pivot.swap(k, best);
        let norm = best_norm.sqrt();
        if !(norm > tol) {
            return Err(NumericsError::SingularDesign { column: pivot[k] });
        }

        // Householder vector for column k.
        let alpha = if a[k][k] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(k) {
                let dot: f64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi * ci).sum();
                let f = 2.0 * dot / vnorm2;
                for (vi, ci) in v.iter().zip(col[k..].iter_mut()) {
                    *ci -= f * vi;
                }
            }
            let dot: f64 = v.iter().zip(&qty[k..]).map(|(vi, yi)| vi * yi).sum();
            let f = 2.0 * dot / vnorm2;
            for (vi, yi) in v.iter().zip(qty[k..].iter_mut()) {
                *yi -= f * vi;
            }
        }
        a[k][k] = alpha;
        rdiag[k] = alpha;
        if rdiag[k].abs() <= tol {
            return Err(NumericsError::SingularDesign { column: pivot[k] });
        }
    }

    // Back-substitute R z = (Q'y)[..n], then undo the pivot.
    let mut z = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = qty[i];
        for j in (i + 1)..n {
            acc -= a[j][i] * z[j];
        }
        z[i] = acc / a[i][i];
    }
    let mut coefficients = vec![0.0f64; n];
    for (j, &pj) in pivot.iter().enumerate() {
        coefficients[pj] = z[j];
    }

    // Residuals from the original data, not the transformed copy.
    let residuals: Vec<f64> = design
        .iter()
        .zip(response)
        .map(|(row, &y)| y - row.iter().zip(&coefficients).map(|(x, b)| x * b).sum::<f64>())
        .collect();
    let dof = m - n;
    let rss: f64 = residuals.iter().map(|r| r * r).sum();
    let s2 = rss / dof as f64;

    // R^-1 by back substitution; var(beta_pivoted) = s^2 * rowsumsq(R^-1).
    let mut rinv = vec![vec![0.0f64; n]; n];
    for j in (0..n).rev() {
        rinv[j][j] = 1.0 / a[j][j];
        for i in (0..j).rev() {
            let mut acc = 0.0;
            for k in (i + 1)..=j {
                acc += a[k][i] * rinv[k][j];
            }
            rinv[i][j] = -acc / a[i][i];
        }
    }
    let mut standard_errors = vec![0.0f64; n];
    for (j, &pj) in pivot.iter().enumerate() {
        let var: f64 = (j..n).map(|k| rinv[j][k] * rinv[j][k]).sum();
        standard_errors[pj] = (s2 * var).sqrt();
    }

    Ok(LinearFit {
        coefficients,
        standard_errors,
        residuals,
        degrees_of_freedom: dof,
    })
}
