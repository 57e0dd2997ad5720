//! Numerical building blocks for the statistics crates.
//!
//! Four areas, each in its own module:
//! - [`special`]: error function, gamma-family integrals, and the
//!   distribution functions (normal, Student t, chi-square) built on them,
//!   plus a log-space binomial mass function.
//! - [`exact`]: exact null distributions for the small-sample rank tests
//!   (Wilcoxon signed rank, Mann-Whitney, Spearman's S).
//! - [`ols`]: least squares via Householder QR with column pivoting.
//! - [`rng`]: a seeded, counter-based random stream with independent
//!   substreams, used by the Monte Carlo tests.
//!
//! Everything here is deterministic: no global state, no platform-dependent
//! intrinsics beyond IEEE 754 double arithmetic.

use thiserror::Error;

pub mod exact;
pub mod ols;
pub mod rng;
pub mod special;

pub use exact::{
    mann_whitney_null_cdf, signed_rank_null_cdf, spearman_tail_prob, spearman_upper_prob,
};
pub use ols::{ols_fit, LinearFit};
pub use rng::RandomStream;
pub use special::{
    binomial_pmf, chi_square_cdf, erf, erfc, ln_gamma, normal_cdf, student_t_cdf,
};

/// Errors produced by the numerical routines.
#[derive(Debug, Error)]
pub enum NumericsError {
    /// An argument was outside the domain a routine supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// The design matrix passed to the least-squares solver is rank
    /// deficient. `column` is the zero-based index of the first input
    /// column that could not be used.
    #[error("design matrix is singular at column {column}")]
    SingularDesign { column: usize },
}

pub type Result<T> = std::result::Result<T, NumericsError>;
