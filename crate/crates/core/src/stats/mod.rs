//! Special functions and the classical tests used by the scheduler and the harness.
//!
//! Everything here is a pure function of its arguments.

mod chi2;
mod hypothesis;
pub mod special;
mod student;

use thiserror::Error;

pub use chi2::{chi2_cdf, chi2_pdf, noncentral_chi2_cdf, noncentral_chi2_pdf, noncentral_log_ratio};
pub use hypothesis::{
    clopper_pearson_upper, cohens_d, kolmogorov_sf, ks_test, mean, one_sided_ucb, paired_t_test,
    sample_variance, welch_ucb, wilcoxon_signed_rank, BoundSide, ConfidenceBound, KsResult,
    TestOutcome,
};
pub use student::{t_cdf, t_quantile, t_sf};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}
