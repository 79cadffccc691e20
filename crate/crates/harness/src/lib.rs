//! Experiment driver: JSON configuration in, trial CSVs and summary JSON out.

pub mod analysis;
pub mod config;
pub mod experiments;

use thiserror::Error;

use sparta_core::objectives::ObjectiveError;
use sparta_core::optimizer::OptimizerError;
use sparta_core::quantum::QuantumError;
use sparta_core::stats::StatsError;

pub use analysis::{analyze_dir, compare, ComparisonSummary, MethodSummary, TrialOutcome};
pub use config::{ExperimentConfig, ExperimentKind, DEFAULT_SEEDS};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("analysis: {0}")]
    Analysis(String),

    #[error(transparent)]
    Optimizer(#[from] OptimizerError),

    #[error(transparent)]
    Objective(#[from] ObjectiveError),

    #[error(transparent)]
    Quantum(#[from] QuantumError),

    #[error(transparent)]
    Stats(#[from] StatsError),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl HarnessError {
    /// 2 for configuration problems, 3 for an infeasible budget, 4 for a failed
    /// `--check`, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Optimizer(OptimizerError::InvalidConfig(_)) => 2,
            HarnessError::Optimizer(OptimizerError::InsufficientBudget { .. }) => 3,
            HarnessError::CheckFailed(_) => 4,
            _ => 1,
        }
    }
}
