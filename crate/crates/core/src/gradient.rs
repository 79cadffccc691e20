use serde::{Deserialize, Serialize};

/// Per-coordinate gradient estimate from one round of measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientEstimate {
    pub mean: Vec<f64>,
    /// Estimator variance of each coordinate, `σ_i² / B_i`.
    pub variance: Vec<f64>,
    /// Shots spent on each coordinate.
    pub shots: Vec<u64>,
}

impl GradientEstimate {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn total_shots(&self) -> u64 {
        self.shots.iter().sum()
    }

    /// Single-shot standard deviation `σ_i = sqrt(variance_i · B_i)`.
    pub fn per_shot_sd(&self) -> Vec<f64> {
        self.variance
            .iter()
            .zip(&self.shots)
            .map(|(v, &b)| (v * b as f64).sqrt())
            .collect()
    }

    pub fn norm(&self) -> f64 {
        self.mean.iter().map(|g| g * g).sum::<f64>().sqrt()
    }
}
