use std::path::Path;

use serde::{Deserialize, Serialize};
use sparta_core::objectives::LandscapeConfig;
use sparta_core::optimizer::SpartaConfig;
use sparta_core::quantum::{PauliSum, ShotNoiseModel};

use crate::HarnessError;

pub const DEFAULT_SEEDS: [u64; 10] = [42, 123, 456, 789, 1011, 2022, 3033, 4044, 5055, 6066];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    ValidateChisq,
    #[default]
    RunTfim,
    RunLie,
    RunScaling,
}

/// Transverse-field Ising QAOA instance and the start-point distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TfimConfig {
    pub n: usize,
    pub j: f64,
    pub h: f64,
    pub depth: usize,
    pub noise: ShotNoiseModel,
    /// Overrides the chain built from `(n, j, h)`.
    pub hamiltonian: Option<PauliSum>,
    pub gamma0: f64,
    pub beta0: f64,
    /// Half-width of the uniform perturbation around `(gamma0, beta0)`.
    pub spread: f64,
}

impl Default for TfimConfig {
    fn default() -> Self {
        Self {
            n: 6,
            j: 1.0,
            h: 0.5,
            depth: 2,
            noise: ShotNoiseModel::default(),
            hamiltonian: None,
            gamma0: 0.5,
            beta0: 0.4,
            spread: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ValidationConfig {
    pub samples: usize,
    pub shots: u64,
    /// Seed whose start point the plateau search begins from.
    pub start_seed: u64,
    pub plateau_steps: usize,
    pub plateau_tolerance: f64,
    pub informative_range: (f64, f64),
    pub walk_step: f64,
    pub max_walk_steps: usize,
    pub p_threshold: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            samples: 5000,
            shots: 100,
            start_seed: 42,
            plateau_steps: 200,
            plateau_tolerance: 1e-4,
            informative_range: (0.5, 1.2),
            walk_step: 0.05,
            max_walk_steps: 100_000,
            p_threshold: 1e-3,
        }
    }
}

/// The synthetic plateau experiment; its optimizer settings are separate from
/// the spin-chain ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LieConfig {
    pub landscape: LandscapeConfig,
    pub sparta: SpartaConfig,
    pub n_seeds: usize,
    pub p_dir_directions: usize,
    pub exit_iterations: usize,
    pub sparta_threshold: f64,
    pub gcans_threshold: f64,
}

impl Default for LieConfig {
    fn default() -> Self {
        let mut sparta = SpartaConfig { budget_total: 250_000, eta: 0.01, b_test: 20, ..Default::default() };
        sparta.ptr.shots_per_eval = 1;
        Self {
            // Unit per-shot noise, as for a single ±1 measurement outcome.
            landscape: LandscapeConfig { noise_sigma: 1.0, ..Default::default() },
            sparta,
            n_seeds: 5,
            p_dir_directions: 10_000,
            exit_iterations: 500,
            sparta_threshold: -25.0,
            gcans_threshold: -5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScalingConfig {
    pub sizes: Vec<usize>,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        Self { sizes: vec![2, 4, 6, 8] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub seeds: Vec<u64>,
    pub tfim: TfimConfig,
    pub sparta: SpartaConfig,
    pub validation: ValidationConfig,
    pub lie: LieConfig,
    pub scaling: ScalingConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: ExperimentKind::RunTfim,
            seeds: DEFAULT_SEEDS.to_vec(),
            tfim: TfimConfig::default(),
            sparta: SpartaConfig::default(),
            validation: ValidationConfig::default(),
            lie: LieConfig::default(),
            scaling: ScalingConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let cfg: Self = serde_json::from_str(&text)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.seeds.is_empty() {
            return Err(HarnessError::Config("seeds must be non-empty".into()));
        }
        if self.tfim.n < 2 || self.tfim.depth == 0 {
            return Err(HarnessError::Config("tfim needs n >= 2 and depth >= 1".into()));
        }
        if self.validation.samples < 8 {
            return Err(HarnessError::Config("validation needs at least 8 samples".into()));
        }
        if self.lie.n_seeds == 0 {
            return Err(HarnessError::Config("lie.n_seeds must be >= 1".into()));
        }
        self.tfim.noise.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        for cfg in [&self.sparta, &self.lie.sparta] {
            cfg.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        Ok(())
    }

    /// Apply `--seeds` and `--budget` overrides.
    pub fn with_overrides(mut self, seeds: Option<Vec<u64>>, budget: Option<u64>) -> Result<Self, HarnessError> {
        if let Some(s) = seeds {
            self.seeds = s;
        }
        if let Some(b) = budget {
            self.sparta.budget_total = b;
            self.lie.sparta.budget_total = b;
        }
        self.validate()?;
        Ok(self)
    }
}
