//! Sequential plateau-vs-informative test on the whitened gradient statistic.
//!
//! Each round contributes `ℓ = (s - d)/2 - λ₁/2` to the cumulative
//! log-likelihood `Λ_k`. The test reports a plateau once `Λ_k ≤ B`, an
//! informative region once `Λ_k ≥ A`, and otherwise asks for another round.
//! Ville thresholds `(ln 1/α, ln β)` hold at every stopping time; Wald
//! thresholds `(ln((1-β)/α), ln(β/(1-α)))` give shorter tests for i.i.d. rounds.
//!
//! An exact log-density-ratio increment is available for comparison; the
//! linear increment is the default.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gradient::GradientEstimate;
use crate::stats::{noncentral_log_ratio, StatsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegimeError {
    #[error("invalid regime-test configuration: {0}")]
    InvalidConfig(String),

    #[error("length mismatch: gradient has {grad} coordinates, {what} has {other}")]
    LengthMismatch { grad: usize, what: &'static str, other: usize },

    #[error("variance of coordinate {index} must be positive, got {value}")]
    NonPositiveVariance { index: usize, value: f64 },

    #[error("coordinate {index} was allotted zero shots")]
    ZeroShots { index: usize },

    #[error("test already decided {0:?}; start a new test")]
    AlreadyDecided(Decision),

    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// `s = Σ_i (B_i / σ_i²) ĝ_i²` together with the inputs it was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhitenedStatistic {
    pub s: f64,
    pub d: usize,
    pub shots_per_coord: Vec<u64>,
    pub sigma_sq: Vec<f64>,
}

/// Whiten a gradient estimate with per-shot variances `sigma_sq` and allocation `shots`.
///
/// The same allocation must be the one the estimate was measured with, which keeps
/// each component standard normal under a zero gradient whatever the allocation.
pub fn whiten(
    grad: &GradientEstimate,
    sigma_sq: &[f64],
    shots: &[u64],
) -> Result<WhitenedStatistic, RegimeError> {
    let d = grad.dim();
    if sigma_sq.len() != d {
        return Err(RegimeError::LengthMismatch { grad: d, what: "sigma_sq", other: sigma_sq.len() });
    }
    if shots.len() != d {
        return Err(RegimeError::LengthMismatch { grad: d, what: "shots", other: shots.len() });
    }
    let mut s = 0.0;
    for (index, ((&g, &v), &b)) in grad.mean.iter().zip(sigma_sq).zip(shots).enumerate() {
        if !(v > 0.0) {
            return Err(RegimeError::NonPositiveVariance { index, value: v });
        }
        if b == 0 {
            return Err(RegimeError::ZeroShots { index });
        }
        s += b as f64 / v * g * g;
    }
    Ok(WhitenedStatistic { s, d, shots_per_coord: shots.to_vec(), sigma_sq: sigma_sq.to_vec() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Calibration {
    #[default]
    Ville,
    Wald,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LlrForm {
    /// `(s - d)/2 - λ₁/2`.
    #[default]
    Linear,
    /// `ln f_{χ²_d(λ₁)}(s) - ln f_{χ²_d}(s)`.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RegimeTestConfig {
    /// Type I error: declaring informative on a plateau.
    pub alpha: f64,
    /// Type II error: declaring plateau in an informative region.
    pub beta: f64,
    /// Design non-centrality; `None` uses `d + 2 sqrt(2d)`.
    pub lambda1: Option<f64>,
    pub calibration: Calibration,
    /// Rounds before an undecided test resolves to a plateau.
    pub max_rounds: u32,
    pub llr: LlrForm,
    /// Raise λ₁ to `0.5 · s_pilot - d` when the pilot statistic suggests a stronger signal.
    pub refine_from_pilot: bool,
}

impl Default for RegimeTestConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            beta: 0.05,
            lambda1: None,
            calibration: Calibration::Ville,
            max_rounds: 50,
            llr: LlrForm::Linear,
            refine_from_pilot: false,
        }
    }
}

impl RegimeTestConfig {
    pub fn validate(&self) -> Result<(), RegimeError> {
        for (name, p) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(p > 0.0 && p < 0.5) {
                return Err(RegimeError::InvalidConfig(format!("{name} must lie in (0, 1/2), got {p}")));
            }
        }
        if let Some(l) = self.lambda1 {
            if !(l > 0.0 && l.is_finite()) {
                return Err(RegimeError::InvalidConfig(format!("lambda1 must be > 0, got {l}")));
            }
        }
        if self.max_rounds == 0 {
            return Err(RegimeError::InvalidConfig("max_rounds must be >= 1".into()));
        }
        Ok(())
    }

    /// Design alternative for `d` coordinates.
    pub fn design_lambda(&self, d: usize) -> f64 {
        self.lambda1.unwrap_or_else(|| default_lambda1(d))
    }
}

/// One standard-deviation-scaled shift, `d + 2 sqrt(2d)`.
pub fn default_lambda1(d: usize) -> f64 {
    let d = d as f64;
    d + 2.0 * (2.0 * d).sqrt()
}

/// `max(λ₁, 0.5 · s_pilot - d)`.
pub fn refined_lambda1(lambda1: f64, d: usize, s_pilot: f64) -> f64 {
    lambda1.max(0.5 * s_pilot - d as f64)
}

/// Linear log-likelihood increment `(s - d)/2 - λ₁/2`.
pub fn llr_step(s: f64, d: usize, lambda1: f64) -> f64 {
    0.5 * (s - d as f64) - 0.5 * lambda1
}

fn increment(s: f64, d: usize, lambda1: f64, form: LlrForm) -> Result<f64, RegimeError> {
    Ok(match form {
        LlrForm::Linear => llr_step(s, d, lambda1),
        LlrForm::Exact => noncentral_log_ratio(s, d as u32, lambda1)?,
    })
}

/// Upper (informative) and lower (plateau) thresholds `(A, B)`.
pub fn thresholds(config: &RegimeTestConfig) -> (f64, f64) {
    let (a, b) = (config.alpha, config.beta);
    match config.calibration {
        Calibration::Ville => ((1.0 / a).ln(), b.ln()),
        Calibration::Wald => (((1.0 - b) / a).ln(), (b / (1.0 - a)).ln()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    #[default]
    Continue,
    Plateau,
    Informative,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Continue => "continue",
            Decision::Plateau => "plateau",
            Decision::Informative => "informative",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct RegimeTestState {
    /// Cumulative log-likelihood `Λ_k`.
    pub lambda: f64,
    pub round: u32,
    pub decision: Decision,
}

impl RegimeTestState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_decided(&self) -> bool {
        self.decision != Decision::Continue
    }

    /// Add one round with statistic `s` over `d` coordinates.
    ///
    /// The design alternative is `lambda1`; pass `config.design_lambda(d)` unless it
    /// was refined.
    pub fn update(
        self,
        s: f64,
        d: usize,
        lambda1: f64,
        config: &RegimeTestConfig,
    ) -> Result<Self, RegimeError> {
        if self.is_decided() {
            return Err(RegimeError::AlreadyDecided(self.decision));
        }
        if !(s >= 0.0) {
            return Err(RegimeError::Stats(StatsError::Domain(format!("statistic must be >= 0, got {s}"))));
        }
        let lambda = self.lambda + increment(s, d, lambda1, config.llr)?;
        let round = self.round + 1;
        let (upper, lower) = thresholds(config);
        let decision = if lambda >= upper {
            Decision::Informative
        } else if lambda <= lower || round >= config.max_rounds {
            Decision::Plateau
        } else {
            Decision::Continue
        };
        Ok(Self { lambda, round, decision })
    }
}
