use serde::{Deserialize, Serialize};

use super::OptimizerError;
use crate::regime::RegimeTestConfig;

/// Random-direction trust-region exploration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PtrConfig {
    /// Smallest radius; radius `k` is `r0 · 2^k`.
    pub r0: f64,
    /// Number of radii.
    pub k: u32,
    /// Directions per radius.
    pub m: u32,
    /// Required descent is `tau · R²`.
    pub tau: f64,
    /// Level of the one-sided acceptance bound.
    pub alpha_acc: f64,
    /// Paired evaluations per candidate.
    pub n_pair: u32,
    /// Shots per objective evaluation inside a pair.
    pub shots_per_eval: u64,
}

impl Default for PtrConfig {
    fn default() -> Self {
        Self { r0: 0.1, k: 6, m: 8, tau: 0.1, alpha_acc: 0.05, n_pair: 8, shots_per_eval: 10 }
    }
}

impl PtrConfig {
    pub fn max_radius(&self) -> f64 {
        self.r0 * 2f64.powi(self.k as i32 - 1)
    }

    pub fn candidate_cost(&self) -> u64 {
        2 * self.n_pair as u64 * self.shots_per_eval
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LieWeights {
    /// `V_i ≡ 1`.
    #[default]
    Uniform,
    /// Commutator proxies from the objective, when it provides them.
    CommutatorProxy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum ExploitAllocation {
    /// `s_i = ⌈max(c σ_i Σσ_j / ‖χ‖², s_min)⌉` with `c = 2Lη/(2 − Lη)`.
    #[default]
    Gcans,
    /// `s_i = ⌈max(total · σ_i / Σσ_j, s_min)⌉`.
    SigmaProportional { total: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpartaConfig {
    pub eta: f64,
    pub ema_mu: f64,
    pub s_min: u64,
    pub lipschitz_l: f64,
    pub budget_total: u64,
    pub pilot_fraction: f64,
    /// Shots per coordinate for each pilot gradient estimate.
    pub b_pilot: u64,
    /// Mean shots per coordinate in one regime-test round; the round costs `d · b_test`.
    pub b_test: u64,
    pub ptr: PtrConfig,
    pub test: RegimeTestConfig,
    pub lie_weights: LieWeights,
    pub exploit: ExploitAllocation,
}

impl Default for SpartaConfig {
    fn default() -> Self {
        Self {
            eta: 0.05,
            ema_mu: 0.9,
            s_min: 6,
            lipschitz_l: 1.0,
            budget_total: 25_000,
            pilot_fraction: 0.10,
            b_pilot: 100,
            b_test: 100,
            ptr: PtrConfig::default(),
            test: RegimeTestConfig::default(),
            lie_weights: LieWeights::Uniform,
            exploit: ExploitAllocation::Gcans,
        }
    }
}

impl SpartaConfig {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        let bad = |msg: String| Err(OptimizerError::InvalidConfig(msg));
        if !(self.eta > 0.0 && self.lipschitz_l > 0.0 && self.eta < 2.0 / self.lipschitz_l) {
            return bad(format!("need 0 < eta < 2/L, got eta = {}, L = {}", self.eta, self.lipschitz_l));
        }
        if !(0.0..1.0).contains(&self.ema_mu) {
            return bad(format!("ema_mu must lie in [0, 1), got {}", self.ema_mu));
        }
        if !(self.pilot_fraction > 0.0 && self.pilot_fraction < 0.5) {
            return bad(format!("pilot_fraction must lie in (0, 0.5), got {}", self.pilot_fraction));
        }
        if self.s_min == 0 || self.b_pilot == 0 || self.b_test == 0 {
            return bad("s_min, b_pilot and b_test must be >= 1".into());
        }
        let p = &self.ptr;
        if !(p.r0 > 0.0 && p.tau > 0.0) || p.k == 0 || p.m == 0 || p.n_pair < 2 || p.shots_per_eval == 0 {
            return bad("PTR needs r0, tau > 0, K, m, shots_per_eval >= 1 and n_pair >= 2".into());
        }
        if !(p.alpha_acc > 0.0 && p.alpha_acc < 0.5) {
            return bad(format!("alpha_acc must lie in (0, 1/2), got {}", p.alpha_acc));
        }
        self.test.validate().map_err(|e| OptimizerError::InvalidConfig(e.to_string()))
    }
}
