//! The regime-switching scheduler and its shot-adaptive baseline.
//!
//! One outer iteration runs a regime-test round on a fresh gradient estimate
//! measured with the exploration allocation. A plateau decision triggers
//! trust-region exploration, an informative one a single gCANS step; either
//! resets the test. Undecided rounds simply return.

mod allocation;
mod config;
mod ledger;
mod ptr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::objectives::{Objective, ObjectiveError};
use crate::regime::{
    default_lambda1, refined_lambda1, whiten, Decision, RegimeError, RegimeTestState,
};
use crate::stats::{mean, sample_variance, StatsError};

pub use allocation::{exploration_allocation, gcans_allocate, GcansState};
pub use config::{ExploitAllocation, LieWeights, PtrConfig, SpartaConfig};
pub use ledger::{Phase, ShotLedger};
pub use ptr::{ptr_accepts, ptr_explore, PtrOutcome, MIN_DEGENERATE_PAIRS};

/// Pilot variances are floored here so noiseless objectives still whiten.
const SIGMA_SQ_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizerError {
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("budget {budget} cannot cover {needed} shots")]
    InsufficientBudget { needed: u64, budget: u64 },

    #[error("initial point has {got} coordinates, objective has {expected}")]
    Dimension { expected: usize, got: usize },

    #[error(transparent)]
    Objective(#[from] ObjectiveError),

    #[error(transparent)]
    Regime(#[from] RegimeError),

    #[error(transparent)]
    Stats(#[from] StatsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Pilot,
    Test,
    Ptr,
    Exploit,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Pilot => "pilot",
            Mode::Test => "test",
            Mode::Ptr => "ptr",
            Mode::Exploit => "exploit",
        }
    }
}

/// Noise scales and exploration allocation measured before the first iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PilotEstimate {
    /// Per-shot variances `σ_i²`.
    pub sigma_sq: Vec<f64>,
    /// Variance proxies `V_i` (all ones for uniform weights).
    pub v: Vec<f64>,
    pub b_expl: Vec<u64>,
    pub repeats: u64,
    /// Whitened statistic of the averaged pilot gradient.
    pub s_pilot: f64,
}

/// `r = max(5, ⌊pilot_share / (d · B_pilot)⌋)` gradient estimates at `θ`.
pub fn pilot(
    objective: &dyn Objective,
    theta: &[f64],
    config: &SpartaConfig,
    rng: &mut dyn RngCore,
    ledger: &mut ShotLedger,
) -> Result<PilotEstimate, OptimizerError> {
    let d = objective.dimension();
    let share = (config.pilot_fraction * config.budget_total as f64).floor() as u64;
    let per_estimate = d as u64 * config.b_pilot;
    let repeats = (share / per_estimate).max(5);
    let needed = repeats * per_estimate;
    if needed > ledger.remaining() {
        return Err(OptimizerError::InsufficientBudget { needed, budget: ledger.remaining() });
    }

    let shots = vec![config.b_pilot; d];
    let mut samples = vec![Vec::with_capacity(repeats as usize); d];
    for _ in 0..repeats {
        let g = objective.gradient_estimate(theta, &shots, rng)?;
        ledger.debit(Phase::Pilot, g.total_shots());
        for (col, x) in samples.iter_mut().zip(&g.mean) {
            col.push(*x);
        }
    }
    let sigma_sq: Vec<f64> = samples
        .iter()
        .map(|col| (config.b_pilot as f64 * sample_variance(col)).max(SIGMA_SQ_FLOOR))
        .collect();
    let s_pilot = samples
        .iter()
        .zip(&sigma_sq)
        .map(|(col, s2)| (repeats * config.b_pilot) as f64 / s2 * mean(col).powi(2))
        .sum();

    let v = match (config.lie_weights, objective.lie_proxies()) {
        (LieWeights::CommutatorProxy, Some(v)) => v,
        _ => vec![1.0; d],
    };
    let b_expl = exploration_allocation(&v, &sigma_sq, per_estimate_total(d, config), config.s_min);
    Ok(PilotEstimate { sigma_sq, v, b_expl, repeats, s_pilot })
}

fn per_estimate_total(d: usize, config: &SpartaConfig) -> u64 {
    d as u64 * config.b_test
}

/// One exploitation step: estimate with the gCANS allocation, update the EMAs,
/// and move `θ ← θ − η ĝ`. Returns the step length.
pub fn gcans_step(
    objective: &dyn Objective,
    theta: &mut [f64],
    state: &mut GcansState,
    config: &SpartaConfig,
    rng: &mut dyn RngCore,
    ledger: &mut ShotLedger,
) -> Result<f64, OptimizerError> {
    let shots = gcans_allocate(state, config);
    let g = objective.gradient_estimate(theta, &shots, rng)?;
    ledger.debit(Phase::Exploit, g.total_shots());
    if state.step == 0 && state.sigma_ema.iter().all(|&s| s == 0.0) {
        state.sigma_ema = g.per_shot_sd();
    }
    state.update(&g.mean, &g.per_shot_sd(), config.ema_mu);
    let mut sq = 0.0;
    for (t, gi) in theta.iter_mut().zip(&g.mean) {
        *t -= config.eta * gi;
        sq += (config.eta * gi).powi(2);
    }
    Ok(sq.sqrt())
}

/// Everything the outer loop carries between iterations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpartaState {
    pub theta: Vec<f64>,
    pub test: RegimeTestState,
    pub gcans: GcansState,
    pub sigma_sq: Vec<f64>,
    pub b_expl: Vec<u64>,
    pub lambda1: f64,
}

impl SpartaState {
    pub fn from_pilot(theta: Vec<f64>, pilot: &PilotEstimate, config: &SpartaConfig) -> Self {
        let d = theta.len();
        let mut lambda1 = config.test.lambda1.unwrap_or_else(|| default_lambda1(d));
        if config.test.refine_from_pilot {
            lambda1 = refined_lambda1(lambda1, d, pilot.s_pilot);
        }
        Self {
            theta,
            test: RegimeTestState::new(),
            gcans: GcansState::new(pilot.sigma_sq.iter().map(|s| s.sqrt()).collect()),
            sigma_sq: pilot.sigma_sq.clone(),
            b_expl: pilot.b_expl.clone(),
            lambda1,
        }
    }
}

/// One row of a trial trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub iteration: u64,
    pub mode: Mode,
    pub cumulative_shots: u64,
    pub exact_cost: f64,
    pub lambda_cum: f64,
    pub decision: Decision,
    pub accepted_ptr: bool,
    pub radius: f64,
    pub step_norm: f64,
}

/// What one outer iteration did, before the exact cost is attached.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub mode: Mode,
    pub lambda_cum: f64,
    pub decision: Decision,
    pub accepted_ptr: bool,
    pub radius: f64,
    pub step_norm: f64,
}

/// One outer iteration.
pub fn sparta_step(
    objective: &dyn Objective,
    config: &SpartaConfig,
    state: &mut SpartaState,
    rng: &mut dyn RngCore,
    ledger: &mut ShotLedger,
) -> Result<StepReport, OptimizerError> {
    let d = state.theta.len();
    let g = objective.gradient_estimate(&state.theta, &state.b_expl, rng)?;
    ledger.debit(Phase::RegimeTest, g.total_shots());
    let w = whiten(&g, &state.sigma_sq, &state.b_expl)?;
    state.test = state.test.update(w.s, d, state.lambda1, &config.test)?;
    let (lambda_cum, decision) = (state.test.lambda, state.test.decision);
    let mut report = StepReport {
        mode: Mode::Test,
        lambda_cum,
        decision,
        accepted_ptr: false,
        radius: 0.0,
        step_norm: 0.0,
    };
    if decision == Decision::Continue {
        return Ok(report);
    }
    state.test = RegimeTestState::new();
    if ledger.exhausted() {
        return Ok(report);
    }
    match decision {
        Decision::Plateau => {
            let out = ptr_explore(objective, &state.theta, &config.ptr, rng, ledger)?;
            report.mode = Mode::Ptr;
            report.accepted_ptr = out.accepted;
            report.radius = out.radius;
            report.step_norm = out.step_norm;
            state.theta = out.theta;
        }
        Decision::Informative => {
            report.mode = Mode::Exploit;
            report.step_norm =
                gcans_step(objective, &mut state.theta, &mut state.gcans, config, rng, ledger)?;
        }
        Decision::Continue => unreachable!(),
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub seed: u64,
    pub trajectory: Vec<TrajectoryRow>,
    pub final_theta: Vec<f64>,
    pub final_exact_cost: f64,
    pub iterations: u64,
    pub plateau_iterations: u64,
    pub exploit_iterations: u64,
    pub ptr_accepts: u64,
    pub ledger: ShotLedger,
}

impl TrialResult {
    pub fn spent(&self) -> u64 {
        self.ledger.spent()
    }
}

fn check_start(objective: &dyn Objective, theta0: &[f64], config: &SpartaConfig) -> Result<(), OptimizerError> {
    config.validate()?;
    if config.budget_total == 0 {
        return Err(OptimizerError::InsufficientBudget { needed: 1, budget: 0 });
    }
    if theta0.len() != objective.dimension() {
        return Err(OptimizerError::Dimension { expected: objective.dimension(), got: theta0.len() });
    }
    Ok(())
}

/// The seeded rng stream of one trial.
pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pilot, then outer iterations until the budget is spent.
pub fn run_trial(
    objective: &dyn Objective,
    config: &SpartaConfig,
    theta0: &[f64],
    seed: u64,
) -> Result<TrialResult, OptimizerError> {
    check_start(objective, theta0, config)?;
    let mut rng = trial_rng(seed);
    let mut ledger = ShotLedger::new(config.budget_total);
    let estimate = pilot(objective, theta0, config, &mut rng, &mut ledger)?;
    let mut state = SpartaState::from_pilot(theta0.to_vec(), &estimate, config);

    let mut trajectory = vec![TrajectoryRow {
        iteration: 0,
        mode: Mode::Pilot,
        cumulative_shots: ledger.spent(),
        exact_cost: objective.eval_exact(theta0)?,
        lambda_cum: 0.0,
        decision: Decision::Continue,
        accepted_ptr: false,
        radius: 0.0,
        step_norm: 0.0,
    }];
    let (mut plateau, mut exploit, mut accepts) = (0, 0, 0);
    let mut iteration = 0;
    while !ledger.exhausted() {
        iteration += 1;
        let r = sparta_step(objective, config, &mut state, &mut rng, &mut ledger)?;
        match r.mode {
            Mode::Ptr => plateau += 1,
            Mode::Exploit => exploit += 1,
            _ => {}
        }
        accepts += r.accepted_ptr as u64;
        trajectory.push(TrajectoryRow {
            iteration,
            mode: r.mode,
            cumulative_shots: ledger.spent(),
            exact_cost: objective.eval_exact(&state.theta)?,
            lambda_cum: r.lambda_cum,
            decision: r.decision,
            accepted_ptr: r.accepted_ptr,
            radius: r.radius,
            step_norm: r.step_norm,
        });
    }
    let final_exact_cost = objective.eval_exact(&state.theta)?;
    Ok(TrialResult {
        seed,
        trajectory,
        final_theta: state.theta,
        final_exact_cost,
        iterations: iteration,
        plateau_iterations: plateau,
        exploit_iterations: exploit,
        ptr_accepts: accepts,
        ledger,
    })
}

/// gCANS alone on the whole budget. The noise scales start from the first
/// estimate, taken with `s_min` shots per coordinate.
pub fn run_gcans_baseline(
    objective: &dyn Objective,
    config: &SpartaConfig,
    theta0: &[f64],
    seed: u64,
) -> Result<TrialResult, OptimizerError> {
    check_start(objective, theta0, config)?;
    let mut rng = trial_rng(seed);
    let mut ledger = ShotLedger::new(config.budget_total);
    let mut theta = theta0.to_vec();
    let mut state = GcansState::new(vec![0.0; theta.len()]);
    let initial_cost = objective.eval_exact(&theta)?;
    let mut trajectory = vec![];
    let mut iteration = 0;
    while !ledger.exhausted() {
        iteration += 1;
        let step_norm = gcans_step(objective, &mut theta, &mut state, config, &mut rng, &mut ledger)?;
        trajectory.push(TrajectoryRow {
            iteration,
            mode: Mode::Exploit,
            cumulative_shots: ledger.spent(),
            exact_cost: objective.eval_exact(&theta)?,
            lambda_cum: 0.0,
            decision: Decision::Informative,
            accepted_ptr: false,
            radius: 0.0,
            step_norm,
        });
    }
    trajectory.insert(
        0,
        TrajectoryRow {
            iteration: 0,
            mode: Mode::Exploit,
            cumulative_shots: 0,
            exact_cost: initial_cost,
            lambda_cum: 0.0,
            decision: Decision::Informative,
            accepted_ptr: false,
            radius: 0.0,
            step_norm: 0.0,
        },
    );
    let final_exact_cost = objective.eval_exact(&theta)?;
    Ok(TrialResult {
        seed,
        trajectory,
        final_theta: theta,
        final_exact_cost,
        iterations: iteration,
        plateau_iterations: 0,
        exploit_iterations: iteration,
        ptr_accepts: 0,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::Quadratic;

    #[test]
    fn noiseless_quadratic_contracts() {
        let q = Quadratic::isotropic(3, 1e-9);
        let cfg = SpartaConfig::default();
        let mut theta = vec![1.0, -2.0, 0.5];
        let norm0 = theta.iter().map(|x: &f64| x * x).sum::<f64>().sqrt();
        let mut st = GcansState::new(vec![1e-9; 3]);
        let mut rng = trial_rng(0);
        let mut ledger = ShotLedger::new(u64::MAX);
        gcans_step(&q, &mut theta, &mut st, &cfg, &mut rng, &mut ledger).unwrap();
        let norm1 = theta.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm1 / norm0 - 0.95).abs() < 1e-6);
        assert_eq!(ledger.exploit, 18);
    }

    #[test]
    fn zero_budget_is_rejected() {
        let q = Quadratic::isotropic(2, 0.1);
        let cfg = SpartaConfig { budget_total: 0, ..Default::default() };
        assert!(matches!(
            run_trial(&q, &cfg, &[1.0, 1.0], 1),
            Err(OptimizerError::InsufficientBudget { .. })
        ));
        assert!(run_gcans_baseline(&q, &cfg, &[1.0, 1.0], 1).is_err());
    }

    #[test]
    fn pilot_repeat_count() {
        let q = Quadratic::isotropic(4, 0.02);
        let cfg = SpartaConfig::default();
        let mut rng = trial_rng(3);
        let mut ledger = ShotLedger::new(cfg.budget_total);
        let p = pilot(&q, &[0.5; 4], &cfg, &mut rng, &mut ledger).unwrap();
        // 2500 / 400 = 6 repeats.
        assert_eq!(p.repeats, 6);
        assert_eq!(ledger.pilot, 2400);
        // Unequal estimated variances tilt the split, the round total is fixed.
        assert_eq!(p.b_expl.iter().sum::<u64>(), 400);
        for s2 in &p.sigma_sq {
            assert!(*s2 > 0.0 && (s2 / 4e-4) < 5.0);
        }
    }

    #[test]
    fn trial_spends_budget_with_bounded_overshoot() {
        let q = Quadratic::isotropic(4, 0.02);
        let cfg = SpartaConfig { budget_total: 20_000, ..Default::default() };
        let r = run_trial(&q, &cfg, &[0.5; 4], 7).unwrap();
        assert!(r.spent() >= 20_000);
        assert!(r.spent() <= 20_000 + 4 * cfg.b_test + cfg.ptr.k as u64 * cfg.ptr.m as u64 * cfg.ptr.candidate_cost());
        assert!(r.trajectory.windows(2).all(|w| w[0].cumulative_shots <= w[1].cumulative_shots));
        assert_eq!(r.ledger.spent(), r.ledger.pilot + r.ledger.regime_test + r.ledger.ptr + r.ledger.exploit);
        assert!(r.final_exact_cost < q.eval_exact(&[0.5; 4]).unwrap());
    }
}
