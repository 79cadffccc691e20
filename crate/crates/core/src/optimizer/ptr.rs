use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::config::PtrConfig;
use super::ledger::{Phase, ShotLedger};
use super::OptimizerError;
use crate::objectives::{random_unit_vector, Objective};
use crate::stats::one_sided_ucb;

/// Degenerate (zero-spread) bounds are trusted only with at least this many pairs.
pub const MIN_DEGENERATE_PAIRS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtrOutcome {
    pub theta: Vec<f64>,
    pub accepted: bool,
    pub moves_tested: u32,
    /// Radius of the accepted move, or the last radius tried.
    pub radius: f64,
    pub step_norm: f64,
}

/// Accept when the one-sided `1 − α_acc` upper bound on the mean improvement
/// is at most `−τR²`.
pub fn ptr_accepts(deltas: &[f64], radius: f64, config: &PtrConfig) -> Result<bool, OptimizerError> {
    let bound = one_sided_ucb(deltas, 1.0 - config.alpha_acc)?;
    if bound.degenerate && deltas.len() < MIN_DEGENERATE_PAIRS {
        return Ok(false);
    }
    Ok(bound.upper <= -config.tau * radius * radius)
}

/// Scan radii `R_0 2^k` and `m` random directions each, accepting the first
/// certified descent. Stops early, unaccepted, once the ledger is exhausted.
pub fn ptr_explore(
    objective: &dyn Objective,
    theta: &[f64],
    config: &PtrConfig,
    rng: &mut dyn RngCore,
    ledger: &mut ShotLedger,
) -> Result<PtrOutcome, OptimizerError> {
    let d = theta.len();
    let mut moves_tested = 0;
    let mut radius = config.r0;
    let mut candidate = vec![0.0; d];
    let mut deltas = Vec::with_capacity(config.n_pair as usize);
    for k in 0..config.k {
        radius = config.r0 * 2f64.powi(k as i32);
        for _ in 0..config.m {
            if ledger.exhausted() {
                return Ok(PtrOutcome { theta: theta.to_vec(), accepted: false, moves_tested, radius, step_norm: 0.0 });
            }
            let v = random_unit_vector(d, rng);
            for ((c, t), vi) in candidate.iter_mut().zip(theta).zip(&v) {
                *c = t + radius * vi;
            }
            deltas.clear();
            for _ in 0..config.n_pair {
                let here = objective.eval_noisy(theta, config.shots_per_eval, rng)?;
                let there = objective.eval_noisy(&candidate, config.shots_per_eval, rng)?;
                ledger.debit(Phase::Ptr, here.shots + there.shots);
                deltas.push(there.mean - here.mean);
            }
            moves_tested += 1;
            if ptr_accepts(&deltas, radius, config)? {
                return Ok(PtrOutcome { theta: candidate, accepted: true, moves_tested, radius, step_norm: radius });
            }
        }
    }
    Ok(PtrOutcome { theta: theta.to_vec(), accepted: false, moves_tested, radius, step_norm: 0.0 })
}
