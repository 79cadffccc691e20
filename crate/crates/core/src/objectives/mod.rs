//! Objectives the optimizer can drive, all behind [`Objective`].

mod landscape;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gradient::GradientEstimate;
use crate::quantum::{
    exact_cost, param_shift_gradient, qaoa_lie_proxies, QaoaCircuit, QuantumError, ShotNoiseModel,
};

pub use landscape::{estimate_p_dir, GorgeSupport, LandscapeConfig, PlateauLandscape};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObjectiveError {
    #[error("expected {expected} parameters, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("shot count must be >= 1")]
    ZeroShots,

    #[error("invalid landscape: {0}")]
    InvalidLandscape(String),

    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// One noisy evaluation of the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisyValue {
    pub mean: f64,
    /// Variance of `mean`, inversely proportional to `shots`.
    pub variance: f64,
    pub shots: u64,
}

/// A shot-noisy objective.
///
/// `eval_noisy` must be unbiased for `eval_exact`, with variance inversely
/// proportional to the shot count. `eval_exact` and `grad_oracle` are for
/// diagnostics and never debited against a budget.
pub trait Objective: Sync {
    fn dimension(&self) -> usize;

    fn eval_exact(&self, theta: &[f64]) -> Result<f64, ObjectiveError>;

    fn eval_noisy(
        &self,
        theta: &[f64],
        shots: u64,
        rng: &mut dyn RngCore,
    ) -> Result<NoisyValue, ObjectiveError>;

    /// Noisy gradient estimate spending `shots[i]` on coordinate `i`.
    fn gradient_estimate(
        &self,
        theta: &[f64],
        shots: &[u64],
        rng: &mut dyn RngCore,
    ) -> Result<GradientEstimate, ObjectiveError>;

    /// The noiseless version of whatever `gradient_estimate` estimates.
    fn grad_oracle(&self, _theta: &[f64]) -> Option<Vec<f64>> {
        None
    }

    /// Per-coordinate commutator proxies, when generators are known.
    fn lie_proxies(&self) -> Option<Vec<f64>> {
        None
    }

    fn check_dim(&self, theta: &[f64]) -> Result<(), ObjectiveError> {
        if theta.len() != self.dimension() {
            return Err(ObjectiveError::Dimension { expected: self.dimension(), got: theta.len() });
        }
        Ok(())
    }
}

fn gaussian(rng: &mut dyn RngCore) -> f64 {
    StandardNormal.sample(rng)
}

/// Uniformly distributed unit vector in `d` dimensions.
pub fn random_unit_vector(d: usize, rng: &mut dyn RngCore) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn noisy(exact: f64, sigma: f64, shots: u64, rng: &mut dyn RngCore) -> Result<NoisyValue, ObjectiveError> {
    if shots == 0 {
        return Err(ObjectiveError::ZeroShots);
    }
    let sd = sigma / (shots as f64).sqrt();
    Ok(NoisyValue { mean: exact + sd * gaussian(rng), variance: sd * sd, shots })
}

fn noisy_gradient(
    grad: Vec<f64>,
    sigma: f64,
    shots: &[u64],
    rng: &mut dyn RngCore,
) -> Result<GradientEstimate, ObjectiveError> {
    if shots.len() != grad.len() {
        return Err(ObjectiveError::Dimension { expected: grad.len(), got: shots.len() });
    }
    if shots.contains(&0) {
        return Err(ObjectiveError::ZeroShots);
    }
    let variance: Vec<f64> = shots.iter().map(|&b| sigma * sigma / b as f64).collect();
    let mean = grad.iter().zip(&variance).map(|(g, v)| g + v.sqrt() * gaussian(rng)).collect();
    Ok(GradientEstimate { mean, variance, shots: shots.to_vec() })
}

/// QAOA cost `⟨ψ(θ)|H_C|ψ(θ)⟩` with parameter-shift gradients.
#[derive(Debug, Clone)]
pub struct QaoaObjective {
    pub circuit: QaoaCircuit,
    pub noise: ShotNoiseModel,
}

impl QaoaObjective {
    pub fn new(circuit: QaoaCircuit, noise: ShotNoiseModel) -> Result<Self, ObjectiveError> {
        noise.validate()?;
        Ok(Self { circuit, noise })
    }
}

impl Objective for QaoaObjective {
    fn dimension(&self) -> usize {
        self.circuit.n_params()
    }

    fn eval_exact(&self, theta: &[f64]) -> Result<f64, ObjectiveError> {
        Ok(exact_cost(&self.circuit, theta)?)
    }

    fn eval_noisy(&self, theta: &[f64], shots: u64, rng: &mut dyn RngCore) -> Result<NoisyValue, ObjectiveError> {
        let exact = self.eval_exact(theta)?;
        let mut v = noisy(exact, self.noise.sigma, shots, rng)?;
        if self.noise.mode == crate::quantum::NoiseMode::ExactEval {
            v.mean = exact;
        }
        Ok(v)
    }

    fn gradient_estimate(
        &self,
        theta: &[f64],
        shots: &[u64],
        rng: &mut dyn RngCore,
    ) -> Result<GradientEstimate, ObjectiveError> {
        self.check_dim(theta)?;
        Ok(param_shift_gradient(&self.circuit, theta, shots, &self.noise, rng)?)
    }

    /// Noiseless parameter-shift values.
    fn grad_oracle(&self, theta: &[f64]) -> Option<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let exact = ShotNoiseModel::exact(self.noise.sigma);
        let shots = vec![1; theta.len()];
        param_shift_gradient(&self.circuit, theta, &shots, &exact, &mut rng).ok().map(|g| g.mean)
    }

    fn lie_proxies(&self) -> Option<Vec<f64>> {
        qaoa_lie_proxies(&self.circuit).ok()
    }
}

/// `½ Σ a_i θ_i²` with Gaussian shot noise; a strongly convex test objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub curvature: Vec<f64>,
    /// Per-shot noise scale of values and gradient components.
    pub sigma: f64,
}

impl Quadratic {
    pub fn isotropic(d: usize, sigma: f64) -> Self {
        Self { curvature: vec![1.0; d], sigma }
    }

    pub fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        theta.iter().zip(&self.curvature).map(|(t, a)| a * t).collect()
    }
}

impl Objective for Quadratic {
    fn dimension(&self) -> usize {
        self.curvature.len()
    }

    fn eval_exact(&self, theta: &[f64]) -> Result<f64, ObjectiveError> {
        self.check_dim(theta)?;
        Ok(0.5 * theta.iter().zip(&self.curvature).map(|(t, a)| a * t * t).sum::<f64>())
    }

    fn eval_noisy(&self, theta: &[f64], shots: u64, rng: &mut dyn RngCore) -> Result<NoisyValue, ObjectiveError> {
        noisy(self.eval_exact(theta)?, self.sigma, shots, rng)
    }

    fn gradient_estimate(
        &self,
        theta: &[f64],
        shots: &[u64],
        rng: &mut dyn RngCore,
    ) -> Result<GradientEstimate, ObjectiveError> {
        self.check_dim(theta)?;
        noisy_gradient(self.gradient(theta), self.sigma, shots, rng)
    }

    fn grad_oracle(&self, theta: &[f64]) -> Option<Vec<f64>> {
        Some(self.gradient(theta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{build_tfim_chain, NoiseMode};

    #[test]
    fn unit_vectors_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [1, 2, 12] {
            let v = random_unit_vector(d, &mut rng);
            assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn qaoa_exact_mode_is_noiseless() {
        let c = QaoaCircuit::with_x_mixer(build_tfim_chain(2, 1.0, 0.5).unwrap(), 1).unwrap();
        let obj = QaoaObjective::new(c, ShotNoiseModel { mode: NoiseMode::ExactEval, sigma: 0.02 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let v = obj.eval_noisy(&[0.0, 0.0], 10, &mut rng).unwrap();
        assert!((v.mean + 1.0).abs() < 1e-12);
        assert!(obj.eval_noisy(&[0.0, 0.0], 0, &mut rng).is_err());
        assert!(obj.eval_exact(&[0.0]).is_err());
    }

    #[test]
    fn quadratic_gradient_and_value() {
        let q = Quadratic { curvature: vec![1.0, 3.0], sigma: 0.1 };
        assert_eq!(q.eval_exact(&[2.0, 1.0]).unwrap(), 3.5);
        assert_eq!(q.grad_oracle(&[2.0, 1.0]).unwrap(), vec![2.0, 3.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = q.gradient_estimate(&[2.0, 1.0], &[100, 25], &mut rng).unwrap();
        assert!((g.variance[0] - 1e-4).abs() < 1e-18 && (g.variance[1] - 4e-4).abs() < 1e-18);
    }
}
