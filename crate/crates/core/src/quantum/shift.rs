use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::circuit::{exact_cost, QaoaCircuit};
use super::QuantumError;
use crate::gradient::GradientEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseMode {
    /// Additive Gaussian error with variance `σ²/B` on each estimate.
    #[default]
    GaussianSurrogate,
    /// Noiseless; for oracles and tests.
    ExactEval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ShotNoiseModel {
    pub mode: NoiseMode,
    /// Per-shot standard deviation.
    pub sigma: f64,
}

impl Default for ShotNoiseModel {
    fn default() -> Self {
        Self { mode: NoiseMode::GaussianSurrogate, sigma: 0.02 }
    }
}

impl ShotNoiseModel {
    pub fn exact(sigma: f64) -> Self {
        Self { mode: NoiseMode::ExactEval, sigma }
    }

    pub fn validate(&self) -> Result<(), QuantumError> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(QuantumError::InvalidNoise(self.sigma));
        }
        Ok(())
    }

    /// Draw the error of one estimate averaged over `shots` shots.
    pub fn draw<R: Rng + ?Sized>(&self, shots: u64, rng: &mut R) -> f64 {
        match self.mode {
            NoiseMode::ExactEval => 0.0,
            NoiseMode::GaussianSurrogate => {
                let z: f64 = StandardNormal.sample(rng);
                z * self.sigma / (shots as f64).sqrt()
            }
        }
    }

    /// Nominal variance `σ²/B` of an estimate from `shots` shots.
    pub fn variance(&self, shots: u64) -> f64 {
        self.sigma * self.sigma / shots as f64
    }
}

/// `½[f(θ + π/2 e_i) − f(θ − π/2 e_i)]` plus shot noise for each coordinate.
///
/// Exact for generators with eigenvalues `±1/2`; for other spectra it is the
/// estimator as defined, not a derivative.
pub fn param_shift_with<F, R>(
    f: F,
    theta: &[f64],
    shots: &[u64],
    noise: &ShotNoiseModel,
    rng: &mut R,
) -> Result<GradientEstimate, QuantumError>
where
    F: Fn(&[f64]) -> Result<f64, QuantumError>,
    R: Rng + ?Sized,
{
    noise.validate()?;
    if shots.len() != theta.len() {
        return Err(QuantumError::DimensionMismatch { expected: theta.len(), got: shots.len() });
    }
    if let Some(i) = shots.iter().position(|&b| b == 0) {
        return Err(QuantumError::ZeroShots(i));
    }
    let mut shifted = theta.to_vec();
    let mut mean = Vec::with_capacity(theta.len());
    for (i, &b) in shots.iter().enumerate() {
        shifted[i] = theta[i] + FRAC_PI_2;
        let plus = f(&shifted)?;
        shifted[i] = theta[i] - FRAC_PI_2;
        let minus = f(&shifted)?;
        shifted[i] = theta[i];
        mean.push(0.5 * (plus - minus) + noise.draw(b, rng));
    }
    Ok(GradientEstimate {
        mean,
        variance: shots.iter().map(|&b| noise.variance(b)).collect(),
        shots: shots.to_vec(),
    })
}

pub fn param_shift_gradient<R: Rng + ?Sized>(
    circuit: &QaoaCircuit,
    theta: &[f64],
    shots: &[u64],
    noise: &ShotNoiseModel,
    rng: &mut R,
) -> Result<GradientEstimate, QuantumError> {
    param_shift_with(|t| exact_cost(circuit, t), theta, shots, noise, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cosine_identity_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let noise = ShotNoiseModel::exact(0.02);
        for &t in &[0.0, 0.3, 1.2, -2.5] {
            let g = param_shift_with(|th| Ok(th[0].cos()), &[t], &[100], &noise, &mut rng).unwrap();
            assert!((g.mean[0] + t.sin()).abs() < 1e-15);
            assert!((g.variance[0] - 4e-6).abs() < 1e-18);
        }
    }

    #[test]
    fn surrogate_noise_has_nominal_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let noise = ShotNoiseModel::default();
        let n = 20_000;
        let draws: Vec<f64> = (0..n).map(|_| noise.draw(100, &mut rng)).collect();
        let var = draws.iter().map(|e| e * e).sum::<f64>() / n as f64;
        assert!((var / 4e-6 - 1.0).abs() < 0.05, "{var}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = |th: &[f64]| Ok(th[0]);
        let bad = ShotNoiseModel { sigma: 0.0, ..Default::default() };
        assert!(matches!(param_shift_with(f, &[0.0], &[1], &bad, &mut rng), Err(QuantumError::InvalidNoise(_))));
        let noise = ShotNoiseModel::default();
        assert!(param_shift_with(f, &[0.0], &[0], &noise, &mut rng).is_err());
        assert!(param_shift_with(f, &[0.0], &[1, 1], &noise, &mut rng).is_err());
    }
}
