use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{noisy, noisy_gradient, random_unit_vector, NoisyValue, Objective, ObjectiveError};
use crate::gradient::GradientEstimate;

/// Which coordinates the Gaussian gorge depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GorgeSupport {
    /// `exp(-‖θ - θ*‖² / 2w²)` over all coordinates, with seeded ripple phases and
    /// a start direction drawn from the whole sphere.
    Isotropic,
    /// Gorge over the informative coordinates only. Ripple phases on those
    /// coordinates put `θ*` on a zero crossing of the ripple, and the start
    /// offset lies in the informative subspace with every component negative.
    #[default]
    Informative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LandscapeConfig {
    pub d: usize,
    pub n_eff: u32,
    /// Gradient-variance suppression base: total plateau variance is `b_v^{-n}`.
    pub b_v: f64,
    /// Width base: gorge width is `b_w^{-n}`.
    pub b_w: f64,
    /// Gorge depth per effective qubit.
    pub depth_coeff: f64,
    /// Informative coordinates are the first `informative_count`; `None` means `⌈d/3⌉`.
    pub informative_count: Option<usize>,
    /// Ripple weight of the remaining coordinates.
    pub minor_weight: f64,
    pub gorge_support: GorgeSupport,
    /// Per-shot standard deviation of noisy values and gradient components.
    pub noise_sigma: f64,
    /// `‖θ0 - θ*‖ / w` of the standard start.
    pub start_ratio: f64,
    /// Samples in the ripple-amplitude calibration probe.
    pub probe_samples: usize,
    pub seed: u64,
}

impl Default for LandscapeConfig {
    fn default() -> Self {
        Self {
            d: 12,
            n_eff: 2,
            b_v: 2.0,
            b_w: 1.4,
            depth_coeff: 15.0,
            informative_count: None,
            minor_weight: 0.1,
            gorge_support: GorgeSupport::Informative,
            noise_sigma: 0.05,
            start_ratio: 6.1,
            probe_samples: 10_000,
            seed: 2024,
        }
    }
}

/// `f(θ) = A Σ_i c_i sin(θ_i − φ_i) − D exp(−‖θ − θ*‖²_S / 2w²)` for a gorge support `S`.
///
/// `D = depth_coeff · n_eff`, `w = b_w^{-n_eff}`. The amplitude `A` is fixed at
/// construction so that the summed ripple gradient variance over uniform `θ`
/// equals `b_v^{-n_eff}`, measured by a seeded probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateauLandscape {
    pub config: LandscapeConfig,
    pub theta_star: Vec<f64>,
    pub phases: Vec<f64>,
    pub weights: Vec<f64>,
    pub informative_mask: Vec<bool>,
    pub ripple_scale: f64,
    pub width: f64,
    pub depth: f64,
    /// Unit direction of the standard start from `θ*`.
    pub start_direction: Vec<f64>,
}

impl PlateauLandscape {
    pub fn new(config: LandscapeConfig) -> Result<Self, ObjectiveError> {
        let d = config.d;
        if d < 2 {
            return Err(ObjectiveError::InvalidLandscape(format!("d must be >= 2, got {d}")));
        }
        if !(config.b_v > 1.0) || !(config.b_w > 1.0) {
            return Err(ObjectiveError::InvalidLandscape(format!(
                "scaling bases must exceed 1, got b_v = {}, b_w = {}",
                config.b_v, config.b_w
            )));
        }
        if !(config.noise_sigma > 0.0) || !(config.start_ratio > 0.0) || config.probe_samples < 2 {
            return Err(ObjectiveError::InvalidLandscape("noise, start ratio and probe size must be positive".into()));
        }
        let k = config.informative_count.unwrap_or(d.div_ceil(3));
        if k == 0 || k > d {
            return Err(ObjectiveError::InvalidLandscape(format!("informative count {k} outside 1..={d}")));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let informative_mask: Vec<bool> = (0..d).map(|i| i < k).collect();
        let weights: Vec<f64> =
            informative_mask.iter().map(|&m| if m { 1.0 } else { config.minor_weight }).collect();
        let theta_star: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut phases: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        let start_direction = match config.gorge_support {
            GorgeSupport::Isotropic => random_unit_vector(d, &mut rng),
            GorgeSupport::Informative => {
                for i in 0..k {
                    phases[i] = theta_star[i];
                }
                let u = random_unit_vector(k, &mut rng);
                let mut dir = vec![0.0; d];
                for i in 0..k {
                    dir[i] = -u[i].abs();
                }
                dir
            }
        };

        let n = config.n_eff as f64;
        let width = config.b_w.powf(-n);
        let depth = config.depth_coeff * n;

        // The ripple gradient is linear in A, so one probe at A = 1 fixes it.
        let mut sums = vec![0.0; d];
        let mut sq = vec![0.0; d];
        for _ in 0..config.probe_samples {
            for i in 0..d {
                let g = weights[i] * (rng.random_range(-PI..PI) - phases[i]).cos();
                sums[i] += g;
                sq[i] += g * g;
            }
        }
        let m = config.probe_samples as f64;
        let unit_var: f64 = (0..d).map(|i| (sq[i] - sums[i] * sums[i] / m) / (m - 1.0)).sum();
        let ripple_scale = (config.b_v.powf(-n) / unit_var).sqrt();

        Ok(Self {
            config,
            theta_star,
            phases,
            weights,
            informative_mask,
            ripple_scale,
            width,
            depth,
            start_direction,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ObjectiveError> {
        serde_json::from_str(text).map_err(|e| ObjectiveError::InvalidLandscape(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("landscape serializes")
    }

    fn in_support(&self, i: usize) -> bool {
        match self.config.gorge_support {
            GorgeSupport::Isotropic => true,
            GorgeSupport::Informative => self.informative_mask[i],
        }
    }

    /// Squared distance to `θ*` over the gorge support.
    pub fn gorge_distance_sq(&self, theta: &[f64]) -> f64 {
        (0..self.config.d)
            .filter(|&i| self.in_support(i))
            .map(|i| (theta[i] - self.theta_star[i]).powi(2))
            .sum()
    }

    pub fn distance_to_optimum(&self, theta: &[f64]) -> f64 {
        theta.iter().zip(&self.theta_star).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
    }

    pub fn ripple(&self, theta: &[f64]) -> f64 {
        self.ripple_scale
            * theta.iter().zip(&self.phases).zip(&self.weights).map(|((t, p), c)| c * (t - p).sin()).sum::<f64>()
    }

    pub fn gorge(&self, theta: &[f64]) -> f64 {
        -self.depth * (-self.gorge_distance_sq(theta) / (2.0 * self.width * self.width)).exp()
    }

    pub fn value(&self, theta: &[f64]) -> f64 {
        self.ripple(theta) + self.gorge(theta)
    }

    pub fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        let w2 = self.width * self.width;
        let g = -self.gorge(theta) / w2;
        (0..self.config.d)
            .map(|i| {
                let ripple = self.ripple_scale * self.weights[i] * (theta[i] - self.phases[i]).cos();
                let gorge = if self.in_support(i) { g * (theta[i] - self.theta_star[i]) } else { 0.0 };
                ripple + gorge
            })
            .collect()
    }

    /// Global minimum value, attained near `θ*`.
    pub fn minimum_value(&self) -> f64 {
        self.value(&self.theta_star)
    }

    /// `θ* + start_ratio · w · u` for the seeded unit direction `u`.
    pub fn standard_start(&self) -> Vec<f64> {
        let r = self.config.start_ratio * self.width;
        self.theta_star.iter().zip(&self.start_direction).map(|(t, u)| t + r * u).collect()
    }
}

impl Objective for PlateauLandscape {
    fn dimension(&self) -> usize {
        self.config.d
    }

    fn eval_exact(&self, theta: &[f64]) -> Result<f64, ObjectiveError> {
        self.check_dim(theta)?;
        Ok(self.value(theta))
    }

    fn eval_noisy(&self, theta: &[f64], shots: u64, rng: &mut dyn RngCore) -> Result<NoisyValue, ObjectiveError> {
        noisy(self.eval_exact(theta)?, self.config.noise_sigma, shots, rng)
    }

    fn gradient_estimate(
        &self,
        theta: &[f64],
        shots: &[u64],
        rng: &mut dyn RngCore,
    ) -> Result<GradientEstimate, ObjectiveError> {
        self.check_dim(theta)?;
        noisy_gradient(self.gradient(theta), self.config.noise_sigma, shots, rng)
    }

    fn grad_oracle(&self, theta: &[f64]) -> Option<Vec<f64>> {
        Some(self.gradient(theta))
    }

    /// Squared ripple weights, the analogue of a commutator proxy here.
    fn lie_proxies(&self) -> Option<Vec<f64>> {
        Some(self.weights.iter().map(|c| c * c).collect())
    }
}

/// Fraction of `n_dirs` random unit directions `v` with
/// `f(θ + R v) − f(θ) ≤ −τ R²`, using exact values.
pub fn estimate_p_dir(
    objective: &dyn Objective,
    theta: &[f64],
    radius: f64,
    tau: f64,
    n_dirs: usize,
    rng: &mut dyn RngCore,
) -> Result<f64, ObjectiveError> {
    let f0 = objective.eval_exact(theta)?;
    let mut hits = 0usize;
    let mut probe = theta.to_vec();
    for _ in 0..n_dirs {
        let v = random_unit_vector(theta.len(), rng);
        for (p, (t, vi)) in probe.iter_mut().zip(theta.iter().zip(&v)) {
            *p = t + radius * vi;
        }
        if objective.eval_exact(&probe)? - f0 <= -tau * radius * radius {
            hits += 1;
        }
    }
    Ok(hits as f64 / n_dirs as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_laws() {
        let l = PlateauLandscape::new(LandscapeConfig::default()).unwrap();
        assert!((l.width - 0.510204).abs() < 1e-6);
        assert_eq!(l.depth, 30.0);
        assert_eq!(l.informative_mask.iter().filter(|&&m| m).count(), 4);
        // Total variance A²/2 Σ c_i² = 0.25.
        let analytic = 0.5 * l.ripple_scale.powi(2) * l.weights.iter().map(|c| c * c).sum::<f64>();
        assert!((analytic / 0.25 - 1.0).abs() < 0.05, "{analytic}");
    }

    #[test]
    fn minimum_is_the_gorge_floor() {
        let l = PlateauLandscape::new(LandscapeConfig::default()).unwrap();
        let band = l.ripple_scale * l.weights.iter().sum::<f64>();
        assert!((l.minimum_value() + 30.0).abs() <= band);
        // Informative phases sit on θ*, so only the minor coordinates contribute there.
        let minor: f64 = l.weights.iter().skip(4).sum::<f64>() * l.ripple_scale;
        assert!((l.minimum_value() + 30.0).abs() <= minor);
    }

    #[test]
    fn standard_start_distance() {
        for support in [GorgeSupport::Isotropic, GorgeSupport::Informative] {
            let l = PlateauLandscape::new(LandscapeConfig { gorge_support: support, ..Default::default() }).unwrap();
            let t0 = l.standard_start();
            assert!((l.distance_to_optimum(&t0) / l.width - 6.1).abs() < 1e-9);
            // exp(-6.1²/2) ≈ 8.5e-9 relative to the depth.
            assert!(l.gorge(&t0).abs() / l.depth < 1e-8);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let l = PlateauLandscape::new(LandscapeConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let t: Vec<f64> = l
                .theta_star
                .iter()
                .map(|c| c + rng.random_range(-0.8..0.8))
                .collect();
            let g = l.gradient(&t);
            for i in 0..l.config.d {
                let mut tp = t.clone();
                let mut tm = t.clone();
                tp[i] += 1e-5;
                tm[i] -= 1e-5;
                let fd = (l.value(&tp) - l.value(&tm)) / 2e-5;
                assert!((fd - g[i]).abs() < 1e-6, "{i}: {fd} vs {}", g[i]);
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let l = PlateauLandscape::new(LandscapeConfig::default()).unwrap();
        assert_eq!(PlateauLandscape::from_json(&l.to_json()).unwrap(), l);
        assert!(PlateauLandscape::new(LandscapeConfig { b_w: 1.0, ..Default::default() }).is_err());
        assert!(PlateauLandscape::new(LandscapeConfig { d: 1, ..Default::default() }).is_err());
    }
}
