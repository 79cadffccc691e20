use serde::{Deserialize, Serialize};

use super::config::{ExploitAllocation, SpartaConfig};

/// Shots per coordinate `B_i ∝ V_i/σ_i²` summing to `total`, each at least `s_min`.
///
/// Coordinates whose proportional share falls below `s_min` are pinned there and
/// the rest is re-split among the others; integer shares use largest remainders.
/// If `total < d · s_min` every coordinate gets `s_min`.
pub fn exploration_allocation(v: &[f64], sigma_sq: &[f64], total: u64, s_min: u64) -> Vec<u64> {
    let d = v.len();
    let mut weights: Vec<f64> = v.iter().zip(sigma_sq).map(|(vi, s2)| (vi / s2).max(0.0)).collect();
    if !weights.iter().any(|&w| w > 0.0 && w.is_finite()) {
        weights = vec![1.0; d];
    }
    if total <= d as u64 * s_min {
        return vec![s_min; d];
    }

    let mut pinned = vec![false; d];
    loop {
        let free_total = total - s_min * pinned.iter().filter(|&&p| p).count() as u64;
        let free_weight: f64 = (0..d).filter(|&i| !pinned[i]).map(|i| weights[i]).sum();
        let mut changed = false;
        for i in 0..d {
            if !pinned[i] && free_total as f64 * weights[i] / free_weight < s_min as f64 {
                pinned[i] = true;
                changed = true;
            }
        }
        if !changed {
            let ideal: Vec<f64> = (0..d)
                .map(|i| if pinned[i] { 0.0 } else { free_total as f64 * weights[i] / free_weight })
                .collect();
            let mut out: Vec<u64> = (0..d)
                .map(|i| if pinned[i] { s_min } else { ideal[i].floor() as u64 })
                .collect();
            let mut short = total - out.iter().sum::<u64>();
            let mut order: Vec<usize> = (0..d).filter(|&i| !pinned[i]).collect();
            order.sort_by(|&a, &b| {
                let (ra, rb) = (ideal[a] - ideal[a].floor(), ideal[b] - ideal[b].floor());
                rb.total_cmp(&ra).then(a.cmp(&b))
            });
            for &i in order.iter().cycle() {
                if short == 0 {
                    break;
                }
                out[i] += 1;
                short -= 1;
            }
            return out;
        }
    }
}

/// Exponentially smoothed gradient and per-shot noise scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcansState {
    pub chi: Vec<f64>,
    pub sigma_ema: Vec<f64>,
    pub step: u64,
}

impl GcansState {
    /// `χ = 0` with noise scales `σ_i`.
    pub fn new(sigma: Vec<f64>) -> Self {
        Self { chi: vec![0.0; sigma.len()], sigma_ema: sigma, step: 0 }
    }

    /// `x ← μ x + (1 − μ) new` for both tracks.
    pub fn update(&mut self, grad: &[f64], sigma: &[f64], mu: f64) {
        for (c, g) in self.chi.iter_mut().zip(grad) {
            *c = mu * *c + (1.0 - mu) * g;
        }
        for (s, n) in self.sigma_ema.iter_mut().zip(sigma) {
            *s = mu * *s + (1.0 - mu) * n;
        }
        self.step += 1;
    }
}

/// Exploitation shots per coordinate.
pub fn gcans_allocate(state: &GcansState, config: &SpartaConfig) -> Vec<u64> {
    let d = state.sigma_ema.len();
    let s_min = config.s_min;
    let sigma_sum: f64 = state.sigma_ema.iter().sum();
    match config.exploit {
        ExploitAllocation::Gcans => {
            let chi_sq: f64 = state.chi.iter().map(|c| c * c).sum();
            if !(chi_sq > 0.0) {
                return vec![s_min; d];
            }
            let le = config.lipschitz_l * config.eta;
            let c = 2.0 * le / (2.0 - le);
            state
                .sigma_ema
                .iter()
                .map(|s| ceil_shots((c * s * sigma_sum / chi_sq).max(s_min as f64)))
                .collect()
        }
        ExploitAllocation::SigmaProportional { total } => {
            if !(sigma_sum > 0.0) {
                return vec![s_min; d];
            }
            state
                .sigma_ema
                .iter()
                .map(|s| ceil_shots((total as f64 * s / sigma_sum).max(s_min as f64)))
                .collect()
        }
    }
}

/// Shot counts saturate far below `u64::MAX` so a vanishing `‖χ‖` cannot overflow.
fn ceil_shots(x: f64) -> u64 {
    const CAP: f64 = 1e12;
    x.min(CAP).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportional_example() {
        assert_eq!(exploration_allocation(&[4.0, 1.0], &[1.0, 1.0], 100, 6), vec![80, 20]);
        assert_eq!(exploration_allocation(&[1.0; 4], &[2.0; 4], 400, 6), vec![100; 4]);
    }

    #[test]
    fn floor_is_respected_and_total_kept() {
        let b = exploration_allocation(&[100.0, 1.0, 1.0], &[1.0; 3], 60, 6);
        assert_eq!(b.iter().sum::<u64>(), 60);
        assert!(b.iter().all(|&x| x >= 6));
        assert_eq!(b, vec![48, 6, 6]);
        // Zero proxies degrade to uniform.
        assert_eq!(exploration_allocation(&[0.0, 0.0], &[1.0, 1.0], 20, 6), vec![10, 10]);
        assert_eq!(exploration_allocation(&[1.0, 2.0], &[1.0, 1.0], 5, 6), vec![6, 6]);
    }

    #[test]
    fn gcans_formula_and_floor() {
        let cfg = SpartaConfig::default();
        let mut st = GcansState::new(vec![1.0, 1.0]);
        assert_eq!(gcans_allocate(&st, &cfg), vec![6, 6]);
        st.chi = vec![1.0, 0.0];
        // Raw 0.05128 · 2 = 0.10 is below s_min.
        assert_eq!(gcans_allocate(&st, &cfg), vec![6, 6]);
        st.chi = vec![0.01, 0.0];
        let raw: f64 = 2.0 * 0.05 / 1.95 * 2.0 / 1e-4;
        assert_eq!(gcans_allocate(&st, &cfg), vec![raw.ceil() as u64; 2]);
    }

    #[test]
    fn ema_from_zero() {
        let mut st = GcansState::new(vec![0.5]);
        st.update(&[2.0], &[1.5], 0.9);
        assert!((st.chi[0] - 0.2).abs() < 1e-15);
        assert!((st.sigma_ema[0] - 0.6).abs() < 1e-15);
        assert_eq!(st.step, 1);
    }
}
