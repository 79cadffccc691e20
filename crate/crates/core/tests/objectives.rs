use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use sparta_core::objectives::*;
use sparta_core::quantum::{build_tfim_chain, QaoaCircuit, ShotNoiseModel};
use sparta_core::stats::{mean, sample_variance};

fn qaoa() -> QaoaObjective {
    let c = QaoaCircuit::with_x_mixer(build_tfim_chain(3, 1.0, 0.7).unwrap(), 1).unwrap();
    QaoaObjective::new(c, ShotNoiseModel { sigma: 0.5, ..Default::default() }).unwrap()
}

fn landscape() -> PlateauLandscape {
    PlateauLandscape::new(LandscapeConfig { probe_samples: 2000, ..Default::default() }).unwrap()
}

fn noisy_means(obj: &dyn Objective, theta: &[f64], shots: u64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| obj.eval_noisy(theta, shots, &mut rng).unwrap().mean).collect()
}

#[test]
fn noisy_values_are_unbiased() {
    let l = landscape();
    let q = qaoa();
    let cases: [(&dyn Objective, Vec<f64>); 2] = [(&l, l.standard_start()), (&q, vec![0.3, -0.4])];
    for (obj, theta) in cases {
        let xs = noisy_means(obj, &theta, 10, 100_000, 3);
        let se = (sample_variance(&xs) / xs.len() as f64).sqrt();
        let exact = obj.eval_exact(&theta).unwrap();
        assert!((mean(&xs) - exact).abs() < 4.0 * se, "{} vs {exact}", mean(&xs));
    }
}

#[test]
fn variance_falls_inversely_with_shots() {
    let q = qaoa();
    let theta = [0.2, 0.9];
    for shots in [10u64, 100, 1000] {
        let xs = noisy_means(&q, &theta, shots, 20_000, shots);
        let expected = 0.25 / shots as f64;
        // Sample variance of Gaussian draws has relative SE sqrt(2/(n-1)).
        assert!((sample_variance(&xs) / expected - 1.0).abs() < 4.0 * (2.0 / 19_999.0f64).sqrt(), "B = {shots}");
        let reported = q.eval_noisy(&theta, shots, &mut ChaCha8Rng::seed_from_u64(0)).unwrap().variance;
        assert!((reported - expected).abs() < 1e-15);
    }
}

#[test]
fn gradient_estimates_are_unbiased_with_reported_variance() {
    let l = landscape();
    let theta = l.standard_start();
    let exact = l.grad_oracle(&theta).unwrap();
    let shots: Vec<u64> = (0..l.dimension() as u64).map(|i| 1 + 7 * i).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let draws: Vec<_> = (0..20_000).map(|_| l.gradient_estimate(&theta, &shots, &mut rng).unwrap()).collect();
    for i in 0..l.dimension() {
        let col: Vec<f64> = draws.iter().map(|g| g.mean[i]).collect();
        let var = draws[0].variance[i];
        assert!((var - l.config.noise_sigma.powi(2) / shots[i] as f64).abs() < 1e-15);
        assert!((mean(&col) - exact[i]).abs() < 4.0 * (var / col.len() as f64).sqrt(), "coord {i}");
    }
}

/// Mean non-centrality `Σ B_i g_i² / σ_i²` with `g_i ~ N(0, σ_i² v)`.
fn mc_noncentrality(shots: &[f64], sigma_sq: &[f64], v: f64, n: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambdas: Vec<f64> = (0..n)
        .map(|_| {
            shots
                .iter()
                .zip(sigma_sq)
                .map(|(b, s2)| {
                    let g = Normal::new(0.0, (s2 * v).sqrt()).unwrap().sample(&mut rng);
                    b / s2 * g * g
                })
                .sum()
        })
        .collect();
    (mean(&lambdas), (sample_variance(&lambdas) / n as f64).sqrt())
}

#[test]
fn expected_noncentrality_is_variance_times_total_shots() {
    let v = 0.013;
    let shots = [40.0, 10.0, 250.0, 3.0];
    let sigma_sq = [0.2, 3.0, 0.7, 1.1];
    let (m, se) = mc_noncentrality(&shots, &sigma_sq, v, 100_000, 1);
    assert!((m - v * shots.iter().sum::<f64>()).abs() < 3.0 * se, "{m}");
}

/// The closed form `d · Var · B̄ / σ̄²` agrees when the mean per-shot variance is
/// one, heterogeneous or not.
#[test]
fn closed_form_with_unit_mean_noise() {
    let v = 0.05;
    let shots = [80.0, 20.0, 100.0];
    let d = shots.len() as f64;
    let b_bar = shots.iter().sum::<f64>() / d;
    for sigma_sq in [[1.0, 1.0, 1.0], [0.5, 1.5, 1.0]] {
        let s_bar = sigma_sq.iter().sum::<f64>() / d;
        let (m, se) = mc_noncentrality(&shots, &sigma_sq, v, 100_000, 2);
        assert!((m - d * v * b_bar / s_bar).abs() < 3.0 * se, "{sigma_sq:?}: {m}");
    }
}

#[test]
fn direction_probability_sanity() {
    let l = landscape();
    let theta = l.standard_start();
    let r = l.distance_to_optimum(&theta);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let near = estimate_p_dir(&l, &theta, r, 0.1, 20_000, &mut rng).unwrap();
    assert!(near > 0.0 && near < 0.5, "{near}");
    // From a sloped point of a bowl, tiny radii descend on half the sphere.
    let q = Quadratic::isotropic(5, 0.1);
    let half = estimate_p_dir(&q, &[1.0, 0.0, 0.0, 0.0, 0.0], 1e-4, 1e-3, 20_000, &mut rng).unwrap();
    assert!((half - 0.5).abs() < 0.02, "{half}");
}

#[test]
fn unit_vectors_are_isotropic() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let d = 6;
    let n = 50_000;
    let mut second = vec![0.0; d];
    for _ in 0..n {
        let v = random_unit_vector(d, &mut rng);
        for (s, x) in second.iter_mut().zip(&v) {
            *s += x * x / n as f64;
        }
    }
    for s in second {
        assert!((s - 1.0 / d as f64).abs() < 0.005);
    }
}
