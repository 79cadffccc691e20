use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use sparta_core::objectives::{Objective, Quadratic};
use sparta_core::regime::*;
use sparta_core::stats::{chi2_cdf, ks_test};

/// A whitened statistic with non-centrality `lambda` spread evenly over `d` coordinates.
fn draw(d: usize, lambda: f64, rng: &mut ChaCha8Rng) -> f64 {
    let shift = (lambda / d as f64).sqrt();
    (0..d)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            (z + shift).powi(2)
        })
        .sum()
}

fn run_test(d: usize, lambda: f64, cfg: &RegimeTestConfig, rng: &mut ChaCha8Rng) -> RegimeTestState {
    let l1 = cfg.design_lambda(d);
    let mut st = RegimeTestState::new();
    while !st.is_decided() {
        st = st.update(draw(d, lambda, rng), d, l1, cfg).unwrap();
    }
    st
}

fn three_se(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

#[test]
fn null_streams_rarely_ever_cross_the_upper_threshold() {
    const STREAMS: usize = 2000;
    let d = 4;
    for llr in [LlrForm::Linear, LlrForm::Exact] {
        let cfg = RegimeTestConfig { llr, ..Default::default() };
        let (upper, _) = thresholds(&cfg);
        let l1 = cfg.design_lambda(d);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // The lower threshold is ignored: crossing A at any of 200 rounds counts.
        let crossed = (0..STREAMS)
            .filter(|_| {
                let mut lam = 0.0;
                (0..200).any(|_| {
                    let s = draw(d, 0.0, &mut rng);
                    lam += match llr {
                        LlrForm::Linear => llr_step(s, d, l1),
                        LlrForm::Exact => sparta_core::stats::noncentral_log_ratio(s, d as u32, l1).unwrap(),
                    };
                    lam >= upper
                })
            })
            .count();
        let rate = crossed as f64 / STREAMS as f64;
        assert!(rate <= 0.05 + three_se(0.05, STREAMS), "{llr:?}: {rate}");
    }
}

#[test]
fn exact_llr_has_nominal_power_under_wald() {
    const STREAMS: usize = 2000;
    let d = 4;
    let cfg = RegimeTestConfig {
        calibration: Calibration::Wald,
        llr: LlrForm::Exact,
        max_rounds: 10_000,
        ..Default::default()
    };
    let l1 = cfg.design_lambda(d);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let missed = (0..STREAMS)
        .filter(|_| run_test(d, l1, &cfg, &mut rng).decision == Decision::Plateau)
        .count();
    let rate = missed as f64 / STREAMS as f64;
    assert!(rate <= cfg.beta + three_se(cfg.beta, STREAMS), "{rate}");
}

#[test]
fn ville_needs_at_least_as_many_rounds_as_wald() {
    const STREAMS: usize = 2000;
    let d = 4;
    let mean_rounds = |calibration| {
        let cfg = RegimeTestConfig { calibration, llr: LlrForm::Exact, max_rounds: 10_000, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l1 = cfg.design_lambda(d);
        (0..STREAMS).map(|_| run_test(d, l1, &cfg, &mut rng).round as f64).sum::<f64>() / STREAMS as f64
    };
    let (ville, wald) = (mean_rounds(Calibration::Ville), mean_rounds(Calibration::Wald));
    assert!(ville >= wald, "{ville} < {wald}");
}

/// Whitening with the allocation the estimate was taken with keeps the null law
/// central whatever that allocation is.
#[test]
fn skewed_allocation_keeps_null_calibration() {
    let q = Quadratic::isotropic(4, 0.3);
    let shots = [400u64, 10, 60, 7];
    let sigma_sq = [0.09; 4];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s: Vec<f64> = (0..5000)
        .map(|_| whiten(&q.gradient_estimate(&[0.0; 4], &shots, &mut rng).unwrap(), &sigma_sq, &shots).unwrap().s)
        .collect();
    let ks = ks_test(&s, |x| chi2_cdf(x, 4).unwrap()).unwrap();
    assert!(ks.p_value > 1e-3, "{}", ks.p_value);
}

proptest! {
    #[test]
    fn replay_is_bit_identical(stats in prop::collection::vec(0.0f64..60.0, 1..80), exact in any::<bool>()) {
        let cfg = RegimeTestConfig {
            llr: if exact { LlrForm::Exact } else { LlrForm::Linear },
            max_rounds: 1000,
            ..Default::default()
        };
        let replay = || {
            let mut st = RegimeTestState::new();
            let mut trace = Vec::new();
            for &s in &stats {
                if st.is_decided() {
                    break;
                }
                st = st.update(s, 6, cfg.design_lambda(6), &cfg).unwrap();
                trace.push(st.lambda.to_bits());
            }
            (st, trace)
        };
        prop_assert_eq!(replay(), replay());
    }

    #[test]
    fn cumulative_linear_llr_is_the_running_sum(stats in prop::collection::vec(0.0f64..30.0, 1..40)) {
        let cfg = RegimeTestConfig { max_rounds: 1000, ..Default::default() };
        let d = 3;
        let l1 = cfg.design_lambda(d);
        let (upper, lower) = thresholds(&cfg);
        let mut st = RegimeTestState::new();
        let mut sum = 0.0;
        for &s in &stats {
            st = st.update(s, d, l1, &cfg).unwrap();
            sum += (s - d as f64) / 2.0 - l1 / 2.0;
            prop_assert!((st.lambda - sum).abs() < 1e-9);
            let expected = if sum >= upper { Decision::Informative } else if sum <= lower { Decision::Plateau } else { Decision::Continue };
            prop_assert_eq!(st.decision, expected);
            if st.is_decided() {
                break;
            }
        }
    }
}
