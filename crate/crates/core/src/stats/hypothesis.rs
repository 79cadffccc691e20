//! Classical tests and bounds: Kolmogorov–Smirnov, one-sided t bounds,
//! Clopper–Pearson, Cohen's d, Wilcoxon signed-rank and the paired t-test.

use serde::{Deserialize, Serialize};

use super::special::{beta_inc, normal_cdf};
use super::student::{t_quantile, t_sf};
use super::StatsError;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance; zero for fewer than two values.
pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

fn check_level(level: f64) -> Result<(), StatsError> {
    if !(level > 0.0 && level < 1.0) {
        return Err(StatsError::Domain(format!("level must lie in (0, 1), got {level}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    OneSidedUpper,
}

/// One-sided upper confidence bound on a mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceBound {
    pub estimate: f64,
    pub upper: f64,
    pub level: f64,
    pub side: BoundSide,
    /// Samples behind the bound.
    pub n: usize,
    /// Degrees of freedom of the t quantile used.
    pub dof: f64,
    /// Set when the sample spread is zero and `upper == estimate`.
    pub degenerate: bool,
}

/// `mean + t_{level, n-1} · s / sqrt(n)` over paired differences.
pub fn one_sided_ucb(samples: &[f64], level: f64) -> Result<ConfidenceBound, StatsError> {
    check_level(level)?;
    if samples.len() < 2 {
        return Err(StatsError::TooFewSamples { needed: 2, got: samples.len() });
    }
    let n = samples.len();
    let estimate = mean(samples);
    let sd = sample_variance(samples).sqrt();
    let dof = (n - 1) as f64;
    if sd == 0.0 {
        return Ok(ConfidenceBound {
            estimate,
            upper: estimate,
            level,
            side: BoundSide::OneSidedUpper,
            n,
            dof,
            degenerate: true,
        });
    }
    let upper = estimate + t_quantile(level, dof)? * sd / (n as f64).sqrt();
    Ok(ConfidenceBound { estimate, upper, level, side: BoundSide::OneSidedUpper, n, dof, degenerate: false })
}

/// Welch two-sample bound on `mean(a) - mean(b)` with Welch–Satterthwaite
/// degrees of freedom.
pub fn welch_ucb(a: &[f64], b: &[f64], level: f64) -> Result<ConfidenceBound, StatsError> {
    check_level(level)?;
    for xs in [a, b] {
        if xs.len() < 2 {
            return Err(StatsError::TooFewSamples { needed: 2, got: xs.len() });
        }
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (sample_variance(a) / na, sample_variance(b) / nb);
    let estimate = mean(a) - mean(b);
    let se2 = va + vb;
    let n = a.len() + b.len();
    if se2 == 0.0 {
        return Ok(ConfidenceBound {
            estimate,
            upper: estimate,
            level,
            side: BoundSide::OneSidedUpper,
            n,
            dof: na + nb - 2.0,
            degenerate: true,
        });
    }
    let dof = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    let upper = estimate + t_quantile(level, dof)? * se2.sqrt();
    Ok(ConfidenceBound { estimate, upper, level, side: BoundSide::OneSidedUpper, n, dof, degenerate: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Asymptotic Kolmogorov survival function `Q(t) = 2 Σ (-1)^{k-1} e^{-2 k² t²}`.
pub fn kolmogorov_sf(t: f64) -> f64 {
    if t < 0.2 {
        // Q(0.2) = 1 - 6e-27.
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..100_000u64 {
        let kf = k as f64;
        let term = 2.0 * (-2.0 * kf * kf * t * t).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-12 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// One-sample KS test of `samples` against a continuous `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsResult, StatsError> {
    if samples.len() < 8 {
        return Err(StatsError::TooFewSamples { needed: 8, got: samples.len() });
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(StatsError::Domain("NaN sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let statistic = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let below = f - i as f64 / n;
            let above = (i + 1) as f64 / n - f;
            below.max(above)
        })
        .fold(0.0_f64, f64::max);
    Ok(KsResult { statistic, p_value: kolmogorov_sf(n.sqrt() * statistic) })
}

/// Exact one-sided upper binomial bound at level `1 - alpha`.
///
/// Solves `I_p(x + 1, n - x) = 1 - alpha` by bisection.
pub fn clopper_pearson_upper(successes: u64, trials: u64, alpha: f64) -> Result<f64, StatsError> {
    if trials == 0 {
        return Err(StatsError::Domain("trials must be >= 1".into()));
    }
    if successes > trials {
        return Err(StatsError::Domain(format!("successes {successes} exceed trials {trials}")));
    }
    check_level(alpha)?;
    if successes == trials {
        return Ok(1.0);
    }
    let (a, b) = ((successes + 1) as f64, (trials - successes) as f64);
    let target = 1.0 - alpha;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if beta_inc(a, b, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Statistic and p-value with a flag for inputs that have no spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub statistic: f64,
    pub p_value: f64,
    pub degenerate: bool,
}

/// Pooled-SD standardized mean difference `(mean(a) - mean(b)) / s_pooled`.
///
/// With zero pooled spread the value is 0 for equal means and ±∞ otherwise,
/// and the outcome is flagged.
pub fn cohens_d(a: &[f64], b: &[f64]) -> Result<TestOutcome, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::TooFewSamples { needed: 1, got: a.len().min(b.len()) });
    }
    if a.len() != b.len() {
        return Err(StatsError::LengthMismatch { left: a.len(), right: b.len() });
    }
    let diff = mean(a) - mean(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let pooled = if na + nb > 2.0 {
        (((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / (na + nb - 2.0)).sqrt()
    } else {
        0.0
    };
    if pooled == 0.0 {
        let statistic = if diff == 0.0 { 0.0 } else { diff.signum() * f64::INFINITY };
        return Ok(TestOutcome { statistic, p_value: f64::NAN, degenerate: true });
    }
    Ok(TestOutcome { statistic: diff / pooled, p_value: f64::NAN, degenerate: false })
}

fn differences(pairs: &[(f64, f64)]) -> Vec<f64> {
    pairs.iter().map(|(a, b)| a - b).collect()
}

/// Two-tailed paired t-test on `a - b`.
pub fn paired_t_test(pairs: &[(f64, f64)]) -> Result<TestOutcome, StatsError> {
    if pairs.len() < 2 {
        return Err(StatsError::TooFewSamples { needed: 2, got: pairs.len() });
    }
    let d = differences(pairs);
    let n = d.len() as f64;
    let m = mean(&d);
    let sd = sample_variance(&d).sqrt();
    if sd == 0.0 {
        let (statistic, p_value) =
            if m == 0.0 { (0.0, 1.0) } else { (m.signum() * f64::INFINITY, 0.0) };
        return Ok(TestOutcome { statistic, p_value, degenerate: true });
    }
    let t = m / (sd / n.sqrt());
    let p_value = (2.0 * t_sf(t.abs(), n - 1.0)?).min(1.0);
    Ok(TestOutcome { statistic: t, p_value, degenerate: false })
}

/// Average ranks of `values` (1-based), ties sharing the mean of their positions.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let avg = 0.5 * ((start + 1) + end) as f64;
        for &k in &order[start..end] {
            ranks[k] = avg;
        }
        start = end;
    }
    ranks
}

/// Largest sample (after dropping zero differences) handled by exact enumeration.
const WILCOXON_EXACT_MAX: usize = 15;

/// Two-sided Wilcoxon signed-rank test on `a - b`.
///
/// Zero differences are dropped and tied magnitudes get average ranks. Up to 15
/// non-zero differences the null distribution of W+ is enumerated exactly;
/// beyond that a tie-corrected normal approximation with continuity correction
/// is used. The statistic reported is W+.
pub fn wilcoxon_signed_rank(pairs: &[(f64, f64)]) -> Result<TestOutcome, StatsError> {
    if pairs.len() < 6 {
        return Err(StatsError::TooFewSamples { needed: 6, got: pairs.len() });
    }
    let d: Vec<f64> = differences(pairs).into_iter().filter(|x| *x != 0.0).collect();
    if d.is_empty() {
        return Ok(TestOutcome { statistic: 0.0, p_value: 1.0, degenerate: true });
    }
    let abs: Vec<f64> = d.iter().map(|x| x.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(x, _)| **x > 0.0).map(|(_, r)| r).sum();
    let n = d.len();
    let total: f64 = ranks.iter().sum();
    let centre = 0.5 * total;

    let p_value = if n <= WILCOXON_EXACT_MAX {
        // Doubled ranks are integers; count subsets by their rank sum.
        let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let max_sum: usize = doubled.iter().sum();
        let mut counts = vec![0u64; max_sum + 1];
        counts[0] = 1;
        for &r in &doubled {
            for s in (r..=max_sum).rev() {
                counts[s] += counts[s - r];
            }
        }
        let obs_dev = (2.0 * w_plus - 2.0 * centre).abs();
        let total_count = (1u64 << n) as f64;
        let extreme: u64 = counts
            .iter()
            .enumerate()
            .filter(|(s, _)| (*s as f64 - 2.0 * centre).abs() >= obs_dev - 1e-9)
            .map(|(_, c)| c)
            .sum();
        (extreme as f64 / total_count).min(1.0)
    } else {
        let nf = n as f64;
        let mut tie_term = 0.0;
        let mut sorted = abs.clone();
        sorted.sort_by(f64::total_cmp);
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            let t = (j - i) as f64;
            tie_term += t * t * t - t;
            i = j;
        }
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
        let z = ((w_plus - centre).abs() - 0.5).max(0.0) / var.sqrt();
        (2.0 * (1.0 - normal_cdf(z))).min(1.0)
    };
    Ok(TestOutcome { statistic: w_plus, p_value, degenerate: false })
}
