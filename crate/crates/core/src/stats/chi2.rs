//! Central and non-central chi-squared densities and distribution functions.
//!
//! The non-central forms are Poisson mixtures of central laws. Summation starts
//! at the Poisson mode `floor(lambda/2)` and walks outward using the
//! three-term recurrences of the central density and of `P(a, x)`, so a single
//! incomplete-gamma evaluation serves the whole mixture.

use super::special::{gamma_p, ln_gamma};
use super::StatsError;

/// Tail mass below which the Poisson mixture is truncated.
const MIXTURE_TAIL: f64 = 1e-12;

fn check_args(x: f64, d: u32) -> Result<(), StatsError> {
    if d < 1 {
        return Err(StatsError::Domain(format!("degrees of freedom must be >= 1, got {d}")));
    }
    if !(x >= 0.0) {
        return Err(StatsError::Domain(format!("chi-squared argument must be >= 0, got {x}")));
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<(), StatsError> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(StatsError::Domain(format!(
            "non-centrality must be finite and >= 0, got {lambda}"
        )));
    }
    Ok(())
}

/// Central density at `x > 0` for real-valued degrees of freedom `k`.
fn chi2_pdf_positive(x: f64, k: f64) -> f64 {
    let half = 0.5 * k;
    ((half - 1.0) * x.ln() - 0.5 * x - half * std::f64::consts::LN_2 - ln_gamma(half)).exp()
}

/// Density of the central chi-squared law with `d` degrees of freedom.
pub fn chi2_pdf(x: f64, d: u32) -> Result<f64, StatsError> {
    check_args(x, d)?;
    if x == 0.0 {
        return Ok(match d {
            1 => f64::INFINITY,
            2 => 0.5,
            _ => 0.0,
        });
    }
    Ok(chi2_pdf_positive(x, d as f64))
}

pub fn chi2_cdf(x: f64, d: u32) -> Result<f64, StatsError> {
    check_args(x, d)?;
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(gamma_p(0.5 * d as f64, 0.5 * x))
}

/// Poisson(mu) weights walked outward from the mode, truncated once the bound on the
/// unvisited mass on each side falls under `MIXTURE_TAIL / 2`.
struct PoissonWalk {
    mu: f64,
    mode: u64,
    mode_weight: f64,
}

impl PoissonWalk {
    fn new(mu: f64) -> Self {
        let mode = mu.floor() as u64;
        let j = mode as f64;
        let mode_weight = if mu == 0.0 {
            1.0
        } else {
            (-mu + j * mu.ln() - ln_gamma(j + 1.0)).exp()
        };
        Self { mu, mode, mode_weight }
    }

    /// `(j, w_j)` for `j = mode, mode + 1, ...`.
    fn upward(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let mu = self.mu;
        let mut j = self.mode;
        let mut w = self.mode_weight;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let item = (j, w);
            let next = w * mu / (j as f64 + 1.0);
            // Remaining upper mass is bounded by a geometric series once ratio < 1.
            let ratio = mu / (j as f64 + 2.0);
            if ratio < 1.0 && next / (1.0 - ratio) < 0.5 * MIXTURE_TAIL {
                done = true;
            }
            if mu == 0.0 {
                done = true;
            }
            j += 1;
            w = next;
            Some(item)
        })
    }

    /// `(j, w_j)` for `j = mode - 1, mode - 2, ..., 0`.
    fn downward(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let mu = self.mu;
        let mut j = self.mode;
        let mut w = self.mode_weight;
        let mut done = self.mode == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            w *= j as f64 / mu;
            j -= 1;
            let item = (j, w);
            let ratio = j as f64 / mu;
            if j == 0 || (ratio < 1.0 && w * ratio / (1.0 - ratio) < 0.5 * MIXTURE_TAIL) {
                done = true;
            }
            Some(item)
        })
    }
}

/// Density of the non-central chi-squared law `χ²_d(λ)`.
pub fn noncentral_chi2_pdf(x: f64, d: u32, lambda: f64) -> Result<f64, StatsError> {
    check_args(x, d)?;
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return chi2_pdf(x, d);
    }
    if x == 0.0 {
        // Only the j = 0 component can be non-zero at the origin.
        return Ok((-0.5 * lambda).exp() * chi2_pdf(0.0, d)?);
    }
    let walk = PoissonWalk::new(0.5 * lambda);
    let k0 = d as f64 + 2.0 * walk.mode as f64;
    let pdf0 = chi2_pdf_positive(x, k0);

    let mut total = 0.0;
    let mut pdf = pdf0;
    for (j, w) in walk.upward() {
        total += w * pdf;
        // f_{k+2}(x) = f_k(x) x / k
        pdf *= x / (d as f64 + 2.0 * j as f64);
    }
    let mut pdf = pdf0;
    for (j, w) in walk.downward() {
        // f_k(x) = f_{k+2}(x) k / x
        pdf *= (d as f64 + 2.0 * j as f64) / x;
        total += w * pdf;
    }
    Ok(total)
}

pub fn noncentral_chi2_cdf(x: f64, d: u32, lambda: f64) -> Result<f64, StatsError> {
    check_args(x, d)?;
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return chi2_cdf(x, d);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let y = 0.5 * x;
    let walk = PoissonWalk::new(0.5 * lambda);
    let a0 = 0.5 * d as f64 + walk.mode as f64;
    let p0 = gamma_p(a0, y);
    // t(a) = y^a e^{-y} / Γ(a + 1), so that P(a + 1, y) = P(a, y) - t(a).
    let t0 = (a0 * y.ln() - y - ln_gamma(a0 + 1.0)).exp();

    let mut total = 0.0;
    let (mut p, mut t) = (p0, t0);
    for (j, w) in walk.upward() {
        total += w * p;
        let a = 0.5 * d as f64 + j as f64;
        p = (p - t).max(0.0);
        t *= y / (a + 1.0);
    }
    let (mut p, mut t) = (p0, t0);
    for (j, w) in walk.downward() {
        // P(a - 1, y) = P(a, y) + t(a - 1), t(a - 1) = t(a) (a) / y
        let a = 0.5 * d as f64 + j as f64 + 1.0;
        t *= a / y;
        p = (p + t).min(1.0);
        total += w * p;
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Exact log-density ratio `ln f_{χ²_d(λ)}(s) - ln f_{χ²_d}(s)`.
pub fn noncentral_log_ratio(s: f64, d: u32, lambda: f64) -> Result<f64, StatsError> {
    check_args(s, d)?;
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(0.0);
    }
    if s == 0.0 {
        return Ok(-0.5 * lambda);
    }
    // ratio = e^{-λ/2} Σ_j (λ s / 4)^j Γ(d/2) / (j! Γ(d/2 + j)); summed in log space.
    let z = 0.25 * lambda * s;
    let half = 0.5 * d as f64;
    let ln_term = |j: f64| j * z.ln() + ln_gamma(half) - ln_gamma(j + 1.0) - ln_gamma(half + j);
    // The summand peaks near j ≈ sqrt(z) for large z.
    let peak = z.sqrt().floor();
    let ln_peak = ln_term(peak);
    let mut acc = 0.0;
    let mut j = peak;
    loop {
        let r = (ln_term(j) - ln_peak).exp();
        acc += r;
        if r < 1e-17 * acc {
            break;
        }
        j += 1.0;
    }
    let mut j = peak - 1.0;
    while j >= 0.0 {
        let r = (ln_term(j) - ln_peak).exp();
        acc += r;
        if r < 1e-17 * acc {
            break;
        }
        j -= 1.0;
    }
    Ok(-0.5 * lambda + ln_peak + acc.ln())
}
