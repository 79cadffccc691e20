//! Student-t distribution function and quantile, fractional degrees of freedom allowed.

use super::special::beta_inc;
use super::StatsError;

fn check_nu(nu: f64) -> Result<(), StatsError> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(StatsError::Domain(format!("degrees of freedom must be > 0, got {nu}")));
    }
    Ok(())
}

pub fn t_cdf(t: f64, nu: f64) -> Result<f64, StatsError> {
    check_nu(nu)?;
    if t.is_nan() {
        return Err(StatsError::Domain("t statistic is NaN".into()));
    }
    if t == f64::INFINITY {
        return Ok(1.0);
    }
    if t == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let x = nu / (nu + t * t);
    let tail = 0.5 * beta_inc(0.5 * nu, 0.5, x);
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}

/// Upper-tail probability `P(T > t)`, accurate where `1 - t_cdf` would cancel.
pub fn t_sf(t: f64, nu: f64) -> Result<f64, StatsError> {
    t_cdf(-t, nu)
}

/// Inverse CDF by bracketing and bisection; `|t_cdf(q) - p| < 1e-10` on return.
pub fn t_quantile(p: f64, nu: f64) -> Result<f64, StatsError> {
    check_nu(nu)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(StatsError::Domain(format!("probability must lie in (0, 1), got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p < 0.5 {
        return t_quantile(1.0 - p, nu).map(|q| -q);
    }
    // Upper tail target, so the search never works with 1 - tiny.
    let tail = 1.0 - p;
    let mut hi = 1.0;
    while t_sf(hi, nu)? > tail {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(StatsError::Domain(format!("quantile overflow for p={p}, nu={nu}")));
        }
    }
    let mut lo = 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t_sf(mid, nu)? > tail {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::special::normal_quantile;

    #[test]
    fn median_is_zero() {
        for &nu in &[0.3, 1.0, 4.5, 100.0] {
            assert_eq!(t_quantile(0.5, nu).unwrap(), 0.0);
        }
    }

    #[test]
    fn cauchy_case() {
        let q = t_quantile(0.975, 1.0).unwrap();
        let oracle = (std::f64::consts::PI * (0.975 - 0.5)).tan();
        assert!((q - oracle).abs() < 1e-8);
        assert!((q - 12.706).abs() < 1e-2);
    }

    #[test]
    fn large_nu_tends_to_normal() {
        let q = t_quantile(0.95, 1e6).unwrap();
        assert!((q - normal_quantile(0.95)).abs() < 1e-3);
        assert!((q - 1.6449).abs() < 1e-3);
    }

    #[test]
    fn cdf_inverts_quantile() {
        for &nu in &[0.7, 1.0, 2.5, 3.0, 7.0, 30.0, 1e4] {
            for &p in &[1e-6, 0.01, 0.2, 0.5, 0.7, 0.95, 0.999_9] {
                let q = t_quantile(p, nu).unwrap();
                assert!((t_cdf(q, nu).unwrap() - p).abs() < 1e-10, "nu={nu} p={p}");
            }
        }
    }

    #[test]
    fn known_table_value() {
        assert!((t_quantile(0.95, 3.0).unwrap() - 2.353_363_434_8).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(t_quantile(0.0, 3.0).is_err());
        assert!(t_quantile(1.0, 3.0).is_err());
        assert!(t_quantile(0.3, 0.0).is_err());
        assert!(t_cdf(1.0, -2.0).is_err());
    }
}
