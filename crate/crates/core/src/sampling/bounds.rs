use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Result};

/// Range of the per-order observation `χ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiBounds {
    pub chi_min: f64,
    pub chi_max: f64,
}

impl ChiBounds {
    pub fn new(chi_min: f64, chi_max: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&chi_min) || !(-1.0..=1.0).contains(&chi_max) || chi_min > chi_max {
            return invalid(format!("invalid observation range [{chi_min}, {chi_max}]"));
        }
        Ok(Self { chi_min, chi_max })
    }

    pub fn range(&self) -> f64 {
        self.chi_max - self.chi_min
    }

    /// Largest variance of a variable confined to the range: `range² / 4`.
    pub fn variance_bound(&self) -> f64 {
        self.range() * self.range() / 4.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBoundSpec {
    pub alpha: f64,
    pub z: f64,
    pub sigma2_bound: f64,
    pub m: u64,
    /// `|Î − I| ≤ e` with probability at least `1 − α` (normal approximation).
    pub e: f64,
}

/// Upper `α/2` point of the standard normal.
///
/// Uses the inverse normal CDF of `statrs` (accurate to about 1e-15 in this range).
pub fn z_quantile(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return invalid(format!("alpha must lie in (0, 1], got {alpha}"));
    }
    if alpha == 1.0 {
        return Ok(0.0);
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(1.0 - alpha / 2.0))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return invalid(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    Ok(())
}

/// `e = z · (χ_max − χ_min) / (2√m)` with an explicit quantile.
pub fn theoretical_error_bound_with_z(bounds: ChiBounds, m: u64, alpha: f64, z: f64) -> Result<ErrorBoundSpec> {
    check_alpha(alpha)?;
    if m == 0 {
        return invalid("sample size must be positive");
    }
    if !(z >= 0.0 && z.is_finite()) {
        return invalid(format!("invalid quantile {z}"));
    }
    Ok(ErrorBoundSpec {
        alpha,
        z,
        sigma2_bound: bounds.variance_bound(),
        m,
        e: z * bounds.range() / (2.0 * (m as f64).sqrt()),
    })
}

pub fn theoretical_error_bound(bounds: ChiBounds, m: u64, alpha: f64) -> Result<ErrorBoundSpec> {
    check_alpha(alpha)?;
    theoretical_error_bound_with_z(bounds, m, alpha, z_quantile(alpha)?)
}

/// Smallest `m ≥ 1` with `z² σ²_max / m ≤ e²`.
pub fn required_sample_size_with_z(bounds: ChiBounds, e: f64, z: f64) -> Result<u64> {
    if !(e > 0.0 && e.is_finite()) {
        return invalid(format!("error bound must be positive, got {e}"));
    }
    let mut m = ((z * z * bounds.variance_bound() / (e * e)).ceil() as u64).max(1);
    while z * bounds.range() / (2.0 * (m as f64).sqrt()) > e {
        m += 1;
    }
    Ok(m)
}

pub fn required_sample_size(bounds: ChiBounds, e: f64, alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    required_sample_size_with_z(bounds, e, z_quantile(alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        assert_eq!(z_quantile(1.0).unwrap(), 0.0);
        assert!((z_quantile(0.001).unwrap() - 3.290527).abs() < 1e-6);
        assert!((z_quantile(0.05).unwrap() - 1.959964).abs() < 1e-6);
        assert!(z_quantile(0.0).is_err());
        assert!(z_quantile(1.5).is_err());
    }

    #[test]
    fn reference_bounds() {
        let b = ChiBounds::new(-0.05, 0.05).unwrap();
        let e = theoretical_error_bound_with_z(b, 1000, 0.001, 3.29).unwrap().e;
        assert!((e * 1000.0 - 5.20195).abs() < 5e-6);
        let b = ChiBounds::new(-1.0, 0.0).unwrap();
        let e = theoretical_error_bound_with_z(b, 1000, 0.001, 3.29).unwrap().e;
        assert!((e * 1000.0 - 52.01947).abs() < 5e-5);
        let quarter = theoretical_error_bound_with_z(b, 4000, 0.001, 3.29).unwrap().e;
        assert_eq!(quarter * 2.0, e);
    }

    #[test]
    fn sample_size_inversion() {
        let b = ChiBounds::new(-1.0, 0.0).unwrap();
        assert_eq!(required_sample_size_with_z(b, 0.05, 3.29).unwrap(), 1083);
        assert_eq!(required_sample_size_with_z(ChiBounds::new(0.3, 0.3).unwrap(), 0.01, 3.29).unwrap(), 1);
        for e in [0.1, 0.013, 0.002] {
            let m = required_sample_size(b, e, 0.01).unwrap();
            assert!(theoretical_error_bound(b, m, 0.01).unwrap().e <= e);
            assert!(m == 1 || theoretical_error_bound(b, m - 1, 0.01).unwrap().e > e);
        }
        assert!(required_sample_size(b, 0.0, 0.01).is_err());
        assert!(theoretical_error_bound(b, 10, 1.0).is_err());
        assert!(ChiBounds::new(0.5, 0.1).is_err());
    }
}
