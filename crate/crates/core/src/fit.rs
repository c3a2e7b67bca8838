//! Power-law fitting on log-log axes.

use crate::error::{Error, Result};

/// Result of fitting y = a * x^b by least squares on (ln x, ln y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub coefficient: f64,
    pub exponent: f64,
    pub stderr_coefficient: f64,
    pub stderr_exponent: f64,
    pub r_squared: f64,
}

/// Fits `points` = (x, y) pairs, all strictly positive, at least three of
/// them. Parameter standard errors come from the OLS covariance; the
/// coefficient error is propagated through the exponential.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::domain(format!(
            "power-law fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    for &(x, y) in points {
        if !(x > 0.0) || !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::domain(format!(
                "power-law fit needs strictly positive finite points, got ({x}, {y})"
            )));
        }
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::domain(
            "power-law fit needs at least two distinct x values",
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let ssr: f64 = logs
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum();
    let sst: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let dof = n - 2.0;
    let variance = (ssr / dof).max(0.0);
    let stderr_slope = (variance / sxx).sqrt();
    let stderr_intercept = (variance * (1.0 / n + mean_x * mean_x / sxx)).sqrt();
    let coefficient = intercept.exp();
    let r_squared = if sst > 0.0 { 1.0 - ssr / sst } else { 1.0 };

    Ok(ScalingFit {
        coefficient,
        exponent: slope,
        stderr_coefficient: coefficient * stderr_intercept,
        stderr_exponent: stderr_slope,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_inverse_law() {
        let points: Vec<(f64, f64)> = (1..=6)
            .map(|k| {
                let x = (1 << k) as f64;
                (x, 1.0 / x)
            })
            .collect();
        let fit = fit_power_law(&points).unwrap();
        assert!((fit.coefficient - 1.0).abs() < 1e-10);
        assert!((fit.exponent + 1.0).abs() < 1e-10);
        assert!(fit.stderr_exponent < 1e-10);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recovers_synthetic_parameters() {
        let points: Vec<(f64, f64)> = [8.0, 16.0, 64.0, 256.0, 1024.0, 2400.0]
            .iter()
            .map(|&x: &f64| (x, 2.2 * x.powf(-1.04)))
            .collect();
        let fit = fit_power_law(&points).unwrap();
        assert!((fit.coefficient - 2.2).abs() < 1e-8);
        assert!((fit.exponent + 1.04).abs() < 1e-8);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 0.5)]).is_err());
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 0.5), (3.0, 0.0)]).is_err());
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 0.5), (4.0, -0.1)]).is_err());
        assert!(fit_power_law(&[(2.0, 1.0), (2.0, 0.5), (2.0, 0.2)]).is_err());
    }
}
