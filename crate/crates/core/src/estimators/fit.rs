use serde::{Deserialize, Serialize};

use crate::error::{HurstError, Result};

/// Ordinary least squares line through `(ln scale, ln fluctuation)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Standard error of the slope; `None` for a two-point fit (no residual
    /// degrees of freedom).
    pub std_err: Option<f64>,
}

/// Fits `ln y = intercept + slope * ln x` over raw `(x, y)` pairs.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 2 {
        return Err(HurstError::InsufficientData {
            needed: 2,
            got: points.len(),
        });
    }
    let mut logged = Vec::with_capacity(points.len());
    for &(x, y) in points {
        if !(x > 0.0 && x.is_finite() && y > 0.0 && y.is_finite()) {
            return Err(HurstError::Domain(format!(
                "log-log fit needs positive finite values, got ({x}, {y})"
            )));
        }
        logged.push((x.ln(), y.ln()));
    }
    ols(&logged)
}

/// OLS on already-logged points.
pub(crate) fn ols(points: &[(f64, f64)]) -> Result<LogLogFit> {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx <= 0.0 {
        return Err(HurstError::Domain(
            "log-log fit needs at least two distinct scales".to_string(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - sse / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let std_err = (points.len() > 2).then(|| (sse / (n - 2.0) / sxx).sqrt());
    Ok(LogLogFit {
        slope,
        intercept,
        r_squared,
        std_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_power_law() {
        let points: Vec<(f64, f64)> = [4.0, 8.0, 16.0, 32.0, 64.0, 128.0]
            .iter()
            .map(|&m: &f64| (m, 2.5 * m.powf(0.7)))
            .collect();
        let fit = loglog_fit(&points).unwrap();
        assert_abs_diff_eq!(fit.slope, 0.7, epsilon = 1e-13);
        assert_abs_diff_eq!(fit.intercept, 2.5f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-14);
        assert!(fit.std_err.unwrap() < 1e-12);
    }

    #[test]
    fn two_point_slope() {
        let fit = loglog_fit(&[(4.0, 2.0), (16.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(fit.slope, 0.5, epsilon = 1e-15);
        assert_eq!(fit.std_err, None);
    }

    #[test]
    fn noisy_fit_statistics() {
        // already-logged coordinates fed straight to ols
        let pts = [(0.0, 1.0), (1.0, 0.0), (2.0, 3.0), (3.0, 2.0)];
        let fit = ols(&pts).unwrap();
        // sxx = 5, sxy = 3, slope 0.6, syy = 5, sse = syy - slope * sxy = 3.2
        assert_abs_diff_eq!(fit.slope, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(fit.r_squared, 1.0 - 3.2 / 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fit.std_err.unwrap(), (3.2f64 / 2.0 / 5.0).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            loglog_fit(&[(4.0, 1.0)]),
            Err(HurstError::InsufficientData { needed: 2, got: 1 })
        ));
        assert!(matches!(
            loglog_fit(&[(4.0, 1.0), (8.0, 0.0)]),
            Err(HurstError::Domain(_))
        ));
        assert!(matches!(
            loglog_fit(&[(-4.0, 1.0), (8.0, 2.0)]),
            Err(HurstError::Domain(_))
        ));
        assert!(matches!(
            loglog_fit(&[(4.0, 1.0), (4.0, 2.0)]),
            Err(HurstError::Domain(_))
        ));
    }
}
