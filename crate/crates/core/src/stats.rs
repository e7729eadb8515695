//! Eight-statistic summary with the Jarque–Bera normality statistic.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, HurstError, Result};

/// Upper 1% quantile of the chi-squared distribution with 2 degrees of
/// freedom, `-2 ln(0.01)`.
pub const JB_CRITICAL_1PCT: f64 = 9.210_340_371_976_184;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (divides by `n - 1`).
    pub std_dev: f64,
    /// Population skewness `m3 / m2^1.5`.
    pub skewness: f64,
    /// Population kurtosis `m4 / m2^2`, not excess (normal = 3).
    pub kurtosis: f64,
    pub jarque_bera: f64,
    pub jb_significant_1pct: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JarqueBera {
    pub statistic: f64,
    pub significant_1pct: bool,
}

/// `JB = n/6 * (S^2 + (K - 3)^2 / 4)`, compared against [`JB_CRITICAL_1PCT`].
pub fn jarque_bera(skewness: f64, kurtosis: f64, n: usize) -> Result<JarqueBera> {
    if n < 4 {
        return Err(HurstError::InsufficientData { needed: 4, got: n });
    }
    let excess = kurtosis - 3.0;
    let statistic = n as f64 / 6.0 * (skewness * skewness + excess * excess / 4.0);
    Ok(JarqueBera {
        statistic,
        significant_1pct: statistic > JB_CRITICAL_1PCT,
    })
}

pub fn describe(values: &[f64]) -> Result<DescriptiveStats> {
    let n = values.len();
    if n < 4 {
        return Err(HurstError::InsufficientData { needed: 4, got: n });
    }
    ensure_finite(values)?;

    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in values {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    if m2 == 0.0 || values.iter().all(|&x| x == values[0]) {
        return Err(HurstError::ZeroVariance(
            "all values are equal".to_string(),
        ));
    }
    let sum_sq = m2;
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    let skewness = m3 / m2.powf(1.5);
    let kurtosis = m4 / (m2 * m2);

    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };

    let jb = jarque_bera(skewness, kurtosis, n)?;
    Ok(DescriptiveStats {
        n,
        min: sorted[0],
        max: sorted[n - 1],
        mean,
        median,
        std_dev: (sum_sq / (nf - 1.0)).sqrt(),
        skewness,
        kurtosis,
        jarque_bera: jb.statistic,
        jb_significant_1pct: jb.significant_1pct,
    })
}
