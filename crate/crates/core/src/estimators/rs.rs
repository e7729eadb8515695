use super::fit::ols;
use super::{HurstEstimate, Method, ScaleSet};
use crate::error::{ensure_finite, HurstError, Result};

/// Rescaled range of one window.
///
/// The range is taken over the partial sums of mean deviations at
/// `t = 0..=tau`, where the empty prefix contributes 0. The divisor is the
/// population standard deviation (`1/tau`).
pub fn rs_statistic(window: &[f64]) -> Result<f64> {
    let tau = window.len();
    if tau < 2 {
        return Err(HurstError::InsufficientData { needed: 2, got: tau });
    }
    ensure_finite(window)?;
    rescaled_range(window).ok_or_else(|| {
        HurstError::ZeroVariance(format!("constant window of length {tau}"))
    })
}

/// `None` when the block is constant.
fn rescaled_range(block: &[f64]) -> Option<f64> {
    let first = block[0];
    if block.iter().all(|&x| x == first) {
        return None;
    }
    let n = block.len() as f64;
    let mean = block.iter().sum::<f64>() / n;
    let (mut partial, mut hi, mut lo, mut ss) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &x in block {
        let d = x - mean;
        partial += d;
        hi = hi.max(partial);
        lo = lo.min(partial);
        ss += d * d;
    }
    let s = (ss / n).sqrt();
    (s > 0.0).then(|| (hi - lo) / s)
}

/// `h = ln(R/S) / ln(tau / 2)` on the whole window.
pub fn rs_hurst_single(window: &[f64]) -> Result<HurstEstimate> {
    let tau = window.len();
    if tau <= 2 {
        return Err(HurstError::Scale(format!(
            "single-scale R/S needs tau > 2, got {tau}"
        )));
    }
    let rs = rs_statistic(window)?;
    let log_scale = (tau as f64 / 2.0).ln();
    let log_rs = rs.ln();
    Ok(HurstEstimate {
        h: log_rs / log_scale,
        method: Method::RsSingle,
        scales: vec![tau],
        fit_points: vec![(log_scale, log_rs)],
        r_squared: 1.0,
        std_err: None,
        poly_order: None,
        skipped_blocks: 0,
    })
}

/// Slope of `ln mean(R/S)` against `ln n` over non-overlapping blocks of each
/// size `n` in `scales`. Constant blocks are skipped and counted.
pub fn rs_hurst(window: &[f64], scales: &ScaleSet) -> Result<HurstEstimate> {
    scales.check_window(window.len())?;
    ensure_finite(window)?;
    let mut skipped = 0;
    let mut fit_points = Vec::with_capacity(scales.blocks().len());
    for &n in scales.blocks() {
        let (mut sum, mut used) = (0.0, 0usize);
        for block in window.chunks_exact(n) {
            match rescaled_range(block) {
                Some(rs) => {
                    sum += rs;
                    used += 1;
                }
                None => skipped += 1,
            }
        }
        if used == 0 {
            return Err(HurstError::ZeroVariance(format!(
                "every block of size {n} is constant"
            )));
        }
        let mean_rs = sum / used as f64;
        fit_points.push(((n as f64).ln(), mean_rs.ln()));
    }
    let fit = ols(&fit_points)?;
    Ok(HurstEstimate {
        h: fit.slope,
        method: Method::RsMultiscale,
        scales: scales.blocks().to_vec(),
        fit_points,
        r_squared: fit.r_squared,
        std_err: fit.std_err,
        poly_order: None,
        skipped_blocks: skipped,
    })
}
