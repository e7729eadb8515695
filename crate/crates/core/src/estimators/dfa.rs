use super::fit::ols;
use super::{HurstEstimate, Method, ScaleSet};
use crate::error::{ensure_finite, HurstError, Result};

/// Highest supported detrending polynomial degree.
pub const MAX_POLY_ORDER: usize = 3;

/// Fluctuations at or below this fraction of the profile's magnitude are
/// treated as zero.
const ZERO_FLUCTUATION_REL: f64 = 1e-12;

/// Cumulative sum of mean-subtracted values.
pub fn dfa_profile(series: &[f64]) -> Result<Vec<f64>> {
    if series.is_empty() {
        return Err(HurstError::EmptyInput("DFA profile of empty series".to_string()));
    }
    ensure_finite(series)?;
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    Ok(series
        .iter()
        .scan(0.0, |acc, &y| {
            *acc += y - mean;
            Some(*acc)
        })
        .collect())
}

/// Orthonormal polynomial basis of degree `0..=order` over `m` equally spaced
/// points, stored row-major (`order + 1` rows of length `m`).
fn block_basis(m: usize, order: usize) -> Option<Vec<f64>> {
    let centre = (m as f64 - 1.0) / 2.0;
    let half = centre.max(1.0);
    let t: Vec<f64> = (0..m).map(|i| (i as f64 - centre) / half).collect();
    let mut basis: Vec<f64> = Vec::with_capacity((order + 1) * m);
    for degree in 0..=order {
        let mut v: Vec<f64> = t.iter().map(|&x| x.powi(degree as i32)).collect();
        let raw_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in basis.chunks_exact(m) {
                let dot: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(x, qi)| *x -= dot * qi);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 1e-10 * raw_norm) {
            return None;
        }
        basis.extend(v.iter().map(|x| x / norm));
    }
    Some(basis)
}

/// Sum of squared residuals of `block` after removing its projection onto `basis`.
fn residual_ss(block: &[f64], basis: &[f64], scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    scratch.extend_from_slice(block);
    for q in basis.chunks_exact(block.len()) {
        let dot: f64 = q.iter().zip(scratch.iter()).map(|(a, b)| a * b).sum();
        scratch.iter_mut().zip(q).for_each(|(x, qi)| *x -= dot * qi);
    }
    scratch.iter().map(|r| r * r).sum()
}

/// RMS residual of the profile after least-squares polynomial detrending in
/// non-overlapping blocks of size `m`.
///
/// Blocks start at the first observation; a trailing remainder shorter than
/// `m` is discarded and the mean is taken over the covered points only.
pub fn dfa_fluctuation(profile: &[f64], m: usize, poly_order: usize) -> Result<f64> {
    if !(1..=MAX_POLY_ORDER).contains(&poly_order) {
        return Err(HurstError::Domain(format!(
            "polynomial order {poly_order} outside 1..={MAX_POLY_ORDER}"
        )));
    }
    if m < poly_order + 2 {
        return Err(HurstError::Scale(format!(
            "block size {m} too small for order-{poly_order} detrending"
        )));
    }
    if m > profile.len() {
        return Err(HurstError::Scale(format!(
            "block size {m} exceeds profile length {}",
            profile.len()
        )));
    }
    ensure_finite(profile)?;
    let basis = block_basis(m, poly_order).ok_or(HurstError::SingularFit { block: 0, scale: m })?;
    let mut scratch = Vec::with_capacity(m);
    let mut total = 0.0;
    let mut covered = 0usize;
    for block in profile.chunks_exact(m) {
        total += residual_ss(block, &basis, &mut scratch);
        covered += m;
    }
    Ok((total / covered as f64).sqrt())
}

/// Slope of `ln F(m)` on `ln m` over `scales`.
pub fn dfa_hurst(window: &[f64], scales: &ScaleSet, poly_order: usize) -> Result<HurstEstimate> {
    scales.check_window(window.len())?;
    if window.iter().all(|&x| x == window[0]) {
        return Err(HurstError::ZeroVariance(format!(
            "constant window of length {}",
            window.len()
        )));
    }
    let profile = dfa_profile(window)?;
    let magnitude = profile.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut fit_points = Vec::with_capacity(scales.blocks().len());
    for &m in scales.blocks() {
        let f = dfa_fluctuation(&profile, m, poly_order)?;
        if f <= ZERO_FLUCTUATION_REL * magnitude {
            return Err(HurstError::DegenerateFluctuation { scale: m });
        }
        fit_points.push(((m as f64).ln(), f.ln()));
    }
    let fit = ols(&fit_points)?;
    Ok(HurstEstimate {
        h: fit.slope,
        method: Method::Dfa,
        scales: scales.blocks().to_vec(),
        fit_points,
        r_squared: fit.r_squared,
        std_err: fit.std_err,
        poly_order: Some(poly_order),
        skipped_blocks: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn profile_examples() {
        assert_eq!(dfa_profile(&[1.0, 1.0, 1.0]).unwrap(), vec![0.0, 0.0, 0.0]);
        assert_eq!(dfa_profile(&[1.0, 2.0, 3.0]).unwrap(), vec![-1.0, -1.0, 0.0]);
        assert!(matches!(dfa_profile(&[]), Err(HurstError::EmptyInput(_))));
    }

    #[test]
    fn three_point_linear_detrend() {
        // best line through (1,-1), (2,-1), (3,0) leaves residuals 1/6, -1/3, 1/6
        let f = dfa_fluctuation(&[-1.0, -1.0, 0.0], 3, 1).unwrap();
        assert_abs_diff_eq!(f, (1.0f64 / 18.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(f, 0.2357, epsilon = 1e-4);
    }

    #[test]
    fn basis_is_orthonormal() {
        for m in [4, 5, 16, 128] {
            for order in 1..=MAX_POLY_ORDER {
                if m < order + 2 {
                    continue;
                }
                let b = block_basis(m, order).unwrap();
                let rows: Vec<&[f64]> = b.chunks_exact(m).collect();
                for i in 0..rows.len() {
                    for j in 0..rows.len() {
                        let dot: f64 = rows[i].iter().zip(rows[j]).map(|(a, b)| a * b).sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert_abs_diff_eq!(dot, want, epsilon = 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn tail_is_discarded() {
        // a linear profile with a wild tail: the tail falls outside the only block
        let mut p: Vec<f64> = (0..8).map(|i| 2.0 * i as f64 - 3.0).collect();
        p.extend([100.0, -50.0, 7.0]);
        let f = dfa_fluctuation(&p, 8, 1).unwrap();
        assert!(f < 1e-13, "{f}");
    }

    #[test]
    fn argument_checks() {
        let p = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0];
        assert!(matches!(dfa_fluctuation(&p, 2, 1), Err(HurstError::Scale(_))));
        assert!(matches!(dfa_fluctuation(&p, 7, 1), Err(HurstError::Scale(_))));
        assert!(matches!(dfa_fluctuation(&p, 4, 0), Err(HurstError::Domain(_))));
        assert!(matches!(dfa_fluctuation(&p, 5, 4), Err(HurstError::Domain(_))));
        assert!(matches!(dfa_fluctuation(&p, 4, 3), Err(HurstError::Scale(_))));
    }

    #[test]
    fn linear_series_is_degenerate() {
        // a linear series has a quadratic profile; cubic detrending removes it exactly
        let w: Vec<f64> = (0..256).map(|i| 0.25 * i as f64).collect();
        let scales = ScaleSet::new(vec![8, 16, 32]).unwrap();
        assert!(matches!(
            dfa_hurst(&w, &scales, 3),
            Err(HurstError::DegenerateFluctuation { scale: 8 })
        ));
        assert!(dfa_hurst(&w, &scales, 1).is_ok());
    }

    #[test]
    fn constant_window_rejected() {
        assert!(matches!(
            dfa_hurst(&[2.0; 300], &ScaleSet::dyadic(), 1),
            Err(HurstError::ZeroVariance(_))
        ));
    }

    #[test]
    fn estimate_metadata() {
        let w: Vec<f64> = (0..512).map(|i| ((i * 7919) % 101) as f64 - 50.0).collect();
        let e = dfa_hurst(&w, &ScaleSet::dyadic(), 2).unwrap();
        assert_eq!(e.method, Method::Dfa);
        assert_eq!(e.poly_order, Some(2));
        assert_eq!(e.scales, vec![4, 8, 16, 32, 64, 128]);
        assert_eq!(e.fit_points.len(), 6);
        assert!((0.0..=1.0).contains(&e.r_squared));
        assert!(e.std_err.unwrap() >= 0.0);
    }
}
