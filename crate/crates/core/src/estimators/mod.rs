//! Hurst exponent estimators: rescaled range (single-scale and multiscale)
//! and detrended fluctuation analysis, plus the log-log regression they share.

mod dfa;
mod fit;
mod rs;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HurstError, Result};

pub use dfa::{dfa_fluctuation, dfa_hurst, dfa_profile, MAX_POLY_ORDER};
pub use fit::{loglog_fit, LogLogFit};
pub use rs::{rs_hurst, rs_hurst_single, rs_statistic};

/// Smallest admissible block size.
pub const MIN_BLOCK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Direct solve of `R/S = (tau/2)^H` on the whole window.
    RsSingle,
    /// Slope of `ln mean(R/S)` over block sizes.
    #[serde(rename = "rs")]
    RsMultiscale,
    Dfa,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::RsSingle => "rs-single",
            Method::RsMultiscale => "rs",
            Method::Dfa => "dfa",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = HurstError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rs-single" => Ok(Method::RsSingle),
            "rs" => Ok(Method::RsMultiscale),
            "dfa" => Ok(Method::Dfa),
            other => Err(HurstError::Domain(format!("unknown method {other:?}"))),
        }
    }
}

/// One Hurst exponent together with the regression that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurstEstimate {
    pub h: f64,
    pub method: Method,
    /// Block sizes used; for [`Method::RsSingle`] this is the window length.
    pub scales: Vec<usize>,
    /// `(ln scale, ln fluctuation)` pairs, one per scale.
    pub fit_points: Vec<(f64, f64)>,
    pub r_squared: f64,
    pub std_err: Option<f64>,
    /// Detrending order, DFA only.
    pub poly_order: Option<usize>,
    /// Constant blocks left out of the multiscale R/S averages.
    pub skipped_blocks: usize,
}

/// Strictly increasing block sizes, each at least [`MIN_BLOCK`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ScaleSet(Vec<usize>);

impl ScaleSet {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(HurstError::Scale(format!(
                "need at least two block sizes, got {}",
                blocks.len()
            )));
        }
        if let Some(&b) = blocks.iter().find(|&&b| b < MIN_BLOCK) {
            return Err(HurstError::Scale(format!(
                "block size {b} below minimum {MIN_BLOCK}"
            )));
        }
        if blocks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(HurstError::Scale(format!(
                "block sizes must be strictly increasing: {blocks:?}"
            )));
        }
        Ok(Self(blocks))
    }

    /// Powers of two from 4 to 128: six points for 500-observation windows.
    pub fn dyadic() -> Self {
        Self(vec![4, 8, 16, 32, 64, 128])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn max_block(&self) -> usize {
        *self.0.last().expect("validated non-empty")
    }

    /// Shortest window whose half still contains the largest block.
    pub fn min_window(&self) -> usize {
        2 * self.max_block()
    }

    pub fn check_window(&self, window_len: usize) -> Result<()> {
        if window_len < self.min_window() {
            return Err(HurstError::Scale(format!(
                "largest block {} exceeds half the window length {window_len}",
                self.max_block()
            )));
        }
        Ok(())
    }
}

impl Default for ScaleSet {
    fn default() -> Self {
        Self::dyadic()
    }
}

impl TryFrom<Vec<usize>> for ScaleSet {
    type Error = HurstError;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ScaleSet> for Vec<usize> {
    fn from(s: ScaleSet) -> Self {
        s.0
    }
}

impl FromStr for ScaleSet {
    type Err = HurstError;

    /// Parses a comma-separated list such as `4,8,16`.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| HurstError::Scale(format!("bad block size {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }
}

impl fmt::Display for ScaleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Estimator selection used by the rolling engine and the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Estimator {
    Dfa { scales: ScaleSet, poly_order: usize },
    Rs { scales: ScaleSet },
    RsSingle,
}

impl Default for Estimator {
    fn default() -> Self {
        Estimator::Dfa {
            scales: ScaleSet::dyadic(),
            poly_order: 1,
        }
    }
}

impl Estimator {
    pub fn method(&self) -> Method {
        match self {
            Estimator::Dfa { .. } => Method::Dfa,
            Estimator::Rs { .. } => Method::RsMultiscale,
            Estimator::RsSingle => Method::RsSingle,
        }
    }

    pub fn scales(&self) -> Option<&ScaleSet> {
        match self {
            Estimator::Dfa { scales, .. } | Estimator::Rs { scales } => Some(scales),
            Estimator::RsSingle => None,
        }
    }

    /// Minimum window length accepted by [`Estimator::estimate`].
    pub fn min_window(&self) -> usize {
        self.scales().map_or(3, ScaleSet::min_window)
    }

    pub fn estimate(&self, window: &[f64]) -> Result<HurstEstimate> {
        match self {
            Estimator::Dfa { scales, poly_order } => dfa_hurst(window, scales, *poly_order),
            Estimator::Rs { scales } => rs_hurst(window, scales),
            Estimator::RsSingle => rs_hurst_single(window),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_defaults() {
        let s = ScaleSet::default();
        assert_eq!(s.blocks(), &[4, 8, 16, 32, 64, 128]);
        assert_eq!(s.min_window(), 256);
        assert!(s.check_window(500).is_ok());
        assert!(s.check_window(255).is_err());
    }

    #[test]
    fn scale_set_validation() {
        assert!(ScaleSet::new(vec![4]).is_err());
        assert!(ScaleSet::new(vec![3, 8]).is_err());
        assert!(ScaleSet::new(vec![8, 8]).is_err());
        assert!(ScaleSet::new(vec![16, 8]).is_err());
        assert!(ScaleSet::new(vec![4, 5, 9]).is_ok());
    }

    #[test]
    fn scale_set_parse_and_print() {
        let s: ScaleSet = "4, 8,16,32,64,128".parse().unwrap();
        assert_eq!(s, ScaleSet::dyadic());
        assert_eq!(s.to_string(), "4,8,16,32,64,128");
        assert!("4,x".parse::<ScaleSet>().is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Dfa, Method::RsMultiscale, Method::RsSingle] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.as_str()));
        }
        assert!("hurst".parse::<Method>().is_err());
    }

    #[test]
    fn default_estimator_is_linear_dfa() {
        let e = Estimator::default();
        assert_eq!(e.method(), Method::Dfa);
        assert_eq!(e.min_window(), 256);
        assert_eq!(Estimator::RsSingle.min_window(), 3);
    }
}
