//! Sliding-window Hurst estimation.
//!
//! Window `i` covers observations `[i * step, i * step + length)` and is dated
//! by its first observation. Windows are evaluated in parallel; results are
//! always returned in window order.

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HurstError, Result};
use crate::estimators::{Estimator, HurstEstimate, Method};
use crate::series::DatedValues;
use crate::stats::{describe, DescriptiveStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub length: usize,
    pub step: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            length: 500,
            step: 1,
        }
    }
}

impl WindowSpec {
    pub fn new(length: usize, step: usize) -> Self {
        Self { length, step }
    }

    /// `floor((n - length) / step) + 1`, or 0 when the series is too short.
    pub fn window_count(&self, n: usize) -> usize {
        if n < self.length || self.step == 0 {
            0
        } else {
            (n - self.length) / self.step + 1
        }
    }

    fn validate(&self, n: usize, estimator: &Estimator) -> Result<()> {
        if self.step == 0 {
            return Err(HurstError::Domain("window step must be at least 1".to_string()));
        }
        let min = estimator.min_window();
        if self.length < min {
            return Err(HurstError::Scale(format!(
                "window length {} below the estimator minimum {min}",
                self.length
            )));
        }
        if n < self.length {
            return Err(HurstError::InsufficientData {
                needed: self.length,
                got: n,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowWarning {
    pub window: usize,
    pub anchor: NaiveDate,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RollingResult {
    pub anchors: Vec<NaiveDate>,
    /// One entry per window; `Err` entries are gap records.
    pub estimates: Vec<Result<HurstEstimate>>,
    pub method: Method,
    pub spec: WindowSpec,
    pub warnings: Vec<WindowWarning>,
}

impl RollingResult {
    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }

    /// Exponents of the successful windows, in order.
    pub fn h_values(&self) -> Vec<f64> {
        self.estimates
            .iter()
            .filter_map(|e| e.as_ref().ok().map(|e| e.h))
            .collect()
    }

    pub fn gap_count(&self) -> usize {
        self.estimates.iter().filter(|e| e.is_err()).count()
    }
}

/// Runs `estimator` over every window of `values`.
pub fn roll_values(
    values: &[f64],
    spec: WindowSpec,
    estimator: &Estimator,
) -> Result<Vec<Result<HurstEstimate>>> {
    spec.validate(values.len(), estimator)?;
    let count = spec.window_count(values.len());
    Ok((0..count)
        .into_par_iter()
        .map(|i| {
            let start = i * spec.step;
            estimator.estimate(&values[start..start + spec.length])
        })
        .collect())
}

pub fn roll<S: DatedValues + ?Sized>(
    series: &S,
    spec: WindowSpec,
    estimator: &Estimator,
) -> Result<RollingResult> {
    let estimates = roll_values(series.values(), spec, estimator)?;
    let anchors: Vec<NaiveDate> = (0..estimates.len())
        .map(|i| series.dates()[i * spec.step])
        .collect();
    let mut warnings = Vec::new();
    for (window, (estimate, &anchor)) in estimates.iter().zip(&anchors).enumerate() {
        let message = match estimate {
            Err(e) => format!("no estimate: {e}"),
            Ok(e) if e.skipped_blocks > 0 => {
                format!("skipped {} constant blocks", e.skipped_blocks)
            }
            Ok(_) => continue,
        };
        warnings.push(WindowWarning {
            window,
            anchor,
            message,
        });
    }
    Ok(RollingResult {
        anchors,
        estimates,
        method: estimator.method(),
        spec,
        warnings,
    })
}

/// Descriptive statistics of the successful window exponents.
pub fn summarize(result: &RollingResult) -> Result<DescriptiveStats> {
    describe(&result.h_values())
}
