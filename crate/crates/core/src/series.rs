//! Dated price data and the two derived daily series the estimators consume.
//!
//! Returns are `100 * (ln close[t] - ln close[t-1])`; volatility is the
//! high/low log range `100 * (ln high[t] - ln low[t])`, aligned to the return
//! dates by dropping the first observation. Days whose high is below their
//! low are kept and flagged.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, HurstError, Result};

/// Dated OHLC observations (open is not used).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    dates: Vec<NaiveDate>,
    close: Vec<f64>,
    high: Vec<f64>,
    low: Vec<f64>,
    anomalies: Vec<usize>,
}

/// Row counts and date coverage of a loaded price series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataQuality {
    pub rows: usize,
    /// Rows with `high < low`.
    pub anomalies: usize,
    pub first_date: Option<NaiveDate>,
    pub last_date: Option<NaiveDate>,
}

impl PriceSeries {
    /// Validates and builds a price series.
    ///
    /// Rejects mismatched lengths, non-increasing dates, and non-finite or
    /// non-positive prices. Rows with `high < low` are accepted and recorded
    /// in [`PriceSeries::anomalies`].
    pub fn new(
        dates: Vec<NaiveDate>,
        close: Vec<f64>,
        high: Vec<f64>,
        low: Vec<f64>,
    ) -> Result<Self> {
        let n = dates.len();
        if close.len() != n || high.len() != n || low.len() != n {
            return Err(HurstError::LengthMismatch(format!(
                "dates={n}, close={}, high={}, low={}",
                close.len(),
                high.len(),
                low.len()
            )));
        }
        for pair in dates.windows(2) {
            if pair[1] <= pair[0] {
                return Err(HurstError::Ordering {
                    previous: pair[0],
                    current: pair[1],
                });
            }
        }
        for (field, column) in [("close", &close), ("high", &high), ("low", &low)] {
            for (i, &value) in column.iter().enumerate() {
                if !value.is_finite() || value <= 0.0 {
                    return Err(HurstError::NonPositivePrice {
                        field,
                        date: dates[i],
                        value,
                    });
                }
            }
        }
        let anomalies = (0..n).filter(|&i| high[i] < low[i]).collect();
        Ok(Self {
            dates,
            close,
            high,
            low,
            anomalies,
        })
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn close(&self) -> &[f64] {
        &self.close
    }

    pub fn high(&self) -> &[f64] {
        &self.high
    }

    pub fn low(&self) -> &[f64] {
        &self.low
    }

    /// Row indices where `high < low`.
    pub fn anomalies(&self) -> &[usize] {
        &self.anomalies
    }

    pub fn quality(&self) -> DataQuality {
        DataQuality {
            rows: self.len(),
            anomalies: self.anomalies.len(),
            first_date: self.dates.first().copied(),
            last_date: self.dates.last().copied(),
        }
    }
}

/// Shared read access for the derived daily series.
pub trait DatedValues {
    fn dates(&self) -> &[NaiveDate];
    fn values(&self) -> &[f64];

    fn len(&self) -> usize {
        self.values().len()
    }

    fn is_empty(&self) -> bool {
        self.values().is_empty()
    }
}

/// Daily log returns scaled by 100.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnSeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

/// Daily high/low log range scaled by 100, aligned with [`ReturnSeries`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolatilitySeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
    anomalies: Vec<usize>,
}

impl VolatilitySeries {
    /// Indices (into this series) of values computed from `high < low` rows.
    /// These values are negative.
    pub fn anomalies(&self) -> &[usize] {
        &self.anomalies
    }
}

impl DatedValues for ReturnSeries {
    fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }
    fn values(&self) -> &[f64] {
        &self.values
    }
}

impl DatedValues for VolatilitySeries {
    fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }
    fn values(&self) -> &[f64] {
        &self.values
    }
}

fn require_two(prices: &PriceSeries) -> Result<()> {
    if prices.len() < 2 {
        return Err(HurstError::EmptyInput(format!(
            "need at least 2 price observations, got {}",
            prices.len()
        )));
    }
    Ok(())
}

/// `values[i] = 100 * (ln close[i+1] - ln close[i])`, dated by observation `i+1`.
pub fn log_returns(prices: &PriceSeries) -> Result<ReturnSeries> {
    require_two(prices)?;
    let values: Vec<f64> = prices
        .close
        .windows(2)
        .map(|w| 100.0 * (w[1].ln() - w[0].ln()))
        .collect();
    ensure_finite(&values)?;
    Ok(ReturnSeries {
        dates: prices.dates[1..].to_vec(),
        values,
    })
}

/// `values[i] = 100 * (ln high[i+1] - ln low[i+1])`; the first day is dropped
/// so the result shares dates with [`log_returns`].
pub fn hl_volatility(prices: &PriceSeries) -> Result<VolatilitySeries> {
    require_two(prices)?;
    let values: Vec<f64> = (1..prices.len())
        .map(|i| 100.0 * (prices.high[i].ln() - prices.low[i].ln()))
        .collect();
    ensure_finite(&values)?;
    let anomalies = prices
        .anomalies
        .iter()
        .filter(|&&i| i >= 1)
        .map(|&i| i - 1)
        .collect();
    Ok(VolatilitySeries {
        dates: prices.dates[1..].to_vec(),
        values,
        anomalies,
    })
}

/// A contiguous view into a dated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<'a> {
    pub start_index: usize,
    /// Date of the window's first observation; rolling estimates are anchored here.
    pub anchor: NaiveDate,
    pub dates: &'a [NaiveDate],
    pub values: &'a [f64],
}

pub fn slice_window<S: DatedValues + ?Sized>(
    series: &S,
    start_index: usize,
    length: usize,
) -> Result<Window<'_>> {
    let len = series.len();
    let end = start_index.checked_add(length);
    match end {
        Some(end) if length >= 1 && end <= len => Ok(Window {
            start_index,
            anchor: series.dates()[start_index],
            dates: &series.dates()[start_index..end],
            values: &series.values()[start_index..end],
        }),
        _ => Err(HurstError::Bounds {
            start: start_index,
            length,
            len,
        }),
    }
}
