//! End-to-end run: load prices, derive the chosen series, describe it, roll
//! the estimator over it, and describe the resulting exponents.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::HurstError;
use crate::estimators::{Estimator, Method, ScaleSet};
use crate::io::{emit_records_csv, load_csv, records_from, CsvSchema, HurstRecord, IoError};
use crate::rolling::{roll, summarize, WindowSpec};
use crate::series::{hl_volatility, log_returns, DataQuality, DatedValues, PriceSeries};
use crate::stats::{describe, DescriptiveStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    #[default]
    Returns,
    Volatility,
}

impl FromStr for SeriesKind {
    type Err = HurstError;
    fn from_str(s: &str) -> Result<Self, HurstError> {
        match s {
            "returns" => Ok(SeriesKind::Returns),
            "volatility" => Ok(SeriesKind::Volatility),
            other => Err(HurstError::Domain(format!("unknown series {other:?}"))),
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Returns => "returns",
            SeriesKind::Volatility => "volatility",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub schema: CsvSchema,
    pub series: SeriesKind,
    pub method: Method,
    pub window: usize,
    pub step: usize,
    pub scales: ScaleSet,
    pub poly_order: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: PathBuf::new(),
            schema: CsvSchema::default(),
            series: SeriesKind::Returns,
            method: Method::Dfa,
            window: 500,
            step: 1,
            scales: ScaleSet::dyadic(),
            poly_order: 1,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn estimator(&self) -> Estimator {
        match self.method {
            Method::Dfa => Estimator::Dfa {
                scales: self.scales.clone(),
                poly_order: self.poly_order,
            },
            Method::RsMultiscale => Estimator::Rs {
                scales: self.scales.clone(),
            },
            Method::RsSingle => Estimator::RsSingle,
        }
    }

    pub fn window_spec(&self) -> WindowSpec {
        WindowSpec::new(self.window, self.step)
    }
}

/// The values and dates of the series selected by `kind`.
pub fn derive_series(prices: &PriceSeries, kind: SeriesKind) -> Result<Box<dyn DatedValues>, HurstError> {
    Ok(match kind {
        SeriesKind::Returns => Box::new(log_returns(prices)?),
        SeriesKind::Volatility => Box::new(hl_volatility(prices)?),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub config: RunConfig,
    pub data_quality: DataQuality,
    pub windows: usize,
    pub gaps: usize,
    /// Why `hurst_stats` is absent, when it is.
    pub hurst_stats_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: ReportMeta,
    pub series_stats: DescriptiveStats,
    pub hurst_stats: Option<DescriptiveStats>,
    pub records: Vec<HurstRecord>,
}

impl Report {
    pub fn to_json(&self) -> Result<String, IoError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Records as CSV, or the whole report as JSON.
    pub fn render(&self, format: OutputFormat) -> Result<String, IoError> {
        match format {
            OutputFormat::Csv => Ok(emit_records_csv(&self.records)),
            OutputFormat::Json => self.to_json(),
        }
    }
}

pub fn run_prices(prices: &PriceSeries, config: &RunConfig) -> Result<Report, IoError> {
    let series = derive_series(prices, config.series)?;
    let series_stats = describe(series.values())?;
    let rolled = roll(series.as_ref(), config.window_spec(), &config.estimator())?;
    let (hurst_stats, hurst_stats_error) = match summarize(&rolled) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Report {
        meta: ReportMeta {
            config: config.clone(),
            data_quality: prices.quality(),
            windows: rolled.len(),
            gaps: rolled.gap_count(),
            hurst_stats_error,
        },
        series_stats,
        hurst_stats,
        records: records_from(&rolled),
    })
}

pub fn run_pipeline(config: &RunConfig) -> Result<Report, IoError> {
    if !(1..=crate::estimators::MAX_POLY_ORDER).contains(&config.poly_order) {
        return Err(IoError::Config(format!(
            "poly order {} outside 1..={}",
            config.poly_order,
            crate::estimators::MAX_POLY_ORDER
        )));
    }
    let prices = load_csv(&config.input, &config.schema)?;
    run_prices(&prices, config)
}

/// Plain-text rendering of descriptive statistics.
pub fn stats_table(title: &str, stats: &DescriptiveStats) -> String {
    let rows = [
        ("Observations", stats.n as f64),
        ("Min", stats.min),
        ("Max", stats.max),
        ("Mean", stats.mean),
        ("Median", stats.median),
        ("Std Deviation", stats.std_dev),
        ("Skewness", stats.skewness),
        ("Kurtosis", stats.kurtosis),
        ("Jarque Bera", stats.jarque_bera),
    ];
    let mut out = format!("{title}\n");
    for (name, value) in rows {
        let mark = if name == "Jarque Bera" && stats.jb_significant_1pct { "*" } else { "" };
        if name == "Observations" {
            out.push_str(&format!("  {name:<14}{:>14}\n", stats.n));
        } else {
            out.push_str(&format!("  {name:<14}{value:>14.4}{mark}\n"));
        }
    }
    out
}
