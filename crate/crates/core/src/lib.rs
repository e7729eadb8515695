//! Long-range dependence analysis of daily price series.
//!
//! Prices are turned into log returns or high/low volatility
//! ([`series`]), summarized ([`stats`]), and scanned with R/S or DFA Hurst
//! estimators ([`estimators`]) over sliding windows ([`rolling`]).
//! [`synth`] generates fractional Gaussian noise with a known exponent for
//! calibration; [`io`] and [`pipeline`] back the `hurstlens` command line tool.

pub mod error;
pub mod estimators;
pub mod io;
pub mod pipeline;
pub mod rolling;
pub mod series;
pub mod stats;
pub mod synth;

pub use error::{HurstError, Result};
pub use estimators::{Estimator, HurstEstimate, Method, ScaleSet};
pub use rolling::{roll, roll_values, summarize, RollingResult, WindowSpec};
pub use series::{hl_volatility, log_returns, slice_window, PriceSeries, ReturnSeries, VolatilitySeries};
pub use stats::{describe, jarque_bera, DescriptiveStats};
