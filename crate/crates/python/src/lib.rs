use chrono::NaiveDate;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use hurstlens::estimators::{self, Estimator, HurstEstimate, Method, ScaleSet};
use hurstlens::io::{self as hio, CsvSchema, IoError};
use hurstlens::series::{self, DatedValues};
use hurstlens::stats::{self, DescriptiveStats};
use hurstlens::{rolling, synth, HurstError};

fn value_err(e: HurstError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn io_err(e: IoError) -> PyErr {
    match e {
        IoError::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn scale_set(scales: Option<Vec<usize>>) -> PyResult<ScaleSet> {
    scales.map_or(Ok(ScaleSet::dyadic()), |s| ScaleSet::new(s).map_err(value_err))
}

fn parse_date(s: &str) -> PyResult<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .map_err(|e| PyValueError::new_err(format!("bad date {s:?}: {e}")))
}

/// One Hurst exponent with its fit diagnostics.
#[pyclass(name = "HurstEstimate", frozen, module = "pyhurst")]
struct PyHurstEstimate {
    inner: HurstEstimate,
}

#[pymethods]
impl PyHurstEstimate {
    #[getter]
    fn h(&self) -> f64 {
        self.inner.h
    }
    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method.as_str()
    }
    #[getter]
    fn scales(&self) -> Vec<usize> {
        self.inner.scales.clone()
    }
    #[getter]
    fn fit_points(&self) -> Vec<(f64, f64)> {
        self.inner.fit_points.clone()
    }
    #[getter]
    fn r_squared(&self) -> f64 {
        self.inner.r_squared
    }
    #[getter]
    fn std_err(&self) -> Option<f64> {
        self.inner.std_err
    }
    #[getter]
    fn poly_order(&self) -> Option<usize> {
        self.inner.poly_order
    }
    #[getter]
    fn skipped_blocks(&self) -> usize {
        self.inner.skipped_blocks
    }

    fn __repr__(&self) -> String {
        format!(
            "HurstEstimate(h={:.6}, method='{}', r_squared={:.6})",
            self.inner.h, self.inner.method, self.inner.r_squared
        )
    }
}

impl From<HurstEstimate> for PyHurstEstimate {
    fn from(inner: HurstEstimate) -> Self {
        Self { inner }
    }
}

#[pyclass(name = "DescriptiveStats", frozen, get_all, module = "pyhurst")]
struct PyDescriptiveStats {
    n: usize,
    min: f64,
    max: f64,
    mean: f64,
    median: f64,
    std_dev: f64,
    skewness: f64,
    kurtosis: f64,
    jarque_bera: f64,
    jb_significant_1pct: bool,
}

#[pymethods]
impl PyDescriptiveStats {
    fn __repr__(&self) -> String {
        format!(
            "DescriptiveStats(n={}, mean={:.6}, std_dev={:.6}, skewness={:.4}, kurtosis={:.4}, jarque_bera={:.4})",
            self.n, self.mean, self.std_dev, self.skewness, self.kurtosis, self.jarque_bera
        )
    }
}

impl From<DescriptiveStats> for PyDescriptiveStats {
    fn from(s: DescriptiveStats) -> Self {
        Self {
            n: s.n,
            min: s.min,
            max: s.max,
            mean: s.mean,
            median: s.median,
            std_dev: s.std_dev,
            skewness: s.skewness,
            kurtosis: s.kurtosis,
            jarque_bera: s.jarque_bera,
            jb_significant_1pct: s.jb_significant_1pct,
        }
    }
}

/// Dated close/high/low prices. Dates are ISO-8601 strings.
#[pyclass(name = "PriceSeries", frozen, module = "pyhurst")]
struct PyPriceSeries {
    inner: series::PriceSeries,
}

#[pymethods]
impl PyPriceSeries {
    #[new]
    fn new(dates: Vec<String>, close: Vec<f64>, high: Vec<f64>, low: Vec<f64>) -> PyResult<Self> {
        let dates = dates.iter().map(|d| parse_date(d)).collect::<PyResult<Vec<_>>>()?;
        series::PriceSeries::new(dates, close, high, low)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn dates(&self) -> Vec<String> {
        self.inner.dates().iter().map(|d| d.to_string()).collect()
    }
    #[getter]
    fn close(&self) -> Vec<f64> {
        self.inner.close().to_vec()
    }
    #[getter]
    fn high(&self) -> Vec<f64> {
        self.inner.high().to_vec()
    }
    #[getter]
    fn low(&self) -> Vec<f64> {
        self.inner.low().to_vec()
    }
    /// Row indices where high < low.
    #[getter]
    fn anomalies(&self) -> Vec<usize> {
        self.inner.anomalies().to_vec()
    }

    /// (dates, values) of the daily log returns scaled by 100.
    fn log_returns(&self) -> PyResult<(Vec<String>, Vec<f64>)> {
        let r = series::log_returns(&self.inner).map_err(value_err)?;
        Ok((r.dates().iter().map(|d| d.to_string()).collect(), r.values().to_vec()))
    }

    /// (dates, values) of the daily high/low log range scaled by 100.
    fn hl_volatility(&self) -> PyResult<(Vec<String>, Vec<f64>)> {
        let v = series::hl_volatility(&self.inner).map_err(value_err)?;
        Ok((v.dates().iter().map(|d| d.to_string()).collect(), v.values().to_vec()))
    }

    fn to_csv(&self) -> String {
        hio::emit_prices(&self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (path, date_col="date", close_col="close", high_col="high", low_col="low", delimiter=','))]
#[allow(clippy::too_many_arguments)]
fn load_csv(
    path: &str,
    date_col: &str,
    close_col: &str,
    high_col: &str,
    low_col: &str,
    delimiter: char,
) -> PyResult<PyPriceSeries> {
    let schema = CsvSchema {
        date_column: date_col.to_string(),
        close_column: close_col.to_string(),
        high_column: high_col.to_string(),
        low_column: low_col.to_string(),
        delimiter,
    };
    hio::load_csv(path, &schema)
        .map(|inner| PyPriceSeries { inner })
        .map_err(io_err)
}

#[pyfunction]
fn describe(values: Vec<f64>) -> PyResult<PyDescriptiveStats> {
    stats::describe(&values).map(Into::into).map_err(value_err)
}

/// Returns (statistic, significant at 1%).
#[pyfunction]
fn jarque_bera(skewness: f64, kurtosis: f64, n: usize) -> PyResult<(f64, bool)> {
    let jb = stats::jarque_bera(skewness, kurtosis, n).map_err(value_err)?;
    Ok((jb.statistic, jb.significant_1pct))
}

#[pyfunction]
fn rs_statistic(window: Vec<f64>) -> PyResult<f64> {
    estimators::rs_statistic(&window).map_err(value_err)
}

#[pyfunction]
fn rs_hurst_single(window: Vec<f64>) -> PyResult<PyHurstEstimate> {
    estimators::rs_hurst_single(&window).map(Into::into).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (window, scales=None))]
fn rs_hurst(window: Vec<f64>, scales: Option<Vec<usize>>) -> PyResult<PyHurstEstimate> {
    estimators::rs_hurst(&window, &scale_set(scales)?)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
fn dfa_profile(series: Vec<f64>) -> PyResult<Vec<f64>> {
    estimators::dfa_profile(&series).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (profile, m, poly_order=1))]
fn dfa_fluctuation(profile: Vec<f64>, m: usize, poly_order: usize) -> PyResult<f64> {
    estimators::dfa_fluctuation(&profile, m, poly_order).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (window, scales=None, poly_order=1))]
fn dfa_hurst(window: Vec<f64>, scales: Option<Vec<usize>>, poly_order: usize) -> PyResult<PyHurstEstimate> {
    estimators::dfa_hurst(&window, &scale_set(scales)?, poly_order)
        .map(Into::into)
        .map_err(value_err)
}

/// Returns (slope, intercept, r_squared, std_err) of the fit of ln y on ln x.
#[pyfunction]
fn loglog_fit(points: Vec<(f64, f64)>) -> PyResult<(f64, f64, f64, Option<f64>)> {
    let f = estimators::loglog_fit(&points).map_err(value_err)?;
    Ok((f.slope, f.intercept, f.r_squared, f.std_err))
}

/// Sliding-window estimates; failed windows are returned as None.
#[pyfunction]
#[pyo3(signature = (values, window=500, step=1, method="dfa", scales=None, poly_order=1))]
fn roll(
    py: Python<'_>,
    values: Vec<f64>,
    window: usize,
    step: usize,
    method: &str,
    scales: Option<Vec<usize>>,
    poly_order: usize,
) -> PyResult<Vec<Option<PyHurstEstimate>>> {
    let scales = scale_set(scales)?;
    let estimator = match method.parse::<Method>().map_err(value_err)? {
        Method::Dfa => Estimator::Dfa { scales, poly_order },
        Method::RsMultiscale => Estimator::Rs { scales },
        Method::RsSingle => Estimator::RsSingle,
    };
    let spec = rolling::WindowSpec::new(window, step);
    let results = py
        .detach(|| rolling::roll_values(&values, spec, &estimator))
        .map_err(value_err)?;
    Ok(results.into_iter().map(|r| r.ok().map(Into::into)).collect())
}

#[pyfunction]
#[pyo3(signature = (n, h, sigma=1.0, seed=0))]
fn gen_fgn(n: usize, h: f64, sigma: f64, seed: u64) -> PyResult<Vec<f64>> {
    synth::gen_fgn(&synth::FgnSpec::new(n, h, sigma, seed)).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, drift=0.0, vol=0.03, seed=0))]
fn gen_random_walk_prices(n: usize, drift: f64, vol: f64, seed: u64) -> PyResult<PyPriceSeries> {
    synth::gen_random_walk_prices(n, drift, vol, seed)
        .map(|inner| PyPriceSeries { inner })
        .map_err(value_err)
}

#[pymodule]
fn pyhurst(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHurstEstimate>()?;
    m.add_class::<PyDescriptiveStats>()?;
    m.add_class::<PyPriceSeries>()?;
    m.add_function(wrap_pyfunction!(load_csv, m)?)?;
    m.add_function(wrap_pyfunction!(describe, m)?)?;
    m.add_function(wrap_pyfunction!(jarque_bera, m)?)?;
    m.add_function(wrap_pyfunction!(rs_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(rs_hurst_single, m)?)?;
    m.add_function(wrap_pyfunction!(rs_hurst, m)?)?;
    m.add_function(wrap_pyfunction!(dfa_profile, m)?)?;
    m.add_function(wrap_pyfunction!(dfa_fluctuation, m)?)?;
    m.add_function(wrap_pyfunction!(dfa_hurst, m)?)?;
    m.add_function(wrap_pyfunction!(loglog_fit, m)?)?;
    m.add_function(wrap_pyfunction!(roll, m)?)?;
    m.add_function(wrap_pyfunction!(gen_fgn, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_walk_prices, m)?)?;
    m.add("DEFAULT_SCALES", ScaleSet::dyadic().blocks().to_vec())?;
    Ok(())
}
