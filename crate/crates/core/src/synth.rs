//! Synthetic series with known scaling: exact fractional Gaussian noise via
//! circulant embedding (Davies–Harte), and random-walk OHLC prices.

use chrono::{Days, NaiveDate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{HurstError, Result};
use crate::series::PriceSeries;

/// Relative tolerance below zero accepted for circulant eigenvalues.
const EIGEN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FgnSpec {
    pub n: usize,
    pub h: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl FgnSpec {
    pub fn new(n: usize, h: f64, sigma: f64, seed: u64) -> Self {
        Self { n, h, sigma, seed }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(HurstError::InsufficientData { needed: 2, got: self.n });
        }
        if !(self.h > 0.0 && self.h < 1.0) {
            return Err(HurstError::Domain(format!("Hurst exponent {} not in (0, 1)", self.h)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(HurstError::Domain(format!("sigma {} must be positive", self.sigma)));
        }
        Ok(())
    }
}

/// Autocovariance of unit-variance fGn at lag `k`.
pub fn fgn_autocovariance(h: f64, k: usize) -> f64 {
    let k = k as f64;
    let e = 2.0 * h;
    0.5 * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).abs().powf(e))
}

/// Eigenvalues of the `2n` circulant embedding of the fGn covariance.
fn circulant_eigenvalues(n: usize, h: f64) -> Result<Vec<f64>> {
    let size = 2 * n;
    let mut row: Vec<Complex<f64>> = (0..size)
        .map(|j| {
            let lag = if j <= n { j } else { size - j };
            Complex::new(fgn_autocovariance(h, lag), 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut row);
    let max = row.iter().fold(0.0f64, |a, c| a.max(c.re));
    row.iter()
        .enumerate()
        .map(|(k, c)| {
            if c.re < -EIGEN_TOLERANCE * max {
                Err(HurstError::Numerical(format!(
                    "circulant eigenvalue {k} is negative ({})",
                    c.re
                )))
            } else {
                Ok(c.re.max(0.0))
            }
        })
        .collect()
}

/// Maps `2n` standard normals to `n` unit-variance fGn values.
///
/// Normal layout: `[z_0, z_n, u_1..u_{n-1}, v_1..v_{n-1}]`.
fn fgn_from_normals(eigen: &[f64], normals: &[f64]) -> Vec<f64> {
    let size = eigen.len();
    let n = size / 2;
    debug_assert_eq!(normals.len(), size);
    let m = size as f64;
    let mut w = vec![Complex::new(0.0, 0.0); size];
    w[0] = Complex::new((eigen[0] / m).sqrt() * normals[0], 0.0);
    w[n] = Complex::new((eigen[n] / m).sqrt() * normals[1], 0.0);
    for k in 1..n {
        let scale = (eigen[k] / (2.0 * m)).sqrt();
        let z = Complex::new(normals[1 + k], normals[n + k]) * scale;
        w[k] = z;
        w[size - k] = z.conj();
    }
    FftPlanner::new().plan_fft_forward(size).process(&mut w);
    w.iter().take(n).map(|c| c.re).collect()
}

/// Stationary Gaussian series with the exact fGn autocovariance
/// `gamma(k) = sigma^2 / 2 * (|k+1|^2H - 2|k|^2H + |k-1|^2H)`.
pub fn gen_fgn(spec: &FgnSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let eigen = circulant_eigenvalues(spec.n, spec.h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normals: Vec<f64> = (0..2 * spec.n).map(|_| StandardNormal.sample(&mut rng)).collect();
    Ok(fgn_from_normals(&eigen, &normals)
        .into_iter()
        .map(|x| spec.sigma * x)
        .collect())
}

/// First date of generated price series.
pub fn synthetic_start_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2011, 8, 18).expect("valid date")
}

/// Geometric random walk from 100 with daily `high = close * e^|u|` and
/// `low = close * e^-|v|`, where `u, v ~ N(0, (vol/2)^2)`.
pub fn gen_random_walk_prices(n: usize, drift: f64, vol: f64, seed: u64) -> Result<PriceSeries> {
    if n < 2 {
        return Err(HurstError::InsufficientData { needed: 2, got: n });
    }
    if !(vol > 0.0 && vol.is_finite()) || !drift.is_finite() {
        return Err(HurstError::Domain(format!(
            "need finite drift and positive vol, got drift={drift} vol={vol}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = synthetic_start_date();
    let mut dates = Vec::with_capacity(n);
    let mut close = Vec::with_capacity(n);
    let mut high = Vec::with_capacity(n);
    let mut low = Vec::with_capacity(n);
    let mut log_price = 100f64.ln();
    for i in 0..n {
        if i > 0 {
            let z: f64 = StandardNormal.sample(&mut rng);
            log_price += drift + vol * z;
        }
        let u: f64 = StandardNormal.sample(&mut rng);
        let v: f64 = StandardNormal.sample(&mut rng);
        let c = log_price.exp();
        dates.push(start + Days::new(i as u64));
        close.push(c);
        high.push(c * (0.5 * vol * u).abs().exp());
        low.push(c * (-(0.5 * vol * v).abs()).exp());
    }
    PriceSeries::new(dates, close, high, low)
}
