//! Independent reference implementations used to cross-check the library.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn white_noise(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| StandardNormal.sample(&mut r)).collect()
}

pub fn shuffled(values: &[f64], seed: u64) -> Vec<f64> {
    let mut v = values.to_vec();
    v.shuffle(&mut rng(seed));
    v
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// R/S with every partial sum recomputed from scratch.
pub fn naive_rs(window: &[f64]) -> f64 {
    let tau = window.len();
    let mean = window.iter().sum::<f64>() / tau as f64;
    let mut hi = 0.0f64;
    let mut lo = 0.0f64;
    for t in 1..=tau {
        let s: f64 = window[..t].iter().map(|x| x - mean).sum();
        hi = hi.max(s);
        lo = lo.min(s);
    }
    let var = window.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / tau as f64;
    (hi - lo) / var.sqrt()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// DFA fluctuation by an explicit normal-equation polynomial fit per block,
/// with the block index mapped onto [-1, 1].
pub fn naive_dfa_fluctuation(profile: &[f64], m: usize, order: usize) -> f64 {
    let blocks = profile.len() / m;
    let mut total = 0.0;
    for b in 0..blocks {
        let block = &profile[b * m..(b + 1) * m];
        let xs: Vec<f64> = (0..m)
            .map(|i| 2.0 * i as f64 / (m as f64 - 1.0) - 1.0)
            .collect();
        let p = order + 1;
        let mut ata = vec![vec![0.0; p]; p];
        let mut aty = vec![0.0; p];
        for (x, y) in xs.iter().zip(block) {
            for r in 0..p {
                aty[r] += x.powi(r as i32) * y;
                for c in 0..p {
                    ata[r][c] += x.powi((r + c) as i32);
                }
            }
        }
        let coef = solve(ata, aty);
        for (x, y) in xs.iter().zip(block) {
            let fit: f64 = coef.iter().enumerate().map(|(k, c)| c * x.powi(k as i32)).sum();
            total += (y - fit).powi(2);
        }
    }
    (total / (blocks * m) as f64).sqrt()
}

/// Cumulative sum of mean-removed values, by a direct loop.
pub fn naive_profile(series: &[f64]) -> Vec<f64> {
    let m = mean(series);
    let mut acc = 0.0;
    series
        .iter()
        .map(|y| {
            acc += y - m;
            acc
        })
        .collect()
}

/// fGn by Cholesky factorization of the Toeplitz covariance; O(n^3) so only
/// for short series.
pub fn cholesky_fgn(n: usize, h: f64, seed: u64) -> Vec<f64> {
    let gamma = |k: usize| {
        let k = k as f64;
        0.5 * ((k + 1.0).powf(2.0 * h) - 2.0 * k.powf(2.0 * h) + (k - 1.0).abs().powf(2.0 * h))
    };
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][j] = (gamma(0) - s).sqrt();
            } else {
                l[i][j] = (gamma(i - j) - s) / l[j][j];
            }
        }
    }
    let z = white_noise(n, seed);
    (0..n)
        .map(|i| (0..=i).map(|k| l[i][k] * z[k]).sum())
        .collect()
}
