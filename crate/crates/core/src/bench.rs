//! Scaling measurements: run both search algorithms over a family of
//! growing instances and fit the growth exponent.

use crate::datagen::{generate, GenSpec};
use crate::error::Error;
use crate::search::{find_border_points, find_border_points_baseline, Algorithm};

/// One measured run.
#[derive(Debug, Clone)]
pub struct ScalingRecord {
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    pub inversion_calls: u64,
    pub lp_tests: u64,
    pub elapsed_ms: f64,
    pub algorithm: Algorithm,
}

/// Runs the seeded search and the MST baseline on the family described by
/// `base` (its `n` is replaced by each entry of `ns`), one size at a
/// time. Returns two records per size, seeded first.
pub fn run_scaling(base: &GenSpec, ns: &[usize]) -> Result<Vec<ScalingRecord>, Error> {
    let mut records = Vec::with_capacity(ns.len() * 2);
    for &n in ns {
        let mut spec = base.clone();
        spec.n = n;
        let set = generate(&spec)?;
        let seeded = find_border_points(&set, 0)?;
        let baseline = find_border_points_baseline(&set)?;
        for res in [seeded, baseline] {
            records.push(ScalingRecord {
                n,
                dim: set.dim(),
                k: res.k(),
                inversion_calls: res.inversion_calls,
                lp_tests: res.lp_tests,
                elapsed_ms: res.elapsed_ms,
                algorithm: res.algorithm,
            });
        }
    }
    Ok(records)
}

/// Least-squares slope of `log y` against `log x`. `None` when fewer than
/// two distinct positive samples are available.
pub fn log_log_slope(samples: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in &logs {
        cov += (x - mean_x) * (y - mean_y);
        var += (x - mean_x) * (x - mean_x);
    }
    if var == 0.0 {
        return None;
    }
    Some(cov / var)
}

/// Slope of elapsed time against `n` for one algorithm's records.
pub fn elapsed_slope(records: &[ScalingRecord], algorithm: Algorithm) -> Option<f64> {
    let samples: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.algorithm == algorithm)
        .map(|r| (r.n as f64, r.elapsed_ms))
        .collect();
    log_log_slope(&samples)
}
