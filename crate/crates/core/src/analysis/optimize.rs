//! Dummy-arm electrical-length tuning.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netcore::{cap_db, FrequencyGrid};

use super::metrics::metrics;
use super::scenario::{build_y3, ScenarioParams};

/// Coarse samples across the bounds before refinement.
pub const COARSE_SAMPLES: usize = 65;
/// Bracket width at which golden-section refinement stops, in metres.
pub const GOLDEN_TOL_M: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmOptimization {
    pub best_offset_m: f64,
    /// Worst capped isolation over the objective band at the best offset.
    pub min_isolation_db: f64,
    pub capped: bool,
    /// Objective at offset 0, for comparison.
    pub baseline_db: f64,
    pub evaluations: usize,
}

/// Worst Tx–Rx isolation (capped dB) over `band_grid` with the given
/// dummy-arm offset. NaN if the scenario cannot be solved.
pub fn arm_objective(p: &ScenarioParams, band_grid: &FrequencyGrid, offset_m: f64) -> f64 {
    let mut q = p.clone();
    q.dummy_arm_length_offset_m = offset_m;
    match build_y3(&q, band_grid).and_then(|c| metrics(&c)) {
        Ok(r) => r
            .tx_rx_isolation_db
            .iter()
            .map(|&x| cap_db(x).0)
            .fold(f64::INFINITY, f64::min),
        Err(_) => f64::NAN,
    }
}

/// Maximizes the band-minimum isolation over `dummy_arm_length_offset_m`.
///
/// A coarse scan of [`COARSE_SAMPLES`] points brackets the best sample, then
/// golden-section search refines inside the neighbouring interval. Offset 0
/// is always a candidate, and wins ties.
pub fn optimize_arm_length(
    p: &ScenarioParams,
    bounds_m: (f64, f64),
    band: (f64, f64),
    grid: &FrequencyGrid,
) -> Result<ArmOptimization> {
    let (lo, hi) = bounds_m;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!("invalid bounds [{lo}, {hi}]")));
    }
    let idx = grid.indices_in_band(band.0, band.1);
    if idx.is_empty() {
        return Err(Error::Optimizer(format!(
            "objective band [{}, {}] Hz holds no grid points",
            band.0, band.1
        )));
    }
    let band_grid = FrequencyGrid::from_points(idx.iter().map(|&i| grid.points()[i]).collect())?;
    let f = |x: f64| arm_objective(p, &band_grid, x);

    let step = (hi - lo) / (COARSE_SAMPLES - 1) as f64;
    let xs: Vec<f64> = (0..COARSE_SAMPLES).map(|i| lo + step * i as f64).collect();
    let ys: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();
    let mut evaluations = xs.len();

    let best_i = ys
        .iter()
        .enumerate()
        .filter(|(_, y)| !y.is_nan())
        .fold(None, |acc: Option<usize>, (i, &y)| match acc {
            Some(j) if ys[j] >= y => Some(j),
            _ => Some(i),
        })
        .ok_or_else(|| Error::Optimizer("objective is not finite anywhere in bounds".into()))?;

    let a = xs[best_i.saturating_sub(1)];
    let b = xs[(best_i + 1).min(xs.len() - 1)];
    let (x_gold, y_gold, n_gold) = golden_max(&f, a, b, GOLDEN_TOL_M);
    evaluations += n_gold;

    let y0 = f(0.0);
    evaluations += 1;
    let mut best = (0.0, y0);
    for cand in [(xs[best_i], ys[best_i]), (x_gold, y_gold)] {
        if cand.1 > best.1 || best.1.is_nan() {
            best = cand;
        }
    }
    let (min_isolation_db, capped) = cap_db(best.1);
    Ok(ArmOptimization {
        best_offset_m: best.0,
        min_isolation_db,
        capped,
        baseline_db: y0,
        evaluations,
    })
}

/// Golden-section maximization on `[a, b]`; returns (x, f(x), evaluations).
fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut n = 2;
    // NaN compares false, so a failed point is treated as worse
    while (b - a).abs() > tol {
        if fc >= fd || fd.is_nan() {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        n += 1;
        if n > 400 {
            break;
        }
    }
    if fc >= fd || fd.is_nan() {
        (c, fc, n)
    } else {
        (d, fd, n)
    }
}
