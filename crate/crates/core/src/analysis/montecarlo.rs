//! Seeded tolerance analysis of the twin-antenna canceller.
//!
//! Run `k` draws from its own ChaCha8 stream (`seed`, stream `k`), so results
//! do not depend on how runs are scheduled across workers. Within a run the
//! present distributions are sampled in this fixed order:
//!
//! 1. splitter amplitude imbalance (dB)
//! 2. splitter phase imbalance (deg)
//! 3. splitter isolation (dB)
//! 4. twin mismatch magnitude |δ|
//! 5. twin mismatch phase (deg)
//! 6. dummy-arm length skew (m, added to the dummy arm)

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netcore::{cap_db, FrequencyGrid};

use super::metrics::metrics;
use super::scenario::{build_y3, ScenarioParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dist {
    Uniform { lo: f64, hi: f64 },
    /// Normal truncated to `[lo, hi]` by rejection.
    Normal { mean: f64, sd: f64, lo: f64, hi: f64 },
}

impl Dist {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Dist::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo <= hi,
            Dist::Normal { mean, sd, lo, hi } => {
                mean.is_finite()
                    && sd.is_finite()
                    && sd >= 0.0
                    && lo.is_finite()
                    && hi.is_finite()
                    && lo <= hi
                    && (sd > 0.0 || (lo..=hi).contains(&mean))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDistribution(format!("{self:?}")))
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            Dist::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            Dist::Normal { mean, sd, lo, hi } => {
                if sd == 0.0 {
                    return mean;
                }
                let normal = Normal::new(mean, sd).expect("validated");
                for _ in 0..10_000 {
                    let x = normal.sample(rng);
                    if (lo..=hi).contains(&x) {
                        return x;
                    }
                }
                // truncation window far in the tail
                lo + (hi - lo) * rng.random::<f64>()
            }
        }
    }

    /// Parses `U(lo,hi)` or `N(mean,sd,lo,hi)`.
    pub fn parse(spec: &str) -> Result<Dist> {
        let s = spec.trim();
        let bad = || Error::InvalidDistribution(format!("cannot parse `{spec}`"));
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args = inner
            .split(',')
            .map(|a| a.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let d = match (&s[..open], args.as_slice()) {
            ("U", [lo, hi]) => Dist::Uniform { lo: *lo, hi: *hi },
            ("N", [mean, sd, lo, hi]) => Dist::Normal {
                mean: *mean,
                sd: *sd,
                lo: *lo,
                hi: *hi,
            },
            _ => return Err(bad()),
        };
        d.validate()?;
        Ok(d)
    }
}

/// Optional per-parameter distributions; absent ones keep the base value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct McDistributions {
    pub amp_imbalance_db: Option<Dist>,
    pub phase_imbalance_deg: Option<Dist>,
    pub splitter_isolation_db: Option<Dist>,
    pub twin_mismatch_mag: Option<Dist>,
    pub twin_mismatch_phase_deg: Option<Dist>,
    pub arm_skew_m: Option<Dist>,
}

impl McDistributions {
    fn in_order(&self) -> [Option<Dist>; 6] {
        [
            self.amp_imbalance_db,
            self.phase_imbalance_deg,
            self.splitter_isolation_db,
            self.twin_mismatch_mag,
            self.twin_mismatch_phase_deg,
            self.arm_skew_m,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for d in self.in_order().into_iter().flatten() {
            d.validate()?;
        }
        if let Some(Dist::Uniform { lo, .. } | Dist::Normal { lo, .. }) = self.twin_mismatch_mag {
            if lo < 0.0 {
                return Err(Error::InvalidDistribution(
                    "twin mismatch magnitude must be sampled from [0, ∞)".into(),
                ));
            }
        }
        Ok(())
    }

    /// Parameters for run `k`.
    pub fn draw(&self, base: &ScenarioParams, seed: u64, k: u64) -> ScenarioParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        let mut p = base.clone();
        let [amp, phase, iso, mag, mphase, skew] = self.in_order();
        if let Some(d) = amp {
            p.splitter.amp_imbalance_db = d.sample(&mut rng);
        }
        if let Some(d) = phase {
            p.splitter.phase_imbalance_deg = d.sample(&mut rng);
        }
        if let Some(d) = iso {
            p.splitter.isolation_db = d.sample(&mut rng);
        }
        if let Some(d) = mag {
            p.dummy_pert.delta_mag = d.sample(&mut rng);
        }
        if let Some(d) = mphase {
            p.dummy_pert.delta_phase_deg = d.sample(&mut rng);
        }
        if let Some(d) = skew {
            p.arm_b.length_m = base.arm_b.length_m + d.sample(&mut rng);
        }
        p
    }
}

/// Percentiles of Tx–Rx isolation (capped dB) across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub runs: usize,
    pub seed: u64,
    pub grid: FrequencyGrid,
    pub p5: Vec<f64>,
    pub p50: Vec<f64>,
    pub p95: Vec<f64>,
    /// Worst isolation over the grid for each run, in run order.
    pub band_minima: Vec<f64>,
}

impl McSummary {
    /// (p5, p50, p95) of the per-run band minima.
    pub fn band_minima_percentiles(&self) -> (f64, f64, f64) {
        let mut v = self.band_minima.clone();
        v.sort_by(f64::total_cmp);
        (percentile(&v, 0.05), percentile(&v, 0.50), percentile(&v, 0.95))
    }
}

/// Linear interpolation between order statistics of sorted data.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn monte_carlo(
    base: &ScenarioParams,
    dists: &McDistributions,
    runs: usize,
    seed: u64,
    grid: &FrequencyGrid,
) -> Result<McSummary> {
    if runs == 0 {
        return Err(Error::InvalidParameter("Monte Carlo needs at least one run".into()));
    }
    dists.validate()?;
    let per_run: Vec<Vec<f64>> = (0..runs as u64)
        .into_par_iter()
        .map(|k| {
            let params = dists.draw(base, seed, k);
            let sweep = metrics(&build_y3(&params, grid)?)?;
            Ok(sweep
                .tx_rx_isolation_db
                .into_iter()
                .map(|x| cap_db(x).0)
                .collect())
        })
        .collect::<Vec<Result<Vec<f64>>>>()
        .into_iter()
        .collect::<Result<_>>()?;

    let n = grid.len();
    let (mut p5, mut p50, mut p95) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let mut column = Vec::with_capacity(runs);
    for i in 0..n {
        column.clear();
        column.extend(per_run.iter().map(|r| r[i]));
        column.sort_by(f64::total_cmp);
        p5.push(percentile(&column, 0.05));
        p50.push(percentile(&column, 0.50));
        p95.push(percentile(&column, 0.95));
    }
    let band_minima = per_run
        .iter()
        .map(|r| r.iter().cloned().fold(f64::INFINITY, f64::min))
        .collect();
    Ok(McSummary {
        runs,
        seed,
        grid: grid.clone(),
        p5,
        p50,
        p95,
        band_minima,
    })
}
