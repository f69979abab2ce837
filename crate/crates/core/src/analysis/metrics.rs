use crate::error::{Error, Result};
use crate::netcore::{cap_db, loss_db, FrequencyGrid, NetworkBlock};
use crate::solver::{reduce, Circuit};

use super::scenario::{ANT, RX, TX};

/// Per-frequency figures of merit, all in positive dB. Exact zeros show up
/// as `+inf` here and are capped only when serialized.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub grid: FrequencyGrid,
    pub tx_rx_isolation_db: Vec<f64>,
    pub ant_rx_il_db: Option<Vec<f64>>,
    pub tx_ant_il_db: Option<Vec<f64>>,
    pub ant_return_loss_db: Option<Vec<f64>>,
}

impl SweepResult {
    /// Present series in declaration order.
    pub fn series(&self) -> Vec<(&'static str, &[f64])> {
        let mut out: Vec<(&'static str, &[f64])> =
            vec![("tx_rx_isolation_db", &self.tx_rx_isolation_db)];
        for (name, s) in [
            ("ant_rx_il_db", &self.ant_rx_il_db),
            ("tx_ant_il_db", &self.tx_ant_il_db),
            ("ant_return_loss_db", &self.ant_return_loss_db),
        ] {
            if let Some(v) = s {
                out.push((name, v.as_slice()));
            }
        }
        out
    }
}

/// Reduces `c` and derives the sweep metrics from its Tx / Ant / Rx ports.
pub fn metrics(c: &Circuit) -> Result<SweepResult> {
    let reduced = reduce(c)?;
    metrics_from_reduced(&reduced)
}

/// Metrics from an already reduced block whose port labels name Tx / Ant / Rx.
pub fn metrics_from_reduced(b: &NetworkBlock) -> Result<SweepResult> {
    let find = |name: &str| b.port_labels().iter().position(|l| l == name).map(|i| i + 1);
    let tx = find(TX).ok_or_else(|| Error::MissingPort(TX.into()))?;
    let rx = find(RX).ok_or_else(|| Error::MissingPort(RX.into()))?;
    let series = |row: usize, col: usize| -> Vec<f64> {
        b.trace(row, col).into_iter().map(loss_db).collect()
    };
    let ant = find(ANT);
    Ok(SweepResult {
        grid: b.grid().clone(),
        tx_rx_isolation_db: series(rx, tx),
        ant_rx_il_db: ant.map(|a| series(rx, a)),
        tx_ant_il_db: ant.map(|a| series(a, tx)),
        ant_return_loss_db: ant.map(|a| series(a, a)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub min_capped: bool,
    pub max_capped: bool,
}

/// Capped min / max / mean of each present series over a closed band.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStats {
    pub f_lo: f64,
    pub f_hi: f64,
    pub points: usize,
    pub series: Vec<(&'static str, SeriesStats)>,
}

impl BandStats {
    pub fn get(&self, name: &str) -> Option<&SeriesStats> {
        self.series.iter().find(|(n, _)| *n == name).map(|(_, s)| s)
    }
}

pub fn band_stats(r: &SweepResult, f_lo: f64, f_hi: f64) -> Result<BandStats> {
    let idx = r.grid.indices_in_band(f_lo, f_hi);
    if idx.is_empty() {
        return Err(Error::EmptyBand { f_lo, f_hi });
    }
    let series = r
        .series()
        .into_iter()
        .map(|(name, v)| (name, stats(idx.iter().map(|&i| v[i]))))
        .collect();
    Ok(BandStats {
        f_lo,
        f_hi,
        points: idx.len(),
        series,
    })
}

fn stats(values: impl Iterator<Item = f64>) -> SeriesStats {
    let mut s = SeriesStats {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        mean: 0.0,
        min_capped: false,
        max_capped: false,
    };
    let mut n = 0usize;
    for raw in values {
        let (v, capped) = cap_db(raw);
        if v < s.min {
            s.min = v;
            s.min_capped = capped;
        }
        if v > s.max {
            s.max = v;
            s.max_capped = capped;
        }
        s.mean += v;
        n += 1;
    }
    s.mean /= n as f64;
    s
}

/// Per-frequency isolation gained over a baseline, from capped values.
#[derive(Debug, Clone, PartialEq)]
pub struct Improvement {
    pub grid: FrequencyGrid,
    pub delta_db: Vec<f64>,
    /// Either side was at the cap, so the delta is a lower or upper bound.
    pub capped: Vec<bool>,
}

pub fn improvement_over_baseline(y3: &SweepResult, base: &SweepResult) -> Result<Improvement> {
    if !y3.grid.same_points(&base.grid) {
        return Err(Error::GridMismatch("baseline sweep".into()));
    }
    let (delta_db, capped) = y3
        .tx_rx_isolation_db
        .iter()
        .zip(&base.tx_rx_isolation_db)
        .map(|(&a, &b)| {
            let (a, ca) = cap_db(a);
            let (b, cb) = cap_db(b);
            (a - b, ca || cb)
        })
        .unzip();
    Ok(Improvement {
        grid: y3.grid.clone(),
        delta_db,
        capped,
    })
}
