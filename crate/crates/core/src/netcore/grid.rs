use crate::error::{Error, Result};

/// How the points of a [`FrequencyGrid`] were laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
    /// Points taken verbatim from a data file.
    Arbitrary,
}

/// Ordered, strictly increasing set of positive evaluation frequencies in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    spacing: Spacing,
}

impl FrequencyGrid {
    /// Builds `n` points spanning `[f_start, f_stop]` inclusive.
    ///
    /// Endpoints are stored exactly as given.
    pub fn new(f_start: f64, f_stop: f64, n: usize, spacing: Spacing) -> Result<Self> {
        if !(f_start.is_finite() && f_stop.is_finite()) || f_start <= 0.0 || f_stop <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "frequencies must be positive and finite (got {f_start}, {f_stop})"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidGrid("point count must be at least 1".into()));
        }
        if f_start > f_stop {
            return Err(Error::InvalidGrid(format!(
                "start {f_start} Hz exceeds stop {f_stop} Hz"
            )));
        }
        if n == 1 {
            if f_start != f_stop {
                return Err(Error::InvalidGrid(
                    "a single-point grid needs f_start == f_stop".into(),
                ));
            }
            return Ok(Self {
                points: vec![f_start],
                spacing,
            });
        }
        if f_start == f_stop {
            return Err(Error::InvalidGrid(format!(
                "{n} points cannot span a zero-width range"
            )));
        }
        let last = (n - 1) as f64;
        let mut points: Vec<f64> = match spacing {
            Spacing::Linear => {
                let step = (f_stop - f_start) / last;
                (0..n).map(|k| f_start + step * k as f64).collect()
            }
            Spacing::Log => {
                let ratio = f_stop / f_start;
                (0..n)
                    .map(|k| f_start * ratio.powf(k as f64 / last))
                    .collect()
            }
            Spacing::Arbitrary => {
                return Err(Error::InvalidGrid(
                    "arbitrary spacing requires explicit points".into(),
                ))
            }
        };
        points[0] = f_start;
        points[n - 1] = f_stop;
        Self::from_points_with(points, spacing)
    }

    /// Wraps explicit points (e.g. read from a Touchstone file).
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        Self::from_points_with(points, Spacing::Arbitrary)
    }

    fn from_points_with(points: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        for (i, &f) in points.iter().enumerate() {
            if !f.is_finite() || f <= 0.0 {
                return Err(Error::InvalidGrid(format!(
                    "point {i} ({f}) is not a positive finite frequency"
                )));
            }
            if i > 0 && f <= points[i - 1] {
                return Err(Error::InvalidGrid(format!(
                    "points must be strictly increasing ({} then {f})",
                    points[i - 1]
                )));
            }
        }
        Ok(Self { points, spacing })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Indices of grid points inside the closed band `[f_lo, f_hi]`.
    pub fn indices_in_band(&self, f_lo: f64, f_hi: f64) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, &f)| f >= f_lo && f <= f_hi)
            .map(|(i, _)| i)
            .collect()
    }

    /// True if both grids hold bitwise-identical points.
    pub fn same_points(&self, other: &FrequencyGrid) -> bool {
        self.points.len() == other.points.len()
            && self
                .points
                .iter()
                .zip(&other.points)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}
