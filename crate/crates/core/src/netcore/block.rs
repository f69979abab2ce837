use num_complex::Complex64;

use super::grid::FrequencyGrid;
use super::matrix::ScatteringMatrix;
use crate::error::{Error, Result};

/// An n-port component sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkBlock {
    name: String,
    grid: FrequencyGrid,
    matrices: Vec<ScatteringMatrix>,
    port_labels: Vec<String>,
}

/// Reference to a port of a named block. Ports are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub block: String,
    pub port: usize,
}

impl PortRef {
    pub fn new(block: impl Into<String>, port: usize) -> Self {
        Self {
            block: block.into(),
            port,
        }
    }
}

impl std::fmt::Display for PortRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.block, self.port)
    }
}

impl NetworkBlock {
    pub fn new(
        name: impl Into<String>,
        grid: FrequencyGrid,
        matrices: Vec<ScatteringMatrix>,
        port_labels: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        if matrices.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "block `{name}`: {} matrices for {} frequencies",
                matrices.len(),
                grid.len()
            )));
        }
        let n = matrices[0].n_ports();
        let z = matrices[0].z_ref();
        if matrices.iter().any(|m| m.n_ports() != n || m.z_ref() != z) {
            return Err(Error::InvalidParameter(format!(
                "block `{name}`: matrices disagree on port count or reference impedance"
            )));
        }
        if port_labels.len() != n {
            return Err(Error::InvalidParameter(format!(
                "block `{name}`: {} labels for {n} ports",
                port_labels.len()
            )));
        }
        Ok(Self {
            name,
            grid,
            matrices,
            port_labels,
        })
    }

    /// Block with labels "1".."n".
    pub fn numbered(
        name: impl Into<String>,
        grid: FrequencyGrid,
        matrices: Vec<ScatteringMatrix>,
    ) -> Result<Self> {
        let n = matrices.first().map(|m| m.n_ports()).unwrap_or(0);
        Self::new(name, grid, matrices, (1..=n).map(|p| p.to_string()).collect())
    }

    /// Evaluates `f(freq)` at every grid point.
    pub fn from_fn<F>(name: impl Into<String>, grid: &FrequencyGrid, n_ports: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Vec<Complex64>,
    {
        let matrices = grid
            .points()
            .iter()
            .map(|&freq| ScatteringMatrix::from_rows(n_ports, f(freq)))
            .collect::<Result<Vec<_>>>()?;
        Self::numbered(name, grid.clone(), matrices)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn matrices(&self) -> &[ScatteringMatrix] {
        &self.matrices
    }

    pub fn port_labels(&self) -> &[String] {
        &self.port_labels
    }

    pub fn n_ports(&self) -> usize {
        self.matrices[0].n_ports()
    }

    pub fn z_ref(&self) -> f64 {
        self.matrices[0].z_ref()
    }

    /// `S(row, col)` at every frequency, 1-based ports.
    pub fn trace(&self, row: usize, col: usize) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.get(row - 1, col - 1)).collect()
    }

    /// Resamples onto `grid` by linear interpolation of real and imaginary parts.
    ///
    /// Query points may overshoot the data range by at most 1e-12 relative
    /// (unit conversion noise from files); anything further is an error.
    pub fn interpolate(&self, grid: &FrequencyGrid) -> Result<NetworkBlock> {
        let src = self.grid.points();
        let lo = src[0];
        let hi = src[src.len() - 1];
        let slack = 1e-12 * hi;
        let n = self.n_ports();
        let mut out = Vec::with_capacity(grid.len());
        for &f in grid.points() {
            if f < lo - slack || f > hi + slack {
                return Err(Error::Extrapolation {
                    block: self.name.clone(),
                    freq_hz: f,
                    min_hz: lo,
                    max_hz: hi,
                });
            }
            let f = f.clamp(lo, hi);
            // first index with src[k] >= f
            let k = src.partition_point(|&x| x < f);
            if src[k] == f {
                out.push(self.matrices[k].clone());
                continue;
            }
            let (f0, f1) = (src[k - 1], src[k]);
            let w = (f - f0) / (f1 - f0);
            let (m0, m1) = (&self.matrices[k - 1], &self.matrices[k]);
            let entries = m0
                .entries()
                .iter()
                .zip(m1.entries())
                .map(|(a, b)| {
                    Complex64::new(a.re + w * (b.re - a.re), a.im + w * (b.im - a.im))
                })
                .collect();
            out.push(ScatteringMatrix::with_z_ref(n, entries, m0.z_ref())?);
        }
        NetworkBlock::new(self.name.clone(), grid.clone(), out, self.port_labels.clone())
    }
}
