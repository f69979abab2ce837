use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Reference impedance used throughout the simulator.
pub const Z_REF: f64 = 50.0;

/// Dense complex `n × n` scattering matrix, stored row-major.
///
/// Entry `(i, j)` (0-based) is the outgoing wave at port `i + 1` per unit
/// incident wave at port `j + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    n_ports: usize,
    entries: Vec<Complex64>,
    z_ref: f64,
}

impl ScatteringMatrix {
    pub fn zeros(n_ports: usize) -> Self {
        Self {
            n_ports,
            entries: vec![Complex64::new(0.0, 0.0); n_ports * n_ports],
            z_ref: Z_REF,
        }
    }

    /// Builds from row-major entries. Rejects non-finite values.
    pub fn from_rows(n_ports: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::with_z_ref(n_ports, entries, Z_REF)
    }

    pub fn with_z_ref(n_ports: usize, entries: Vec<Complex64>, z_ref: f64) -> Result<Self> {
        if n_ports == 0 {
            return Err(Error::InvalidParameter("a matrix needs at least one port".into()));
        }
        if entries.len() != n_ports * n_ports {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not form a {n_ports}x{n_ports} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidParameter(format!("non-finite S entry {bad}")));
        }
        if !(z_ref.is_finite() && z_ref > 0.0) {
            return Err(Error::InvalidParameter(format!("reference impedance {z_ref}")));
        }
        Ok(Self {
            n_ports,
            entries,
            z_ref,
        })
    }

    pub fn n_ports(&self) -> usize {
        self.n_ports
    }

    pub fn z_ref(&self) -> f64 {
        self.z_ref
    }

    /// 0-based access.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n_ports + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.entries[row * self.n_ports + col] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n_ports, self.n_ports, &self.entries)
    }

    pub fn max_singular_value(&self) -> f64 {
        self.to_dmatrix()
            .singular_values()
            .iter()
            .cloned()
            .fold(0.0, f64::max)
    }

    /// Largest singular value does not exceed `1 + tol`.
    pub fn is_passive(&self, tol: f64) -> bool {
        self.max_singular_value() <= 1.0 + tol
    }

    /// Largest `|S_ij - S_ji|`.
    pub fn reciprocity_error(&self) -> f64 {
        let n = self.n_ports;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        worst
    }
}
