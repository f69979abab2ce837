//! Frequency grids, scattering matrices, n-port blocks and dB helpers.
//!
//! Phasor convention is `e^{+jωt}`: a delay of `τ` seconds multiplies a wave
//! by `e^{-j2πfτ}`. All blocks share the 50 Ω reference impedance.

mod block;
mod grid;
mod matrix;

pub use block::{NetworkBlock, PortRef};
pub use grid::{FrequencyGrid, Spacing};
pub use matrix::{ScatteringMatrix, Z_REF};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const C0: f64 = 299_792_458.0;

/// Isolation / loss values at or above this are serialized as capped.
pub const DB_CAP: f64 = 200.0;

/// `20·log10(m)`. Zero maps to negative infinity.
pub fn db_from_mag(m: f64) -> Result<f64> {
    if m < 0.0 || m.is_nan() {
        return Err(Error::NegativeMagnitude(m));
    }
    Ok(20.0 * m.log10())
}

pub fn mag_from_db(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// Positive-dB attenuation `-20·log10|s|`; `+inf` for an exact zero.
pub fn loss_db(s: num_complex::Complex64) -> f64 {
    -20.0 * s.norm().log10()
}

/// Applies the serialization cap. Returns the value and whether it was capped.
pub fn cap_db(x: f64) -> (f64, bool) {
    if x >= DB_CAP {
        (DB_CAP, true)
    } else {
        (x, false)
    }
}
