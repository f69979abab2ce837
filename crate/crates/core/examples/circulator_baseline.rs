//! Circulator front-end: isolation set by the port mismatch γ, and by the
//! antenna reflection once an antenna hangs on the Ant port.
//!
//! ```text
//! cargo run --example circulator_baseline
//! ```

use num_complex::Complex64;
use rfsic::analysis::{build_circulator_frontend, metrics};
use rfsic::components::AntennaModel;
use rfsic::netcore::{FrequencyGrid, Spacing};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 5, Spacing::Linear)?;
    for gamma in [0.0, 0.03, 0.1, 0.3] {
        let r = metrics(&build_circulator_frontend(Complex64::new(gamma, 0.0), None, &grid)?)?;
        println!("γ = {gamma:<4} → Tx–Rx isolation {:.2} dB", r.tx_rx_isolation_db[0]);
    }

    // a 75 Ω load reflects Γ = 0.2 straight back into the receiver
    let ant = AntennaModel::Rlc { r: 75.0, l: 0.0, c: 1.0 };
    let r = metrics(&build_circulator_frontend(Complex64::new(0.0, 0.0), Some(&ant), &grid)?)?;
    println!("γ = 0 with a Γ = 0.2 antenna → {:.2} dB", r.tx_rx_isolation_db[0]);
    Ok(())
}
