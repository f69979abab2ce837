//! How much isolation survives when the shielded twin does not quite match
//! the live antenna, next to the single-bounce estimate (1/√2)³·|δ|.
//!
//! ```text
//! cargo run --example twin_mismatch
//! ```

use rfsic::analysis::{band_stats, build_y3, metrics, ScenarioParams};
use rfsic::components::DummyPerturbation;
use rfsic::netcore::{FrequencyGrid, Spacing};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 201, Spacing::Linear)?;
    println!("{:>8} {:>12} {:>12} {:>14}", "|δ|", "ideal dB", "estimate dB", "COTS min dB");
    for mag in [0.001, 0.003, 0.01, 0.03, 0.1] {
        let pert = DummyPerturbation::constant(mag, 0.0);
        let ideal = ScenarioParams { dummy_pert: pert, ..ScenarioParams::ideal() };
        let cots = ScenarioParams { dummy_pert: pert, ..ScenarioParams::cots() };
        let iso = metrics(&build_y3(&ideal, &grid)?)?.tx_rx_isolation_db[100];
        let estimate = -20.0 * (std::f64::consts::FRAC_1_SQRT_2.powi(3) * mag).log10();
        let cots_min = band_stats(&metrics(&build_y3(&cots, &grid)?)?, 1e9, 3e9)?
            .get("tx_rx_isolation_db")
            .unwrap()
            .min;
        println!("{mag:>8} {iso:>12.3} {estimate:>12.3} {cots_min:>14.2}");
    }
    Ok(())
}
