//! The Y3 canceller with perfect twins: the transmit leakage cancels
//! exactly at every frequency, and the received signal pays one 3 dB split.
//!
//! ```text
//! cargo run --example ideal_null
//! ```

use rfsic::analysis::{band_stats, build_y3, metrics, ScenarioParams};
use rfsic::netcore::{FrequencyGrid, Spacing};
use rfsic::solver::reduce;

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 401, Spacing::Linear)?;
    let circuit = build_y3(&ScenarioParams::ideal(), &grid)?;

    // external ports are Tx, Ant, Rx in that order
    let s = reduce(&circuit)?;
    let worst_leak = s.trace(3, 1).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let rx_gain = s.trace(3, 2)[200];
    println!("max |S(Rx,Tx)| over the band: {worst_leak:e}");
    println!("S(Rx,Ant) at 2 GHz: {:.4} ∠ {:.1}°", rx_gain.norm(), rx_gain.arg().to_degrees());

    let stats = band_stats(&metrics(&circuit)?, 1e9, 3e9)?;
    for (name, st) in &stats.series {
        println!("{name:>22}: {:.2}..{:.2} dB{}", st.min, st.max, if st.min_capped { " (capped)" } else { "" });
    }
    Ok(())
}
