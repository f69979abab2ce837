//! Seeded tolerance analysis of the COTS canceller: component spreads in,
//! isolation percentiles out. The same seed always gives the same numbers.
//!
//! ```text
//! cargo run --release --example monte_carlo
//! ```

use rfsic::analysis::{monte_carlo, Dist, McDistributions, ScenarioParams};
use rfsic::netcore::{FrequencyGrid, Spacing};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 101, Spacing::Linear)?;
    let dists = McDistributions {
        amp_imbalance_db: Some(Dist::parse("N(0,0.1,-0.3,0.3)")?),
        phase_imbalance_deg: Some(Dist::parse("N(0,1,-3,3)")?),
        splitter_isolation_db: Some(Dist::parse("U(18,24)")?),
        twin_mismatch_mag: Some(Dist::parse("U(0,0.02)")?),
        twin_mismatch_phase_deg: Some(Dist::parse("U(-180,180)")?),
        arm_skew_m: Some(Dist::parse("U(-0.0005,0.0005)")?),
    };
    let mc = monte_carlo(&ScenarioParams::cots(), &dists, 300, 7, &grid)?;
    for i in (0..grid.len()).step_by(25) {
        println!(
            "{:.2} GHz  p5 {:6.2}  p50 {:6.2}  p95 {:6.2} dB",
            grid.points()[i] / 1e9,
            mc.p5[i],
            mc.p50[i],
            mc.p95[i]
        );
    }
    let (lo, mid, hi) = mc.band_minima_percentiles();
    println!("worst-in-band isolation over {} builds: p5 {lo:.2}, p50 {mid:.2}, p95 {hi:.2} dB", mc.runs);
    Ok(())
}
