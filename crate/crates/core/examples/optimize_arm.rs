//! Trims the dummy-arm cable to undo a length skew, then tries the same on
//! a frequency-flat phase error that no delay can fully remove.
//!
//! ```text
//! cargo run --release --example optimize_arm
//! ```

use rfsic::analysis::{optimize_arm_length, ScenarioParams};
use rfsic::netcore::{FrequencyGrid, Spacing};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 201, Spacing::Linear)?;

    let mut skewed = ScenarioParams::ideal();
    skewed.arm_b.length_m += 3e-3;
    let r = optimize_arm_length(&skewed, (-0.01, 0.01), (1e9, 3e9), &grid)?;
    println!(
        "3 mm skew: offset {:+.6} m, worst isolation {:.1} → {:.1} dB{}",
        r.best_offset_m,
        r.baseline_db,
        r.min_isolation_db,
        if r.capped { " (capped)" } else { "" }
    );

    let mut phased = ScenarioParams::cots();
    phased.splitter.phase_imbalance_deg = 10.0;
    for band in [(1e9, 3e9), (2.4e9, 2.7e9)] {
        let r = optimize_arm_length(&phased, (-0.01, 0.01), band, &grid)?;
        println!(
            "10° phase error, {:.1}–{:.1} GHz: offset {:+.6} m, worst isolation {:.2} → {:.2} dB ({} evaluations)",
            band.0 / 1e9,
            band.1 / 1e9,
            r.best_offset_m,
            r.baseline_db,
            r.min_isolation_db,
            r.evaluations
        );
    }
    Ok(())
}
