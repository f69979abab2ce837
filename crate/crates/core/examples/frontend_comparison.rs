//! Calibrated COTS canceller against the 20 dB splitter and a γ = 0.1
//! circulator, as band statistics and per-frequency improvement.
//!
//! ```text
//! cargo run --example frontend_comparison
//! ```

use num_complex::Complex64;
use rfsic::analysis::{
    band_stats, build_circulator_frontend, build_splitter_frontend, build_y3, improvement_over_baseline,
    metrics, ScenarioParams,
};
use rfsic::components::SplitterParams;
use rfsic::netcore::{FrequencyGrid, Spacing};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 401, Spacing::Linear)?;
    let y3 = metrics(&build_y3(&ScenarioParams::cots_calibrated(), &grid)?)?;
    let splitter = metrics(&build_splitter_frontend(&SplitterParams::cots(), None, &grid)?)?;
    let circ = metrics(&build_circulator_frontend(Complex64::new(0.1, 0.0), None, &grid)?)?;

    for (name, r) in [("Y3 (calibrated)", &y3), ("splitter", &splitter), ("circulator", &circ)] {
        for (lo, hi) in [(1.0e9, 3.0e9), (2.4e9, 2.7e9)] {
            let s = band_stats(r, lo, hi)?;
            let iso = s.get("tx_rx_isolation_db").unwrap();
            let il = s.get("ant_rx_il_db").unwrap();
            println!(
                "{name:<16} {:.1}–{:.1} GHz: isolation {:6.2}..{:6.2} dB, Ant→Rx {:5.2}..{:5.2} dB",
                lo / 1e9,
                hi / 1e9,
                iso.min,
                iso.max,
                il.min,
                il.max
            );
        }
    }

    let imp = improvement_over_baseline(&y3, &splitter)?;
    let lo = imp.delta_db.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = imp.delta_db.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!("improvement over the splitter: {lo:.2}..{hi:.2} dB");
    Ok(())
}
