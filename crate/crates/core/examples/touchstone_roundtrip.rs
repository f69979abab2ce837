//! Writes an antenna model as Touchstone in each data format, reads it back,
//! and uses the file data as the antenna of a Y3 build.
//!
//! ```text
//! cargo run --example touchstone_roundtrip
//! ```

use rfsic::analysis::{build_y3, metrics, ScenarioParams};
use rfsic::components::{antenna, AntennaModel};
use rfsic::netcore::{FrequencyGrid, Spacing};
use rfsic::touchstone::{parse_touchstone, write_touchstone, DataFormat};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 101, Spacing::Linear)?;
    let rlc = antenna(&AntennaModel::default_rlc(), &grid)?;

    for fmt in [DataFormat::RI, DataFormat::MA, DataFormat::DB] {
        let text = write_touchstone(&rlc, fmt)?;
        let back = parse_touchstone(&text, 1)?;
        let err = back
            .matrices()
            .iter()
            .zip(rlc.matrices())
            .map(|(a, b)| (a.get(0, 0) - b.get(0, 0)).norm())
            .fold(0.0, f64::max);
        println!("{fmt:?}: {} lines, max round-trip error {err:.1e}", text.lines().count());
        if fmt == DataFormat::MA {
            println!("  {}", text.lines().take(3).collect::<Vec<_>>().join("\n  "));
        }
    }

    // file data on a coarser grid, interpolated onto the sweep
    let coarse = FrequencyGrid::new(0.9e9, 3.1e9, 23, Spacing::Linear)?;
    let measured = parse_touchstone(&write_touchstone(&antenna(&AntennaModel::default_rlc(), &coarse)?, DataFormat::RI)?, 1)?;
    let p = ScenarioParams { antenna: AntennaModel::File(measured), ..ScenarioParams::cots_calibrated() };
    let r = metrics(&build_y3(&p, &grid)?)?;
    println!(
        "COTS Y3 with file antenna at 2 GHz: isolation {:.2} dB, Ant→Rx loss {:.2} dB",
        r.tx_rx_isolation_db[50],
        r.ant_rx_il_db.unwrap()[50]
    );
    Ok(())
}
