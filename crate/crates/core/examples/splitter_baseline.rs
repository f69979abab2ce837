//! A plain power splitter as duplexer: isolation equals the arm isolation,
//! and each direction loses the 3 dB split plus excess loss.
//!
//! ```text
//! cargo run --example splitter_baseline
//! ```

use rfsic::analysis::{build_splitter_frontend, metrics};
use rfsic::components::{AntennaModel, SplitterParams};
use rfsic::netcore::{FrequencyGrid, Spacing};

fn main() -> rfsic::Result<()> {
    let grid = FrequencyGrid::new(1e9, 3e9, 3, Spacing::Linear)?;
    let cots = metrics(&build_splitter_frontend(&SplitterParams::cots(), None, &grid)?)?;
    println!(
        "COTS splitter: isolation {:.2} dB, Ant→Rx loss {:.2} dB",
        cots.tx_rx_isolation_db[0],
        cots.ant_rx_il_db.as_ref().unwrap()[0]
    );

    // an ideal splitter isolates perfectly until the antenna reflects
    let ant = AntennaModel::Rlc { r: 61.1111, l: 0.0, c: 1.0 };
    for antenna in [None, Some(&ant)] {
        let r = metrics(&build_splitter_frontend(&SplitterParams::ideal(), antenna, &grid)?)?;
        println!(
            "ideal splitter, {}: isolation {:.2} dB, Ant→Rx loss {:.2} dB",
            if antenna.is_some() { "Γ ≈ 0.1 antenna" } else { "matched" },
            r.tx_rx_isolation_db[0],
            r.ant_rx_il_db.as_ref().unwrap()[0]
        );
    }
    Ok(())
}
