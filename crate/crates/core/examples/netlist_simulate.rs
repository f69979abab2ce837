//! Parses a netlist, reduces the circuit and prints the sweep as CSV, the
//! same path the `simulate` command takes.
//!
//! ```text
//! cargo run --example netlist_simulate
//! cargo run --example netlist_simulate -- crates/core/netlists/y3_ideal.net
//! ```

use std::path::Path;

use rfsic::analysis::metrics;
use rfsic::cli::csv::sweep_csv;
use rfsic::cli::netlist::Netlist;

const INLINE: &str = "\
sweep 1e9 3e9 5
comp SPL splitter preset=cots iso_db=25
comp C cable length_m=0.2 vf=0.7 loss_db_per_m=0.5
comp ANT antenna_terminal r=50 l=2.5e-9 c=2.533e-12
conn SPL.1 C.1
conn C.2 ANT.1
port Tx SPL.2
port Ant ANT.2
port Rx SPL.3
";

fn main() -> rfsic::Result<()> {
    let netlist = match std::env::args().nth(1) {
        Some(path) => Netlist::from_file(Path::new(&path))?,
        None => Netlist::parse(INLINE, None)?,
    };
    let circuit = netlist.circuit()?;
    println!(
        "{} blocks, {} external ports",
        circuit.blocks().len(),
        circuit.external_ports().len()
    );
    print!("{}", sweep_csv(&metrics(&circuit)?));
    Ok(())
}
