//! Frequency-domain S-parameter simulation of twin-antenna self-interference
//! cancellation front-ends and their circulator / splitter baselines.
//!
//! The crate is organised bottom-up:
//!
//! * [`netcore`]: frequency grids, scattering matrices, n-port blocks, dB helpers
//! * [`touchstone`]: Touchstone v1 reader / writer
//! * [`components`]: circulator, splitter, 180° hybrid, cable, antennas, load
//! * [`solver`]: interconnection reduction plus a brute-force oracle
//! * [`analysis`]: scenario builders, sweep metrics, Monte Carlo, arm tuning
//! * [`cli`]: netlist format, CSV output and the command implementations
//!   behind the `rfsic` binary

pub mod analysis;
pub mod cli;
pub mod components;
mod error;
pub mod netcore;
pub mod solver;
pub mod touchstone;

pub use error::{Error, Result};
