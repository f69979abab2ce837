use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("negative magnitude {0} has no dB value")]
    NegativeMagnitude(f64),

    #[error("cannot extrapolate block `{block}` to {freq_hz} Hz (data covers {min_hz}..{max_hz} Hz)")]
    Extrapolation {
        block: String,
        freq_hz: f64,
        min_hz: f64,
        max_hz: f64,
    },

    #[error("touchstone line {line}: {msg}")]
    Touchstone { line: usize, msg: String },

    #[error("Touchstone v2 unsupported (line {line}); convert the file to version 1")]
    TouchstoneV2 { line: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("component `{block}` is not passive at {freq_hz} Hz (largest singular value {sigma})")]
    NonPassive {
        block: String,
        freq_hz: f64,
        sigma: f64,
    },

    #[error("dangling port {0}: every port must be connected or external")]
    DanglingPort(String),

    #[error("port {0} is used more than once")]
    DuplicatePort(String),

    #[error("unknown block or port: {0}")]
    UnknownPort(String),

    #[error("block `{0}` is not on the circuit frequency grid")]
    GridMismatch(String),

    #[error("block `{block}` uses reference impedance {z_ref} ohm; only 50 ohm is supported")]
    ReferenceImpedance { block: String, z_ref: f64 },

    #[error("circuit assembly: {0}")]
    Assembly(String),

    #[error("ill-posed interconnection at {freq_hz} Hz (condition estimate {cond:.3e})")]
    IllPosed { freq_hz: f64, cond: f64 },

    #[error("singular interconnection system at {freq_hz} Hz")]
    Singular { freq_hz: f64 },

    #[error("circuit has no external port named `{0}`")]
    MissingPort(String),

    #[error("band {f_lo}..{f_hi} Hz contains no grid points")]
    EmptyBand { f_lo: f64, f_hi: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("optimizer failed: {0}")]
    Optimizer(String),

    #[error("netlist line {line}: {msg}")]
    Netlist { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
