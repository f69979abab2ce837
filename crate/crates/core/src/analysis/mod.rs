//! Front-end scenarios and the studies run on them.

mod metrics;
mod montecarlo;
mod optimize;
mod scenario;

pub use metrics::{
    band_stats, improvement_over_baseline, metrics, metrics_from_reduced, BandStats, Improvement,
    SeriesStats, SweepResult,
};
pub use montecarlo::{monte_carlo, percentile, Dist, McDistributions, McSummary};
pub use optimize::{arm_objective, optimize_arm_length, ArmOptimization, COARSE_SAMPLES, GOLDEN_TOL_M};
pub use scenario::{
    build_circulator_frontend, build_splitter_frontend, build_y3, FrontendKind, Preset, Scenario,
    ScenarioParams, ANT, COTS_CALIBRATED_NETLIST, RX, TX,
};
pub(crate) use scenario::parse_f64 as scenario_parse_f64;
