use num_complex::Complex64;

use crate::components::{
    antenna_terminal, cable, circulator, dummy_antenna, hybrid180, splitter, AntennaModel,
    CableSpec, DummyPerturbation, HybridMode, HybridParams, PerturbationModel, SplitterParams,
};
use crate::error::{Error, Result};
use crate::netcore::{FrequencyGrid, PortRef};
use crate::solver::Circuit;

/// External port names shared by every front-end builder.
pub const TX: &str = "Tx";
pub const ANT: &str = "Ant";
pub const RX: &str = "Rx";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Ideal,
    Cots,
    Custom,
}

/// Knobs of the twin-antenna canceller and the baselines.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    /// Shared by all three splitters.
    pub splitter: SplitterParams,
    pub hybrid: HybridParams,
    pub antenna: AntennaModel,
    pub dummy_pert: DummyPerturbation,
    /// Both segments of the communication-antenna arm.
    pub arm_a: CableSpec,
    /// Both segments of the dummy-antenna arm.
    pub arm_b: CableSpec,
    /// Added to both dummy-arm segments.
    pub dummy_arm_length_offset_m: f64,
    pub preset: Preset,
}

const ARM_LENGTH_M: f64 = 0.3;
const ARM_VF: f64 = 0.66;

impl ScenarioParams {
    /// Lossless splitters without leakage, unit-gain subtractor, identical twins.
    pub fn ideal() -> Self {
        Self {
            splitter: SplitterParams::ideal(),
            hybrid: HybridParams::paper_ideal(),
            antenna: AntennaModel::default_rlc(),
            dummy_pert: DummyPerturbation::none(),
            arm_a: CableSpec::lossless(ARM_LENGTH_M, ARM_VF),
            arm_b: CableSpec::lossless(ARM_LENGTH_M, ARM_VF),
            dummy_arm_length_offset_m: 0.0,
            preset: Preset::Ideal,
        }
    }

    /// Off-the-shelf parts: 4 dB splitters with 20 dB isolation, 5 dB hybrid.
    pub fn cots() -> Self {
        Self {
            splitter: SplitterParams::cots(),
            hybrid: HybridParams::cots(),
            preset: Preset::Cots,
            ..Self::ideal()
        }
    }

    /// The shipped calibration of the COTS build; see
    /// `netlists/y3_cots_calibrated.net` for the recorded values.
    pub fn cots_calibrated() -> Self {
        let netlist = crate::cli::netlist::Netlist::parse(COTS_CALIBRATED_NETLIST, None)
            .expect("bundled calibration parses");
        match netlist.body {
            crate::cli::netlist::NetlistBody::Scenario(s) => s.params,
            _ => unreachable!("bundled calibration is a scenario netlist"),
        }
    }

    pub fn from_preset(preset: Preset) -> Self {
        match preset {
            Preset::Ideal => Self::ideal(),
            Preset::Cots => Self::cots(),
            Preset::Custom => Self {
                preset: Preset::Custom,
                ..Self::ideal()
            },
        }
    }

    /// Dummy-arm cable including skew and tuning offset.
    pub fn dummy_arm(&self) -> CableSpec {
        CableSpec {
            length_m: self.arm_b.length_m + self.dummy_arm_length_offset_m,
            ..self.arm_b
        }
    }

    /// Applies one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<f64> { parse_f64(key, value) };
        match key {
            "excess_db" => self.splitter.excess_loss_db = num()?,
            "iso_db" => self.splitter.isolation_db = num()?,
            "amp_imb_db" => self.splitter.amp_imbalance_db = num()?,
            "phase_imb_deg" => self.splitter.phase_imbalance_deg = num()?,
            "thru_deg" => self.splitter.thru_phase_deg = num()?,
            "hybrid" => {
                self.hybrid.mode = match value {
                    "paper_ideal" => HybridMode::PaperIdeal,
                    "physical" => HybridMode::Physical,
                    _ => return Err(bad(key, value)),
                }
            }
            "hybrid_excess_db" => self.hybrid.excess_loss_db = num()?,
            "ant_r" | "ant_l" | "ant_c" => {
                let v = num()?;
                let (mut r, mut l, mut c) = match self.antenna {
                    AntennaModel::Rlc { r, l, c } => (r, l, c),
                    AntennaModel::File(_) => {
                        return Err(Error::InvalidParameter(format!(
                            "`{key}` conflicts with a file antenna"
                        )))
                    }
                };
                match key {
                    "ant_r" => r = v,
                    "ant_l" => l = v,
                    _ => c = v,
                }
                self.antenna = AntennaModel::Rlc { r, l, c };
            }
            "delta_mag" => self.dummy_pert.delta_mag = num()?,
            "delta_deg" => self.dummy_pert.delta_phase_deg = num()?,
            "delta_model" => {
                self.dummy_pert.model = match value {
                    "constant" => PerturbationModel::Constant,
                    "linear_in_f" => PerturbationModel::LinearInF,
                    _ => return Err(bad(key, value)),
                }
            }
            "arm_length_m" => {
                let skew = self.arm_b.length_m - self.arm_a.length_m;
                self.arm_a.length_m = num()?;
                self.arm_b.length_m = self.arm_a.length_m + skew;
            }
            "arm_vf" => {
                self.arm_a.velocity_factor = num()?;
                self.arm_b.velocity_factor = self.arm_a.velocity_factor;
            }
            "arm_loss_db_per_m" => {
                self.arm_a.loss_db_per_m_at_1ghz = num()?;
                self.arm_b.loss_db_per_m_at_1ghz = self.arm_a.loss_db_per_m_at_1ghz;
            }
            "skew_m" => self.arm_b.length_m = self.arm_a.length_m + num()?,
            "offset_m" => self.dummy_arm_length_offset_m = num()?,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown scenario key `{key}`"
                )))
            }
        }
        Ok(())
    }
}

pub(crate) fn parse_f64(key: &str, value: &str) -> Result<f64> {
    match value {
        "inf" | "+inf" => Ok(f64::INFINITY),
        _ => value.parse::<f64>().map_err(|_| bad(key, value)),
    }
}

fn bad(key: &str, value: &str) -> Error {
    Error::InvalidParameter(format!("invalid value `{value}` for `{key}`"))
}

/// Recorded calibration of the COTS build.
pub const COTS_CALIBRATED_NETLIST: &str = include_str!("../../netlists/y3_cots_calibrated.net");

fn p(b: &str, n: usize) -> PortRef {
    PortRef::new(b, n)
}

/// Twin-antenna canceller.
///
/// Topology (splitter ports: 1 common, 2/3 arms; hybrid: 1 = A, 2 = B, 3 = A − B):
///
/// ```text
/// Tx ─ S1.1   S1.2 ─ C1A ─ S2.2   S2.1 ─ ANT(feed)   ANT(air) ─ Ant
///                                 S2.3 ─ C2A ─ D1.1
///             S1.3 ─ C1B ─ S3.2   S3.1 ─ DUMMY
///                                 S3.3 ─ C2B ─ D1.2  D1.3 ─ Rx
/// ```
///
/// The wiring follows the prose description of the block: S1 feeds both
/// arms, S2 drives the communication antenna, S3 the shielded twin, and the
/// coupled-through ports of S2/S3 meet at the subtractor.
pub fn build_y3(params: &ScenarioParams, grid: &FrequencyGrid) -> Result<Circuit> {
    let split = splitter(&params.splitter, grid)?;
    let arm_b = params.dummy_arm();
    let blocks = vec![
        split.clone().renamed("S1"),
        split.clone().renamed("S2"),
        split.renamed("S3"),
        hybrid180(&params.hybrid, grid)?.renamed("D1"),
        cable(&params.arm_a, grid)?.renamed("C1A"),
        cable(&params.arm_a, grid)?.renamed("C2A"),
        cable(&arm_b, grid)?.renamed("C1B"),
        cable(&arm_b, grid)?.renamed("C2B"),
        antenna_terminal(&params.antenna, grid)?.renamed("ANT"),
        dummy_antenna(&params.antenna, &params.dummy_pert, grid)?.renamed("DUMMY"),
    ];
    let connections = vec![
        (p("S1", 2), p("C1A", 1)),
        (p("C1A", 2), p("S2", 2)),
        (p("S2", 1), p("ANT", 1)),
        (p("S2", 3), p("C2A", 1)),
        (p("C2A", 2), p("D1", 1)),
        (p("S1", 3), p("C1B", 1)),
        (p("C1B", 2), p("S3", 2)),
        (p("S3", 1), p("DUMMY", 1)),
        (p("S3", 3), p("C2B", 1)),
        (p("C2B", 2), p("D1", 2)),
    ];
    let external = vec![
        (TX.to_string(), p("S1", 1)),
        (ANT.to_string(), p("ANT", 2)),
        (RX.to_string(), p("D1", 3)),
    ];
    Circuit::assemble(blocks, connections, external)
}

/// Circulator baseline: port 1 = Tx, 2 = Ant, 3 = Rx. With an antenna the
/// Ant port moves to the antenna's air side.
pub fn build_circulator_frontend(
    gamma: Complex64,
    antenna: Option<&AntennaModel>,
    grid: &FrequencyGrid,
) -> Result<Circuit> {
    let mut blocks = vec![circulator(gamma, grid)?.renamed("CIRC")];
    let mut connections = Vec::new();
    let ant = match antenna {
        Some(model) => {
            blocks.push(antenna_terminal(model, grid)?.renamed("ANT"));
            connections.push((p("CIRC", 2), p("ANT", 1)));
            p("ANT", 2)
        }
        None => p("CIRC", 2),
    };
    Circuit::assemble(
        blocks,
        connections,
        vec![
            (TX.to_string(), p("CIRC", 1)),
            (ANT.to_string(), ant),
            (RX.to_string(), p("CIRC", 3)),
        ],
    )
}

/// Splitter baseline: common = Ant, arm 2 = Tx, arm 3 = Rx.
pub fn build_splitter_frontend(
    params: &SplitterParams,
    antenna: Option<&AntennaModel>,
    grid: &FrequencyGrid,
) -> Result<Circuit> {
    let mut blocks = vec![splitter(params, grid)?.renamed("SPL")];
    let mut connections = Vec::new();
    let ant = match antenna {
        Some(model) => {
            blocks.push(antenna_terminal(model, grid)?.renamed("ANT"));
            connections.push((p("SPL", 1), p("ANT", 1)));
            p("ANT", 2)
        }
        None => p("SPL", 1),
    };
    Circuit::assemble(
        blocks,
        connections,
        vec![
            (TX.to_string(), p("SPL", 2)),
            (ANT.to_string(), ant),
            (RX.to_string(), p("SPL", 3)),
        ],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontendKind {
    Y3,
    Circulator,
    Splitter,
}

impl std::str::FromStr for FrontendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "y3" => Ok(FrontendKind::Y3),
            "circulator" => Ok(FrontendKind::Circulator),
            "splitter" => Ok(FrontendKind::Splitter),
            _ => Err(Error::InvalidParameter(format!(
                "unknown scenario `{s}` (y3, circulator, splitter)"
            ))),
        }
    }
}

/// A front-end of a given kind with all its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: FrontendKind,
    pub params: ScenarioParams,
    /// Circulator mismatch γ.
    pub gamma: Complex64,
    /// Attach the antenna model to the baselines' Ant port. Y3 always has it.
    pub attach_antenna: bool,
}

impl Scenario {
    pub fn new(kind: FrontendKind, params: ScenarioParams) -> Self {
        Self {
            kind,
            params,
            gamma: Complex64::new(0.0, 0.0),
            attach_antenna: false,
        }
    }

    pub fn build(&self, grid: &FrequencyGrid) -> Result<Circuit> {
        let ant = self.attach_antenna.then_some(&self.params.antenna);
        match self.kind {
            FrontendKind::Y3 => build_y3(&self.params, grid),
            FrontendKind::Circulator => build_circulator_frontend(self.gamma, ant, grid),
            FrontendKind::Splitter => build_splitter_frontend(&self.params.splitter, ant, grid),
        }
    }

    /// `key=value` override, including baseline-only keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "gamma_re" => self.gamma.re = parse_f64(key, value)?,
            "gamma_im" => self.gamma.im = parse_f64(key, value)?,
            "antenna" => {
                self.attach_antenna = match value {
                    "attached" => true,
                    "none" => false,
                    _ => return Err(bad(key, value)),
                }
            }
            _ => self.params.set(key, value)?,
        }
        Ok(())
    }
}
