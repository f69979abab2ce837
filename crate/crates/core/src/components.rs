//! Parametric generators for the front-end building blocks.
//!
//! Port conventions:
//! * circulator: 1 → 2 → 3 → 1 routing
//! * splitter: 1 = common (sum), 2 and 3 = arms
//! * 180° hybrid: 1 = input A, 2 = input B, 3 = difference output (A − B)
//! * cable: 1 ↔ 2
//! * antenna terminal: 1 = feed, 2 = air side

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netcore::{FrequencyGrid, NetworkBlock, C0, Z_REF};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Loss of an ideal equal power split, `10·log10(2)` dB.
pub const SPLIT_DB: f64 = 3.010_299_956_639_812;

/// Tolerance on the largest singular value when checking passivity.
pub const PASSIVITY_TOL: f64 = 1e-9;

fn deg(x: f64) -> f64 {
    x * PI / 180.0
}

fn check_passive(block: &NetworkBlock) -> Result<()> {
    let mut checked: Option<&crate::netcore::ScatteringMatrix> = None;
    for (&f, m) in block.grid().points().iter().zip(block.matrices()) {
        // frequency-flat blocks repeat one matrix
        if checked == Some(m) {
            continue;
        }
        checked = Some(m);
        let sigma = m.max_singular_value();
        if sigma > 1.0 + PASSIVITY_TOL {
            return Err(Error::NonPassive {
                block: block.name().to_string(),
                freq_hz: f,
                sigma,
            });
        }
    }
    Ok(())
}

/// Mismatched circulator, used verbatim:
///
/// ```text
/// [ γ      γ      1-γ² ]
/// [ 1-γ²   γ      γ    ]
/// [ γ      1-γ²   γ    ]
/// ```
///
/// The rows are not unitary for γ ≠ 0, so no passivity check is applied.
pub fn circulator(gamma: Complex64, grid: &FrequencyGrid) -> Result<NetworkBlock> {
    if gamma.norm().is_nan() || gamma.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "circulator mismatch |γ| = {} must be below 1",
            gamma.norm()
        )));
    }
    let t = ONE - gamma * gamma;
    let g = gamma;
    NetworkBlock::from_fn("circulator", grid, 3, |_| vec![g, g, t, t, g, g, g, t, g])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitterParams {
    /// Loss beyond the ideal 3.01 dB split.
    pub excess_loss_db: f64,
    /// Arm-to-arm isolation; `f64::INFINITY` means no leakage.
    pub isolation_db: f64,
    /// Arm 2 minus arm 3, split half on each arm.
    pub amp_imbalance_db: f64,
    pub phase_imbalance_deg: f64,
    pub thru_phase_deg: f64,
}

impl Default for SplitterParams {
    fn default() -> Self {
        Self::ideal()
    }
}

impl SplitterParams {
    pub fn ideal() -> Self {
        Self {
            excess_loss_db: 0.0,
            isolation_db: f64::INFINITY,
            amp_imbalance_db: 0.0,
            phase_imbalance_deg: 0.0,
            thru_phase_deg: -90.0,
        }
    }

    /// Low-cost part: about 4 dB through loss and 20 dB arm isolation.
    pub fn cots() -> Self {
        Self {
            excess_loss_db: 4.0 - SPLIT_DB,
            isolation_db: 20.0,
            ..Self::ideal()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.excess_loss_db.is_finite() && self.excess_loss_db >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "splitter excess loss {} dB must be finite and >= 0",
                self.excess_loss_db
            )));
        }
        if self.isolation_db.is_nan() || self.isolation_db <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "splitter isolation {} dB must be > 0",
                self.isolation_db
            )));
        }
        for (name, v) in [
            ("amplitude imbalance", self.amp_imbalance_db),
            ("phase imbalance", self.phase_imbalance_deg),
            ("thru phase", self.thru_phase_deg),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("splitter {name} is {v}")));
            }
        }
        Ok(())
    }

    /// Arm-to-arm leakage magnitude.
    pub fn leakage(&self) -> f64 {
        10f64.powf(-self.isolation_db / 20.0)
    }

    /// Nominal transmission common → arm before imbalance.
    pub fn thru(&self) -> Complex64 {
        Complex64::from_polar(
            10f64.powf(-(SPLIT_DB + self.excess_loss_db) / 20.0),
            deg(self.thru_phase_deg),
        )
    }

    /// Transmissions common → arm 2 and common → arm 3.
    pub fn arm_gains(&self) -> (Complex64, Complex64) {
        let t = self.thru();
        let a = 10f64.powf(self.amp_imbalance_db / 40.0);
        let p = deg(self.phase_imbalance_deg) / 2.0;
        (
            t * Complex64::from_polar(a, p),
            t * Complex64::from_polar(1.0 / a, -p),
        )
    }
}

/// Matched three-port power divider with frequency-flat arm leakage.
pub fn splitter(p: &SplitterParams, grid: &FrequencyGrid) -> Result<NetworkBlock> {
    p.validate()?;
    let (s21, s31) = p.arm_gains();
    let l = Complex64::new(p.leakage(), 0.0);
    let b = NetworkBlock::from_fn("splitter", grid, 3, |_| {
        vec![ZERO, s21, s31, s21, ZERO, l, s31, l, ZERO]
    })?;
    check_passive(&b)?;
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HybridMode {
    /// Unit forward transfer from each input, as in the textbook derivation.
    /// Not passive.
    PaperIdeal,
    /// Physical 3-dB coupler: `1/√2` forward transfer less excess loss.
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridParams {
    pub mode: HybridMode,
    pub excess_loss_db: f64,
}

impl HybridParams {
    pub fn paper_ideal() -> Self {
        Self {
            mode: HybridMode::PaperIdeal,
            excess_loss_db: 0.0,
        }
    }

    /// About 5 dB insertion loss from either input.
    pub fn cots() -> Self {
        Self {
            mode: HybridMode::Physical,
            excess_loss_db: 5.0 - SPLIT_DB,
        }
    }

    pub fn forward(&self) -> f64 {
        match self.mode {
            HybridMode::PaperIdeal => 1.0,
            HybridMode::Physical => FRAC_1_SQRT_2 * 10f64.powf(-self.excess_loss_db / 20.0),
        }
    }
}

/// 180° hybrid used as a subtractor: output = h·(A − B).
pub fn hybrid180(p: &HybridParams, grid: &FrequencyGrid) -> Result<NetworkBlock> {
    if !(p.excess_loss_db.is_finite() && p.excess_loss_db >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hybrid excess loss {} dB must be finite and >= 0",
            p.excess_loss_db
        )));
    }
    let h = Complex64::new(p.forward(), 0.0);
    NetworkBlock::from_fn("hybrid180", grid, 3, |_| {
        vec![ZERO, ZERO, h, ZERO, ZERO, -h, h, -h, ZERO]
    })
}

/// Matched transmission line segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CableSpec {
    pub length_m: f64,
    pub velocity_factor: f64,
    /// Attenuation at 1 GHz; scales with `sqrt(f)`.
    pub loss_db_per_m_at_1ghz: f64,
}

impl CableSpec {
    pub fn lossless(length_m: f64, velocity_factor: f64) -> Self {
        Self {
            length_m,
            velocity_factor,
            loss_db_per_m_at_1ghz: 0.0,
        }
    }

    pub fn delay_s(&self) -> f64 {
        self.length_m / (self.velocity_factor * C0)
    }

    pub fn transmission(&self, f: f64) -> Complex64 {
        let a = 10f64.powf(-self.loss_db_per_m_at_1ghz * self.length_m * (f / 1e9).sqrt() / 20.0);
        Complex64::from_polar(a, -2.0 * PI * f * self.delay_s())
    }
}

pub fn cable(spec: &CableSpec, grid: &FrequencyGrid) -> Result<NetworkBlock> {
    if !(spec.velocity_factor > 0.0 && spec.velocity_factor <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "velocity factor {} must lie in (0, 1]",
            spec.velocity_factor
        )));
    }
    if !(spec.length_m.is_finite() && spec.length_m >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cable length {} m must be >= 0",
            spec.length_m
        )));
    }
    if !(spec.loss_db_per_m_at_1ghz.is_finite() && spec.loss_db_per_m_at_1ghz >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cable loss {} dB/m must be >= 0",
            spec.loss_db_per_m_at_1ghz
        )));
    }
    let spec = *spec;
    NetworkBlock::from_fn("cable", grid, 2, |f| {
        let t = spec.transmission(f);
        vec![ZERO, t, t, ZERO]
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum AntennaModel {
    /// Series RLC driving-point impedance.
    Rlc { r: f64, l: f64, c: f64 },
    /// Measured one-port data, interpolated onto the sweep grid.
    File(NetworkBlock),
}

impl AntennaModel {
    /// Series RLC resonant at 2 GHz and matched there.
    pub fn default_rlc() -> Self {
        AntennaModel::Rlc {
            r: 50.0,
            l: 2.5e-9,
            c: 2.533e-12,
        }
    }

    /// Reflection coefficient against 50 Ω at each grid point.
    pub fn gamma(&self, grid: &FrequencyGrid) -> Result<Vec<Complex64>> {
        match self {
            AntennaModel::Rlc { r, l, c } => {
                if !(r.is_finite() && *r >= 0.0 && l.is_finite() && *l >= 0.0 && c.is_finite() && *c > 0.0)
                {
                    return Err(Error::InvalidParameter(format!(
                        "antenna RLC needs r >= 0, l >= 0, c > 0 (got r={r}, l={l}, c={c})"
                    )));
                }
                Ok(grid
                    .points()
                    .iter()
                    .map(|&f| {
                        let w = 2.0 * PI * f;
                        let z = Complex64::new(*r, w * l - 1.0 / (w * c));
                        (z - Z_REF) / (z + Z_REF)
                    })
                    .collect())
            }
            AntennaModel::File(block) => {
                if block.n_ports() != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "antenna data `{}` has {} ports, expected 1",
                        block.name(),
                        block.n_ports()
                    )));
                }
                Ok(block.interpolate(grid)?.trace(1, 1))
            }
        }
    }
}

/// One-port reflection model of an antenna.
pub fn antenna(model: &AntennaModel, grid: &FrequencyGrid) -> Result<NetworkBlock> {
    one_port("antenna", grid, model.gamma(grid)?)
}

/// The communication antenna seen from both sides.
///
/// Port 1 is the feed, port 2 the air-side reference plane:
///
/// ```text
/// [ Γ  1 ]
/// [ 1  0 ]
/// ```
///
/// Waves leaving the front-end toward the antenna reflect with Γ and are
/// reported at port 2; a wave incident at port 2 is the received signal,
/// injected at the feed. This reference-plane device is not passive.
pub fn antenna_terminal(model: &AntennaModel, grid: &FrequencyGrid) -> Result<NetworkBlock> {
    let gamma = model.gamma(grid)?;
    let mats = gamma
        .into_iter()
        .map(|g| crate::netcore::ScatteringMatrix::from_rows(2, vec![g, ONE, ONE, ZERO]))
        .collect::<Result<Vec<_>>>()?;
    NetworkBlock::new("antenna_terminal", grid.clone(), mats, vec!["feed".into(), "air".into()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationModel {
    Constant,
    /// Scales with `f / 1 GHz`.
    LinearInF,
}

/// Residual reflection change caused by the shielded enclosure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DummyPerturbation {
    pub delta_mag: f64,
    pub delta_phase_deg: f64,
    pub model: PerturbationModel,
}

impl Default for DummyPerturbation {
    fn default() -> Self {
        Self::none()
    }
}

impl DummyPerturbation {
    pub fn none() -> Self {
        Self {
            delta_mag: 0.0,
            delta_phase_deg: 0.0,
            model: PerturbationModel::Constant,
        }
    }

    pub fn constant(delta_mag: f64, delta_phase_deg: f64) -> Self {
        Self {
            delta_mag,
            delta_phase_deg,
            model: PerturbationModel::Constant,
        }
    }

    pub fn delta(&self, f: f64) -> Complex64 {
        let d = Complex64::from_polar(self.delta_mag, deg(self.delta_phase_deg));
        match self.model {
            PerturbationModel::Constant => d,
            PerturbationModel::LinearInF => d * (f / 1e9),
        }
    }
}

/// Twin antenna inside the shielded box: base reflection plus `δ(f)`.
///
/// A one-port by construction, so nothing is received from the air.
/// Reflections pushed beyond unit magnitude are clamped to 1 with a warning.
pub fn dummy_antenna(
    base: &AntennaModel,
    pert: &DummyPerturbation,
    grid: &FrequencyGrid,
) -> Result<NetworkBlock> {
    if !(pert.delta_mag.is_finite() && pert.delta_mag >= 0.0 && pert.delta_phase_deg.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dummy perturbation needs a finite |δ| >= 0 and phase (got {}, {})",
            pert.delta_mag, pert.delta_phase_deg
        )));
    }
    let gamma = base.gamma(grid)?;
    let mut clamped = 0usize;
    let values = gamma
        .iter()
        .zip(grid.points())
        .map(|(&g, &f)| {
            if pert.delta_mag == 0.0 {
                return g;
            }
            let v = g + pert.delta(f);
            if v.norm() > 1.0 {
                clamped += 1;
                v / v.norm()
            } else {
                v
            }
        })
        .collect();
    if clamped > 0 {
        log::warn!("dummy antenna: |Γ| > 1 at {clamped} frequencies, clamped to 1");
    }
    one_port("dummy_antenna", grid, values)
}

pub fn match_load(grid: &FrequencyGrid) -> Result<NetworkBlock> {
    one_port("load", grid, vec![ZERO; grid.len()])
}

fn one_port(name: &str, grid: &FrequencyGrid, values: Vec<Complex64>) -> Result<NetworkBlock> {
    let mats = values
        .into_iter()
        .map(|g| crate::netcore::ScatteringMatrix::from_rows(1, vec![g]))
        .collect::<Result<Vec<_>>>()?;
    NetworkBlock::numbered(name, grid.clone(), mats)
}
