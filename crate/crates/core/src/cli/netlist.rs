//! Line-oriented circuit description.
//!
//! ```text
//! # comment
//! sweep 1e9 3e9 401 [linear|log]
//! comp C1 cable length_m=0.3 vf=0.66
//! comp L1 load
//! conn C1.2 L1.1
//! port In C1.1
//! ```
//!
//! Instead of `comp`/`conn`/`port` lines a file may hold a single
//! `scenario y3|circulator|splitter key=value...` line, which expands to the
//! corresponding front-end. A `preset=` key selects the starting parameters;
//! the remaining keys override them in file order.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::analysis::{FrontendKind, Preset, Scenario, ScenarioParams};
use crate::components::{
    antenna, antenna_terminal, cable, circulator, dummy_antenna, hybrid180, match_load, splitter,
    AntennaModel, CableSpec, DummyPerturbation, HybridMode, HybridParams, PerturbationModel,
    SplitterParams,
};
use crate::error::{Error, Result};
use crate::netcore::{FrequencyGrid, NetworkBlock, PortRef, Spacing};
use crate::solver::Circuit;
use crate::touchstone::{parse_touchstone, ports_from_extension};

#[derive(Debug, Clone)]
pub enum NetlistBody {
    Circuit(Circuit),
    Scenario(Scenario),
}

#[derive(Debug, Clone)]
pub struct Netlist {
    pub grid: FrequencyGrid,
    pub body: NetlistBody,
}

type KeyValues = Vec<(String, String)>;

impl Netlist {
    pub fn from_file(path: &Path) -> Result<Netlist> {
        let text = std::fs::read_to_string(path)?;
        Netlist::parse(&text, path.parent())
    }

    /// Parses and validates a netlist. Relative `file=` paths resolve against
    /// `base_dir` (the working directory when `None`).
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Netlist> {
        let mut sweep: Option<(usize, FrequencyGrid)> = None;
        let mut comps: Vec<(usize, String, String, KeyValues)> = Vec::new();
        let mut conns: Vec<(usize, PortRef, PortRef)> = Vec::new();
        let mut ports: Vec<(usize, String, PortRef)> = Vec::new();
        let mut scenario: Option<(usize, String, KeyValues)> = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Netlist { line: line_no, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "sweep" => {
                    if sweep.is_some() {
                        return Err(err("second sweep line".into()));
                    }
                    if !(4..=5).contains(&toks.len()) {
                        return Err(err("expected `sweep f_lo f_hi n [linear|log]`".into()));
                    }
                    let num = |s: &str| s.parse::<f64>().map_err(|_| err(format!("bad number `{s}`")));
                    let n = toks[3]
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad point count `{}`", toks[3])))?;
                    let spacing = match toks.get(4).copied() {
                        None | Some("linear") => Spacing::Linear,
                        Some("log") => Spacing::Log,
                        Some(s) => return Err(err(format!("unknown spacing `{s}`"))),
                    };
                    let g = FrequencyGrid::new(num(toks[1])?, num(toks[2])?, n, spacing)
                        .map_err(|e| err(e.to_string()))?;
                    sweep = Some((line_no, g));
                }
                "comp" => {
                    if toks.len() < 3 {
                        return Err(err("expected `comp NAME KIND key=value...`".into()));
                    }
                    let kv = key_values(&toks[3..]).map_err(err)?;
                    comps.push((line_no, toks[1].to_string(), toks[2].to_string(), kv));
                }
                "conn" => {
                    if toks.len() != 3 {
                        return Err(err("expected `conn A.p B.q`".into()));
                    }
                    let a = port_ref(toks[1]).map_err(err)?;
                    let b = port_ref(toks[2]).map_err(err)?;
                    conns.push((line_no, a, b));
                }
                "port" => {
                    if toks.len() != 3 {
                        return Err(err("expected `port NAME A.p`".into()));
                    }
                    ports.push((line_no, toks[1].to_string(), port_ref(toks[2]).map_err(err)?));
                }
                "scenario" => {
                    if scenario.is_some() {
                        return Err(err("second scenario line".into()));
                    }
                    if toks.len() < 2 {
                        return Err(err("expected `scenario KIND key=value...`".into()));
                    }
                    let kv = key_values(&toks[2..]).map_err(err)?;
                    scenario = Some((line_no, toks[1].to_string(), kv));
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }

        let (_, grid) = sweep.ok_or(Error::Netlist {
            line: 0,
            msg: "missing `sweep` line".into(),
        })?;

        if let Some((line, kind, kv)) = scenario {
            if let Some(&(other, ..)) = comps.first() {
                return Err(Error::Netlist {
                    line: other,
                    msg: "`comp` lines cannot be mixed with a `scenario` line".into(),
                });
            }
            if let Some(other) = conns.first().map(|c| c.0).or(ports.first().map(|p| p.0)) {
                return Err(Error::Netlist {
                    line: other,
                    msg: "`conn`/`port` lines cannot be mixed with a `scenario` line".into(),
                });
            }
            let s = build_scenario(&kind, &kv, base_dir).map_err(|e| Error::Netlist {
                line,
                msg: e.to_string(),
            })?;
            return Ok(Netlist {
                grid,
                body: NetlistBody::Scenario(s),
            });
        }

        let blocks = comps
            .iter()
            .map(|(line, name, kind, kv)| {
                build_comp(kind, kv, &grid, base_dir)
                    .map(|b| b.renamed(name.as_str()))
                    .map_err(|e| Error::Netlist {
                        line: *line,
                        msg: e.to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        if blocks.is_empty() {
            return Err(Error::Netlist {
                line: 0,
                msg: "no `comp` or `scenario` lines".into(),
            });
        }
        let circuit = Circuit::assemble(
            blocks,
            conns.into_iter().map(|(_, a, b)| (a, b)).collect(),
            ports.into_iter().map(|(_, n, r)| (n, r)).collect(),
        )?;
        Ok(Netlist {
            grid,
            body: NetlistBody::Circuit(circuit),
        })
    }

    /// The circuit to reduce, expanding a scenario on the sweep grid.
    pub fn circuit(&self) -> Result<Circuit> {
        match &self.body {
            NetlistBody::Circuit(c) => Ok(c.clone()),
            NetlistBody::Scenario(s) => s.build(&self.grid),
        }
    }
}

fn key_values(toks: &[&str]) -> std::result::Result<Vec<(String, String)>, String> {
    toks.iter()
        .map(|t| match t.split_once('=') {
            Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k.to_string(), v.to_string())),
            _ => Err(format!("expected key=value, got `{t}`")),
        })
        .collect()
}

fn port_ref(s: &str) -> std::result::Result<PortRef, String> {
    let (b, p) = s
        .rsplit_once('.')
        .ok_or_else(|| format!("expected BLOCK.PORT, got `{s}`"))?;
    let port = p
        .parse::<usize>()
        .map_err(|_| format!("bad port number in `{s}`"))?;
    Ok(PortRef::new(b, port))
}

fn resolve(base_dir: Option<&Path>, file: &str) -> PathBuf {
    match base_dir {
        Some(d) if Path::new(file).is_relative() => d.join(file),
        _ => PathBuf::from(file),
    }
}

fn load_touchstone(path: &Path) -> Result<NetworkBlock> {
    let n = ports_from_extension(path)?;
    let text = std::fs::read_to_string(path)?;
    parse_touchstone(&text, n)
}

pub(crate) fn parse_preset(value: &str) -> Result<ScenarioParams> {
    match value {
        "ideal" => Ok(ScenarioParams::from_preset(Preset::Ideal)),
        "cots" => Ok(ScenarioParams::from_preset(Preset::Cots)),
        "cots-calibrated" => Ok(ScenarioParams::cots_calibrated()),
        "custom" => Ok(ScenarioParams::from_preset(Preset::Custom)),
        _ => Err(Error::InvalidParameter(format!(
            "unknown preset `{value}` (ideal, cots, cots-calibrated, custom)"
        ))),
    }
}

fn build_scenario(kind: &str, kv: &[(String, String)], base_dir: Option<&Path>) -> Result<Scenario> {
    let kind: FrontendKind = kind.parse()?;
    let params = match kv.iter().find(|(k, _)| k == "preset") {
        Some((_, v)) => parse_preset(v)?,
        None => ScenarioParams::from_preset(Preset::Custom),
    };
    let mut s = Scenario::new(kind, params);
    for (k, v) in kv {
        match k.as_str() {
            "preset" => {}
            "ant_file" => {
                s.params.antenna = AntennaModel::File(load_touchstone(&resolve(base_dir, v))?)
            }
            _ => s.set(k, v)?,
        }
    }
    Ok(s)
}

/// Typed view of a component's `key=value` list that rejects unused keys.
struct Params<'a> {
    kind: &'a str,
    kv: &'a [(String, String)],
    used: Vec<bool>,
}

impl<'a> Params<'a> {
    fn new(kind: &'a str, kv: &'a [(String, String)]) -> Result<Self> {
        for (i, (k, _)) in kv.iter().enumerate() {
            if kv[..i].iter().any(|(j, _)| j == k) {
                return Err(Error::InvalidParameter(format!("key `{k}` given twice")));
            }
        }
        Ok(Self {
            kind,
            kv,
            used: vec![false; kv.len()],
        })
    }

    fn raw(&mut self, key: &str) -> Option<&'a str> {
        let i = self.kv.iter().position(|(k, _)| k == key)?;
        self.used[i] = true;
        Some(self.kv[i].1.as_str())
    }

    fn f64_or(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            Some(v) => crate::analysis::scenario_parse_f64(key, v),
            None => Ok(default),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.used.iter().position(|u| !u) {
            Some(i) => Err(Error::InvalidParameter(format!(
                "unknown key `{}` for {}",
                self.kv[i].0, self.kind
            ))),
            None => Ok(()),
        }
    }

    fn antenna_model(&mut self, base_dir: Option<&Path>) -> Result<AntennaModel> {
        if let Some(f) = self.raw("file") {
            return Ok(AntennaModel::File(load_touchstone(&resolve(base_dir, f))?));
        }
        let AntennaModel::Rlc { r, l, c } = AntennaModel::default_rlc() else {
            unreachable!()
        };
        Ok(AntennaModel::Rlc {
            r: self.f64_or("r", r)?,
            l: self.f64_or("l", l)?,
            c: self.f64_or("c", c)?,
        })
    }
}

fn build_comp(
    kind: &str,
    kv: &[(String, String)],
    grid: &FrequencyGrid,
    base_dir: Option<&Path>,
) -> Result<NetworkBlock> {
    let mut p = Params::new(kind, kv)?;
    let block = match kind {
        "splitter" => {
            let base = match p.raw("preset") {
                None | Some("ideal") => SplitterParams::ideal(),
                Some("cots") => SplitterParams::cots(),
                Some(v) => return Err(Error::InvalidParameter(format!("unknown splitter preset `{v}`"))),
            };
            let sp = SplitterParams {
                excess_loss_db: p.f64_or("excess_db", base.excess_loss_db)?,
                isolation_db: p.f64_or("iso_db", base.isolation_db)?,
                amp_imbalance_db: p.f64_or("amp_imb_db", base.amp_imbalance_db)?,
                phase_imbalance_deg: p.f64_or("phase_imb_deg", base.phase_imbalance_deg)?,
                thru_phase_deg: p.f64_or("thru_deg", base.thru_phase_deg)?,
            };
            splitter(&sp, grid)?
        }
        "hybrid" => {
            let mode = match p.raw("mode") {
                None | Some("paper_ideal") => HybridMode::PaperIdeal,
                Some("physical") => HybridMode::Physical,
                Some(v) => return Err(Error::InvalidParameter(format!("unknown hybrid mode `{v}`"))),
            };
            let excess_loss_db = p.f64_or("excess_db", 0.0)?;
            hybrid180(&HybridParams { mode, excess_loss_db }, grid)?
        }
        "cable" => {
            let spec = CableSpec {
                length_m: p.f64_or("length_m", 0.0)?,
                velocity_factor: p.f64_or("vf", 1.0)?,
                loss_db_per_m_at_1ghz: p.f64_or("loss_db_per_m", 0.0)?,
            };
            cable(&spec, grid)?
        }
        "circulator" => {
            let gamma = Complex64::new(p.f64_or("gamma_re", 0.0)?, p.f64_or("gamma_im", 0.0)?);
            circulator(gamma, grid)?
        }
        "antenna" => antenna(&p.antenna_model(base_dir)?, grid)?,
        "antenna_terminal" => antenna_terminal(&p.antenna_model(base_dir)?, grid)?,
        "dummy" => {
            let model = p.antenna_model(base_dir)?;
            let mut pert = DummyPerturbation::constant(
                p.f64_or("delta_mag", 0.0)?,
                p.f64_or("delta_deg", 0.0)?,
            );
            pert.model = match p.raw("delta_model") {
                None | Some("constant") => PerturbationModel::Constant,
                Some("linear_in_f") => PerturbationModel::LinearInF,
                Some(v) => return Err(Error::InvalidParameter(format!("unknown delta_model `{v}`"))),
            };
            dummy_antenna(&model, &pert, grid)?
        }
        "load" => match_load(grid)?,
        "touchstone" => {
            let file = p
                .raw("file")
                .ok_or_else(|| Error::InvalidParameter("touchstone needs file=PATH".into()))?;
            load_touchstone(&resolve(base_dir, file))?.interpolate(grid)?
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown component kind `{other}`"
            )))
        }
    };
    p.finish()?;
    Ok(block)
}
