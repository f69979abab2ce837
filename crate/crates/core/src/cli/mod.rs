//! Command-line front end: argument types, command runners and exit codes.

pub mod csv;
pub mod netlist;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::analysis::{
    band_stats, metrics, monte_carlo, optimize_arm_length, BandStats, Dist, FrontendKind,
    McDistributions, Preset, Scenario, ScenarioParams, SweepResult,
};
use crate::error::{Error, Result};
use crate::netcore::{FrequencyGrid, Spacing};
use crate::touchstone::{parse_touchstone_file, ports_from_extension, write_touchstone, DataFormat};

use self::netlist::{parse_preset, Netlist};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;
pub const EXIT_ILL_POSED: i32 = 4;

/// Exit status for an error: 4 ill-posed solve, 3 optimizer failure,
/// 2 anything caused by the input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IllPosed { .. } | Error::Singular { .. } => EXIT_ILL_POSED,
        Error::Optimizer(_) => EXIT_RUNTIME,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Parser)]
#[command(name = "rfsic", version, about = "S-parameter simulator for twin-antenna full-duplex front-ends")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a netlist and write its metrics as CSV.
    Simulate {
        netlist: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sweep a preset front-end and print band statistics.
    Scenario(ScenarioArgs),
    /// Seeded tolerance analysis of the Y3 canceller.
    Montecarlo(MonteCarloArgs),
    /// Tune the dummy-arm length for the best worst-case isolation.
    Optimize(OptimizeArgs),
    /// Inspect or convert Touchstone v1 files.
    #[command(subcommand)]
    Touchstone(TouchstoneCommand),
}

/// Options shared by commands that build a scenario.
#[derive(Debug, Args)]
pub struct ScenarioOpts {
    /// ideal, cots, cots-calibrated or custom.
    #[arg(long)]
    pub preset: Option<String>,
    /// Sweep as f_lo:f_hi:n, optionally with a trailing `:log`.
    #[arg(long, default_value = "1e9:3e9:401")]
    pub band: String,
    /// Extra `key=value` scenario overrides, applied after the preset.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// y3, circulator or splitter.
    pub kind: String,
    #[command(flatten)]
    pub opts: ScenarioOpts,
    /// Splitter arm isolation in dB.
    #[arg(long)]
    pub iso_db: Option<f64>,
    /// Real part of the circulator mismatch γ.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Attach the antenna model to a baseline's Ant port.
    #[arg(long)]
    pub attach_antenna: bool,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[arg(long)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub opts: ScenarioOpts,
    /// Distributions are `U(lo,hi)` or `N(mean,sd,lo,hi)`.
    #[arg(long)]
    pub amp_imbalance: Option<String>,
    #[arg(long)]
    pub phase_imbalance: Option<String>,
    #[arg(long)]
    pub splitter_iso: Option<String>,
    #[arg(long)]
    pub twin_mismatch: Option<String>,
    #[arg(long)]
    pub twin_phase: Option<String>,
    #[arg(long)]
    pub arm_skew: Option<String>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub opts: ScenarioOpts,
    /// Offset search interval lo:hi in metres.
    #[arg(long, default_value = "-0.01:0.01", allow_hyphen_values = true)]
    pub bounds: String,
    /// Objective band lo:hi in Hz; the whole sweep when omitted.
    #[arg(long)]
    pub objective_band: Option<String>,
    /// Dummy-arm length skew to inject, in millimetres.
    #[arg(long, allow_hyphen_values = true)]
    pub skew_mm: Option<f64>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TouchstoneCommand {
    /// Port count, frequency range, point count and data format.
    Info { file: PathBuf },
    /// Rewrite a file in another data format.
    Convert {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        format: String,
    },
}

/// Parses `f_lo:f_hi:n[:log]`.
pub fn parse_band(s: &str) -> Result<FrequencyGrid> {
    let bad = || Error::InvalidParameter(format!("band `{s}` is not f_lo:f_hi:n[:log]"));
    let parts: Vec<&str> = s.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    let spacing = match parts.get(3) {
        None | Some(&"linear") => Spacing::Linear,
        Some(&"log") => Spacing::Log,
        _ => return Err(bad()),
    };
    FrequencyGrid::new(lo, hi, n, spacing)
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidParameter(format!("{what} `{s}` is not lo:hi"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

fn scenario_params(opts: &ScenarioOpts, default: Preset) -> Result<ScenarioParams> {
    let mut p = match &opts.preset {
        Some(name) => parse_preset(name)?,
        None => ScenarioParams::from_preset(default),
    };
    for kv in &opts.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("override `{kv}` is not key=value")))?;
        p.set(k, v)?;
    }
    Ok(p)
}

fn write_output(path: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fmt_summary(x: f64) -> String {
    let s = format!("{x:.3}");
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

/// One line per series: `name min=.. max=.. mean=..`, with `(capped)`
/// after values sitting at the 200 dB cap.
pub fn summary_lines(stats: &BandStats) -> String {
    let flag = |c: bool| if c { " (capped)" } else { "" };
    stats
        .series
        .iter()
        .map(|(name, s)| {
            format!(
                "{name} min={}{} max={}{} mean={}\n",
                fmt_summary(s.min),
                flag(s.min_capped),
                fmt_summary(s.max),
                flag(s.max_capped),
                fmt_summary(s.mean)
            )
        })
        .collect()
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Simulate { netlist, out } => {
            let n = Netlist::from_file(netlist)?;
            let r = metrics(&n.circuit()?)?;
            write_output(out, &csv::sweep_csv(&r), stdout)
        }
        Command::Scenario(a) => run_scenario(a, stdout),
        Command::Montecarlo(a) => run_montecarlo(a, stdout),
        Command::Optimize(a) => run_optimize(a, stdout),
        Command::Touchstone(TouchstoneCommand::Info { file }) => {
            let n = ports_from_extension(file)?;
            let t = parse_touchstone_file(&std::fs::read_to_string(file)?, n)?;
            let g = t.block.grid();
            writeln!(
                stdout,
                "{n} port{}, {:.3}–{:.3} GHz, {} points, {}",
                if n == 1 { "" } else { "s" },
                g.first() / 1e9,
                g.last() / 1e9,
                g.len(),
                t.options.format.token()
            )?;
            Ok(())
        }
        Command::Touchstone(TouchstoneCommand::Convert { input, output, format }) => {
            let n = ports_from_extension(input)?;
            ports_from_extension(output)?;
            let fmt: DataFormat = format.parse()?;
            let t = parse_touchstone_file(&std::fs::read_to_string(input)?, n)?;
            std::fs::write(output, write_touchstone(&t.block, fmt)?)?;
            Ok(())
        }
    }
}

fn run_scenario(a: &ScenarioArgs, stdout: &mut dyn Write) -> Result<()> {
    let kind: FrontendKind = a.kind.parse()?;
    let default = match kind {
        // an ideal splitter with finite isolation is not passive
        FrontendKind::Splitter => Preset::Cots,
        _ => Preset::Ideal,
    };
    let grid = parse_band(&a.opts.band)?;
    let mut s = Scenario::new(kind, scenario_params(&a.opts, default)?);
    if let Some(iso) = a.iso_db {
        s.params.splitter.isolation_db = iso;
    }
    if let Some(g) = a.gamma {
        s.gamma = Complex64::new(g, 0.0);
    }
    s.attach_antenna = a.attach_antenna;
    let r: SweepResult = metrics(&s.build(&grid)?)?;
    let stats = band_stats(&r, grid.first(), grid.last())?;
    stdout.write_all(summary_lines(&stats).as_bytes())?;
    if let Some(path) = &a.out {
        std::fs::write(path, csv::sweep_csv(&r))?;
    }
    Ok(())
}

fn run_montecarlo(a: &MonteCarloArgs, stdout: &mut dyn Write) -> Result<()> {
    let grid = parse_band(&a.opts.band)?;
    let base = scenario_params(&a.opts, Preset::Ideal)?;
    let dist = |s: &Option<String>| s.as_deref().map(Dist::parse).transpose();
    let dists = McDistributions {
        amp_imbalance_db: dist(&a.amp_imbalance)?,
        phase_imbalance_deg: dist(&a.phase_imbalance)?,
        splitter_isolation_db: dist(&a.splitter_iso)?,
        twin_mismatch_mag: dist(&a.twin_mismatch)?,
        twin_mismatch_phase_deg: dist(&a.twin_phase)?,
        arm_skew_m: dist(&a.arm_skew)?,
    };
    let summary = monte_carlo(&base, &dists, a.runs, a.seed, &grid)?;
    write_output(&a.out, &csv::montecarlo_csv(&summary), stdout)?;
    if a.out.is_some() {
        let (p5, p50, p95) = summary.band_minima_percentiles();
        writeln!(
            stdout,
            "runs={} seed={} band_min_isolation_db p5={} p50={} p95={}",
            summary.runs,
            summary.seed,
            fmt_summary(p5),
            fmt_summary(p50),
            fmt_summary(p95)
        )?;
    }
    Ok(())
}

fn run_optimize(a: &OptimizeArgs, stdout: &mut dyn Write) -> Result<()> {
    let grid = parse_band(&a.opts.band)?;
    let mut p = scenario_params(&a.opts, Preset::Ideal)?;
    if let Some(mm) = a.skew_mm {
        p.arm_b.length_m = p.arm_a.length_m + mm * 1e-3;
    }
    let bounds = parse_pair(&a.bounds, "bounds")?;
    let band = match &a.objective_band {
        Some(b) => parse_pair(b, "objective band")?,
        None => (grid.first(), grid.last()),
    };
    let r = optimize_arm_length(&p, bounds, band, &grid)?;
    let report = format!(
        "best_offset_m={}\nmin_isolation_db={}{}\nbaseline_isolation_db={}\n",
        csv::fmt_g9(r.best_offset_m),
        csv::fmt_g9(r.min_isolation_db),
        if r.capped { " (capped)" } else { "" },
        csv::fmt_g9(crate::netcore::cap_db(r.baseline_db).0),
    );
    stdout.write_all(report.as_bytes())?;
    if let Some(path) = &a.out {
        std::fs::write(path, &report)?;
    }
    Ok(())
}
