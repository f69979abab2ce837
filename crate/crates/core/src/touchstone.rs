//! Touchstone version 1 (`.s1p` .. `.s4p`) reader and writer.
//!
//! Data ordering follows the v1 convention: 2-port records are
//! `S11 S21 S12 S22`; 1-, 3- and 4-port records are row-major, with 3- and
//! 4-port records continued over one line per matrix row.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netcore::{FrequencyGrid, NetworkBlock, ScatteringMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqUnit {
    Hz,
    KHz,
    MHz,
    GHz,
}

impl FreqUnit {
    pub fn scale(self) -> f64 {
        match self {
            FreqUnit::Hz => 1.0,
            FreqUnit::KHz => 1e3,
            FreqUnit::MHz => 1e6,
            FreqUnit::GHz => 1e9,
        }
    }

    fn token(self) -> &'static str {
        match self {
            FreqUnit::Hz => "HZ",
            FreqUnit::KHz => "KHZ",
            FreqUnit::MHz => "MHZ",
            FreqUnit::GHz => "GHZ",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    /// Real / imaginary.
    RI,
    /// Linear magnitude / angle in degrees.
    MA,
    /// dB magnitude / angle in degrees.
    DB,
}

impl DataFormat {
    pub fn token(self) -> &'static str {
        match self {
            DataFormat::RI => "RI",
            DataFormat::MA => "MA",
            DataFormat::DB => "DB",
        }
    }

    fn decode(self, x: f64, y: f64) -> Complex64 {
        match self {
            DataFormat::RI => Complex64::new(x, y),
            DataFormat::MA => Complex64::from_polar(x, y * PI / 180.0),
            DataFormat::DB => Complex64::from_polar(10f64.powf(x / 20.0), y * PI / 180.0),
        }
    }

    fn encode(self, s: Complex64) -> (f64, f64) {
        match self {
            DataFormat::RI => (s.re, s.im),
            DataFormat::MA => (s.norm(), s.arg() * 180.0 / PI),
            DataFormat::DB => (20.0 * s.norm().log10(), s.arg() * 180.0 / PI),
        }
    }
}

impl std::str::FromStr for DataFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "RI" => Ok(DataFormat::RI),
            "MA" => Ok(DataFormat::MA),
            "DB" => Ok(DataFormat::DB),
            other => Err(Error::InvalidParameter(format!("unknown data format `{other}`"))),
        }
    }
}

/// Contents of the `#` option line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TouchstoneOptions {
    pub freq_unit: FreqUnit,
    pub format: DataFormat,
    pub z_ref: f64,
}

impl Default for TouchstoneOptions {
    fn default() -> Self {
        Self {
            freq_unit: FreqUnit::GHz,
            format: DataFormat::MA,
            z_ref: 50.0,
        }
    }
}

impl TouchstoneOptions {
    pub fn parse(line: &str, line_no: usize) -> Result<Self> {
        let err = |msg: String| Error::Touchstone { line: line_no, msg };
        let body = line.trim_start().strip_prefix('#').unwrap_or(line);
        let mut opts = TouchstoneOptions::default();
        let mut tokens = body.split_whitespace();
        while let Some(tok) = tokens.next() {
            match tok.to_ascii_uppercase().as_str() {
                "HZ" => opts.freq_unit = FreqUnit::Hz,
                "KHZ" => opts.freq_unit = FreqUnit::KHz,
                "MHZ" => opts.freq_unit = FreqUnit::MHz,
                "GHZ" => opts.freq_unit = FreqUnit::GHz,
                "S" => {}
                "Y" | "Z" | "H" | "G" => {
                    return Err(err(format!("parameter type `{tok}` unsupported; only S")))
                }
                "RI" => opts.format = DataFormat::RI,
                "MA" => opts.format = DataFormat::MA,
                "DB" => opts.format = DataFormat::DB,
                "R" => {
                    let v = tokens
                        .next()
                        .ok_or_else(|| err("`R` needs a resistance value".into()))?;
                    let z: f64 = v
                        .parse()
                        .map_err(|_| err(format!("bad reference impedance `{v}`")))?;
                    if !(z.is_finite() && z > 0.0) {
                        return Err(err(format!("reference impedance must be positive, got {z}")));
                    }
                    opts.z_ref = z;
                }
                _ => return Err(err(format!("unknown option token `{tok}`"))),
            }
        }
        Ok(opts)
    }

    fn line(&self) -> String {
        format!(
            "# {} S {} R {}",
            self.freq_unit.token(),
            self.format.token(),
            self.z_ref
        )
    }
}

/// Parsed file: the block plus the options it was written with.
#[derive(Debug, Clone)]
pub struct TouchstoneFile {
    pub options: TouchstoneOptions,
    pub block: NetworkBlock,
}

/// Port count implied by a `.sNp` extension.
pub fn ports_from_extension(path: &std::path::Path) -> Result<usize> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    if ext == "ts" {
        return Err(Error::TouchstoneV2 { line: 0 });
    }
    let n = ext
        .strip_prefix('s')
        .and_then(|r| r.strip_suffix('p'))
        .and_then(|d| d.parse::<usize>().ok());
    match n {
        Some(n @ 1..=4) => Ok(n),
        _ => Err(Error::InvalidParameter(format!(
            "cannot infer port count from `{}` (expected .s1p .. .s4p)",
            path.display()
        ))),
    }
}

pub fn parse_touchstone(text: &str, n_ports: usize) -> Result<NetworkBlock> {
    Ok(parse_touchstone_file(text, n_ports)?.block)
}

pub fn parse_touchstone_file(text: &str, n_ports: usize) -> Result<TouchstoneFile> {
    if !(1..=4).contains(&n_ports) {
        return Err(Error::InvalidParameter(format!(
            "{n_ports}-port Touchstone files are not supported (1..=4)"
        )));
    }
    if text.trim().is_empty() {
        return Err(Error::Touchstone {
            line: 0,
            msg: "empty file".into(),
        });
    }
    let per_record = 1 + 2 * n_ports * n_ports;
    let mut options: Option<TouchstoneOptions> = None;
    let mut freqs: Vec<f64> = Vec::new();
    let mut mats: Vec<ScatteringMatrix> = Vec::new();
    // values of the record being accumulated, and the line it started on
    let mut pending: Vec<f64> = Vec::new();
    let mut pending_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('!').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            return Err(Error::TouchstoneV2 { line: line_no });
        }
        if content.starts_with('#') {
            if options.is_some() {
                log::warn!("touchstone line {line_no}: ignoring repeated option line");
                continue;
            }
            options = Some(TouchstoneOptions::parse(content, line_no)?);
            continue;
        }
        let values = content
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>().map_err(|_| Error::Touchstone {
                    line: line_no,
                    msg: format!("`{t}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let opts = *options.get_or_insert_with(TouchstoneOptions::default);

        if pending.is_empty() {
            // A 2-port record restarting at a lower frequency with 5 values
            // opens the noise-parameter section.
            if n_ports == 2 && values.len() == 5 {
                if let Some(&last) = freqs.last() {
                    if values[0] * opts.freq_unit.scale() <= last {
                        log::warn!("touchstone line {line_no}: skipping noise parameter section");
                        break;
                    }
                }
            }
            pending_line = line_no;
        }
        pending.extend_from_slice(&values);

        if n_ports <= 2 {
            if pending.len() != per_record {
                return Err(Error::Touchstone {
                    line: line_no,
                    msg: format!("expected {per_record} values, found {}", pending.len()),
                });
            }
        } else if pending.len() < per_record {
            continue;
        } else if pending.len() > per_record {
            return Err(Error::Touchstone {
                line: line_no,
                msg: format!(
                    "record starting on line {pending_line} has {} values, expected {per_record}",
                    pending.len()
                ),
            });
        }

        let f = pending[0] * opts.freq_unit.scale();
        if let Some(&last) = freqs.last() {
            if f <= last {
                return Err(Error::Touchstone {
                    line: pending_line,
                    msg: format!("frequency {f} Hz does not increase (previous {last} Hz)"),
                });
            }
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n_ports * n_ports];
        for (k, pair) in pending[1..].chunks_exact(2).enumerate() {
            let s = opts.format.decode(pair[0], pair[1]);
            let (row, col) = if n_ports == 2 {
                (k % 2, k / 2)
            } else {
                (k / n_ports, k % n_ports)
            };
            entries[row * n_ports + col] = s;
        }
        let m = ScatteringMatrix::with_z_ref(n_ports, entries, opts.z_ref).map_err(|e| {
            Error::Touchstone {
                line: pending_line,
                msg: e.to_string(),
            }
        })?;
        freqs.push(f);
        mats.push(m);
        pending.clear();
    }

    if !pending.is_empty() {
        return Err(Error::Touchstone {
            line: pending_line,
            msg: format!(
                "incomplete record: {} of {per_record} values",
                pending.len()
            ),
        });
    }
    if freqs.is_empty() {
        return Err(Error::Touchstone {
            line: 0,
            msg: "no data records".into(),
        });
    }
    let grid = FrequencyGrid::from_points(freqs).map_err(|e| Error::Touchstone {
        line: 0,
        msg: e.to_string(),
    })?;
    let block = NetworkBlock::numbered("touchstone", grid, mats)?;
    Ok(TouchstoneFile {
        options: options.unwrap_or_default(),
        block,
    })
}

/// Serializes `b` with frequencies in GHz.
pub fn write_touchstone(b: &NetworkBlock, format: DataFormat) -> Result<String> {
    let n = b.n_ports();
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "{n}-port blocks cannot be written as Touchstone v1 (1..=4)"
        )));
    }
    let opts = TouchstoneOptions {
        freq_unit: FreqUnit::GHz,
        format,
        z_ref: b.z_ref(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "! {}-port data for `{}`", n, b.name());
    let _ = writeln!(out, "{}", opts.line());
    for (&f, m) in b.grid().points().iter().zip(b.matrices()) {
        let pair = |out: &mut String, s: Complex64| {
            let (x, y) = format.encode(s);
            let _ = write!(out, " {} {}", fmt_num(x), fmt_num(y));
        };
        out.push_str(&fmt_num(f / 1e9));
        match n {
            1 => pair(&mut out, m.get(0, 0)),
            2 => {
                for (r, c) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    pair(&mut out, m.get(r, c));
                }
            }
            _ => {
                for r in 0..n {
                    if r > 0 {
                        out.push_str("\n ");
                    }
                    for c in 0..n {
                        pair(&mut out, m.get(r, c));
                    }
                }
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Shortest round-trip representation, always with a decimal point or exponent.
fn fmt_num(x: f64) -> String {
    // -0.0 would survive as "-0.0"; normalise it
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:?}")
}
