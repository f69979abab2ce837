//! CSV writers. Values use 9 significant digits; dB values are capped at
//! 200 and the names of capped series are listed per row.

use std::fmt::Write as _;

use crate::analysis::{McSummary, SweepResult};
use crate::netcore::cap_db;

/// `printf("%.9g")`.
pub fn fmt_g9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..9).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (8 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn push_row(out: &mut String, freq: f64, values: &[(&str, f64)]) {
    let mut capped = Vec::new();
    let _ = write!(out, "{}", fmt_g9(freq));
    for &(name, raw) in values {
        let (v, c) = cap_db(raw);
        if c {
            capped.push(name);
        }
        let _ = write!(out, ",{}", fmt_g9(v));
    }
    let _ = writeln!(out, ",{}", capped.join(";"));
}

pub fn sweep_csv(r: &SweepResult) -> String {
    let series = r.series();
    let mut out = String::from("freq_hz");
    for (name, _) in &series {
        out.push(',');
        out.push_str(name);
    }
    out.push_str(",capped\n");
    for (i, &f) in r.grid.points().iter().enumerate() {
        let row: Vec<(&str, f64)> = series.iter().map(|(n, v)| (*n, v[i])).collect();
        push_row(&mut out, f, &row);
    }
    out
}

pub fn montecarlo_csv(s: &McSummary) -> String {
    const P5: &str = "tx_rx_isolation_p5_db";
    const P50: &str = "tx_rx_isolation_p50_db";
    const P95: &str = "tx_rx_isolation_p95_db";
    let mut out = format!("freq_hz,{P5},{P50},{P95},capped\n");
    for (i, &f) in s.grid.points().iter().enumerate() {
        push_row(&mut out, f, &[(P5, s.p5[i]), (P50, s.p50[i]), (P95, s.p95[i])]);
    }
    out
}
