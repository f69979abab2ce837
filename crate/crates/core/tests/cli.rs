use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rfsic::touchstone::parse_touchstone;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rfsic"))
}

fn netlist(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("netlists").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Values of one CSV column, by header name.
fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().parse().unwrap()).collect()
}

#[test]
fn simulate_bundled_netlists() {
    let o = run(&["simulate", netlist("y3_ideal.net").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("freq_hz,tx_rx_isolation_db,"));
    let iso = column(&csv, "tx_rx_isolation_db");
    assert_eq!(iso.len(), 401);
    assert!(iso.iter().all(|&x| x == 200.0));
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",tx_rx_isolation_db;ant_return_loss_db")));

    let o = run(&["simulate", netlist("circulator_gamma01.net").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(column(&stdout(&o), "tx_rx_isolation_db").iter().all(|&x| (x - 20.0).abs() < 1e-6));

    let o = run(&["simulate", netlist("splitter20.net").to_str().unwrap()]);
    assert!(column(&stdout(&o), "tx_rx_isolation_db").iter().all(|&x| (x - 20.0).abs() < 1e-6));
}

#[test]
fn simulate_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("y3.csv");
    let o = run(&["simulate", netlist("y3_cots.net").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let il = column(&fs::read_to_string(out).unwrap(), "ant_rx_il_db");
    assert!(il.iter().all(|&x| (x - 9.0).abs() <= 0.5));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let dangling = dir.path().join("dangling.net");
    fs::write(
        &dangling,
        "sweep 1e9 3e9 11\ncomp C cable length_m=0.1\ncomp L load\nconn C.1 L.1\n",
    )
    .unwrap();
    let o = run(&["simulate", dangling.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("C.2"), "{}", stderr(&o));

    let bad = dir.path().join("bad.net");
    fs::write(&bad, "sweep 1e9 3e9 11\ncomp L load\ncomp X widget\nport P L.1\n").unwrap();
    let o = run(&["simulate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let unknown_key = dir.path().join("key.net");
    fs::write(&unknown_key, "sweep 1e9 3e9 11\ncomp L load colour=red\nport P L.1\n").unwrap();
    assert_eq!(run(&["simulate", unknown_key.to_str().unwrap()]).status.code(), Some(2));

    let o = run(&["montecarlo", "--runs", "3", "--amp-imbalance", "U(1,0)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ill_posed_interconnection_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("short.s1p"), "# GHZ S RI R 50\n1.0 -1 0\n").unwrap();
    let net = dir.path().join("ill.net");
    fs::write(
        &net,
        "sweep 1e9 1e9 1\n\
         comp A touchstone file=short.s1p\n\
         comp B touchstone file=short.s1p\n\
         comp L load\n\
         conn A.1 B.1\n\
         port P L.1\n",
    )
    .unwrap();
    let o = run(&["simulate", net.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    assert!(stderr(&o).contains("ill-posed"));
}

#[test]
fn scenario_summaries() {
    let o = run(&["scenario", "y3", "--preset", "ideal", "--band", "1e9:3e9:401"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tx_rx_isolation_db min=200.0 (capped)"), "{}", stdout(&o));

    let o = run(&["scenario", "y3", "--preset", "cots-calibrated", "--band", "2.4e9:2.7e9:61"]);
    let line = stdout(&o).lines().next().unwrap().to_string();
    let min: f64 = line.split("min=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((50.0..=60.0).contains(&min), "{line}");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spl.csv");
    let o = run(&["scenario", "splitter", "--iso-db", "20", "--band", "1e9:3e9:3", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let iso = column(&fs::read_to_string(out).unwrap(), "tx_rx_isolation_db");
    assert_eq!(iso, vec![20.0; 3]);

    let o = run(&["scenario", "circulator", "--gamma", "0.1", "--band", "1e9:3e9:5"]);
    assert!(stdout(&o).starts_with("tx_rx_isolation_db min=20.0 max=20.0"));
}

#[test]
fn montecarlo_is_byte_identical() {
    let args = ["montecarlo", "--runs", "40", "--seed", "42", "--twin-mismatch", "U(0,0.02)", "--band", "1e9:3e9:41"];
    let a = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    let b = bin().args(args).env("RFSIC_THREADS", "3").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["montecarlo", "--runs", "40", "--seed", "43", "--twin-mismatch", "U(0,0.02)", "--band", "1e9:3e9:41"]);
    assert_ne!(a.stdout, c.stdout);

    let csv = stdout(&a);
    assert!(csv.starts_with("freq_hz,tx_rx_isolation_p5_db,tx_rx_isolation_p50_db,tx_rx_isolation_p95_db,capped\n"));
    let p5 = column(&csv, "tx_rx_isolation_p5_db");
    let p50 = column(&csv, "tx_rx_isolation_p50_db");
    let p95 = column(&csv, "tx_rx_isolation_p95_db");
    for i in 0..p5.len() {
        assert!(p5[i] <= p50[i] && p50[i] <= p95[i]);
    }
}

#[test]
fn degenerate_montecarlo_equals_deterministic_run() {
    let mc = run(&["montecarlo", "--runs", "1", "--seed", "7", "--preset", "cots", "--twin-mismatch", "U(0.01,0.01)", "--band", "1e9:3e9:21"]);
    let sc_dir = tempfile::tempdir().unwrap();
    let out = sc_dir.path().join("y3.csv");
    run(&["scenario", "y3", "--preset", "cots", "--set", "delta_mag=0.01", "--band", "1e9:3e9:21", "-o", out.to_str().unwrap()]);
    let det = column(&fs::read_to_string(out).unwrap(), "tx_rx_isolation_db");
    let csv = stdout(&mc);
    for name in ["tx_rx_isolation_p5_db", "tx_rx_isolation_p50_db", "tx_rx_isolation_p95_db"] {
        assert_eq!(column(&csv, name), det);
    }
}

#[test]
fn optimize_reports() {
    let o = run(&["optimize", "--preset", "ideal", "--skew-mm", "3", "--band", "1e9:3e9:101"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let best: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("best_offset_m="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((best + 3e-3).abs() <= 1e-5, "{text}");
    assert!(text.contains("min_isolation_db=200 (capped)"), "{text}");

    let o = run(&["optimize", "--objective-band", "5e9:6e9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn touchstone_info_and_convert() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("ant.s1p");
    let mut text = String::from("! antenna\n# GHZ S MA R 50\n");
    for i in 0..401 {
        let f = 1.0 + 2.0 * i as f64 / 400.0;
        text.push_str(&format!("{f:.6} {:.6} {:.3}\n", 0.1 + 0.001 * i as f64, -170.0 + 0.8 * i as f64));
    }
    fs::write(&src, &text).unwrap();
    let o = run(&["touchstone", "info", src.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "1 port, 1.000–3.000 GHz, 401 points, MA");

    let ri = dir.path().join("ant_ri.s1p");
    let back = dir.path().join("ant_back.s1p");
    assert!(run(&["touchstone", "convert", src.to_str().unwrap(), ri.to_str().unwrap(), "--format", "ri"]).status.success());
    assert!(run(&["touchstone", "convert", ri.to_str().unwrap(), back.to_str().unwrap(), "--format", "ma"]).status.success());
    assert!(stdout(&run(&["touchstone", "info", ri.to_str().unwrap()])).contains(", RI"));
    let a = parse_touchstone(&text, 1).unwrap();
    let b = parse_touchstone(&fs::read_to_string(back).unwrap(), 1).unwrap();
    for (x, y) in a.matrices().iter().zip(b.matrices()) {
        assert!((x.get(0, 0) - y.get(0, 0)).norm() <= 1e-9);
    }

    let v2 = dir.path().join("ant.ts");
    fs::write(&v2, "[Version] 2.0\n# GHZ S MA R 50\n1.0 0.1 0\n").unwrap();
    let o = run(&["touchstone", "info", v2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Touchstone v2 unsupported"));
}
