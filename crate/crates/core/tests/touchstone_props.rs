use num_complex::Complex64;
use proptest::prelude::*;

use rfsic::components::{antenna, AntennaModel};
use rfsic::netcore::{FrequencyGrid, NetworkBlock, ScatteringMatrix, Spacing};
use rfsic::touchstone::{parse_touchstone, write_touchstone, DataFormat};

const FORMATS: [DataFormat; 3] = [DataFormat::RI, DataFormat::MA, DataFormat::DB];

fn entry() -> impl Strategy<Value = Complex64> {
    // magnitudes kept away from zero so DB stays finite
    (1e-6f64..1.5, -180.0f64..180.0).prop_map(|(m, deg)| Complex64::from_polar(m, deg.to_radians()))
}

fn block() -> impl Strategy<Value = NetworkBlock> {
    (1usize..=4, 1usize..=6, 1e6f64..1e10).prop_flat_map(|(n, points, f0)| {
        prop::collection::vec(entry(), n * n * points).prop_map(move |v| {
            let stop = if points == 1 { f0 } else { f0 * points as f64 };
            let grid = FrequencyGrid::new(f0, stop, points, Spacing::Linear).unwrap();
            let mats = v
                .chunks(n * n)
                .map(|c| ScatteringMatrix::from_rows(n, c.to_vec()).unwrap())
                .collect();
            NetworkBlock::numbered("data", grid, mats).unwrap()
        })
    })
}

fn max_abs_diff(a: &NetworkBlock, b: &NetworkBlock) -> f64 {
    a.matrices()
        .iter()
        .zip(b.matrices())
        .flat_map(|(x, y)| x.entries().iter().zip(y.entries()).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

fn max_freq_rel_diff(a: &NetworkBlock, b: &NetworkBlock) -> f64 {
    a.grid()
        .points()
        .iter()
        .zip(b.grid().points())
        .map(|(x, y)| ((x - y) / x).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_parse_is_identity(b in block(), fi in 0usize..3) {
        let fmt = FORMATS[fi];
        let text = write_touchstone(&b, fmt).unwrap();
        let back = parse_touchstone(&text, b.n_ports()).unwrap();
        prop_assert_eq!(back.n_ports(), b.n_ports());
        prop_assert_eq!(back.grid().len(), b.grid().len());
        prop_assert!(max_freq_rel_diff(&back, &b) <= 1e-15);
        prop_assert!(max_abs_diff(&back, &b) <= 1e-9, "{:?}: {}", fmt, max_abs_diff(&back, &b));
    }

    #[test]
    fn formats_agree(b in block()) {
        let parsed: Vec<NetworkBlock> = FORMATS
            .iter()
            .map(|&f| parse_touchstone(&write_touchstone(&b, f).unwrap(), b.n_ports()).unwrap())
            .collect();
        prop_assert!(max_abs_diff(&parsed[0], &parsed[1]) <= 1e-9);
        prop_assert!(max_abs_diff(&parsed[0], &parsed[2]) <= 1e-9);
    }

    #[test]
    fn comments_and_blank_lines_are_inert(b in block(), every in 1usize..4) {
        let text = write_touchstone(&b, DataFormat::MA).unwrap();
        let mut noisy = String::new();
        for (i, line) in text.lines().enumerate() {
            if i % every == 0 {
                noisy.push_str("! a comment line\n\n   \n");
            }
            noisy.push_str(line);
            if i > 1 {
                noisy.push_str("   ! trailing remark");
            }
            noisy.push('\n');
        }
        let clean = parse_touchstone(&text, b.n_ports()).unwrap();
        let dirty = parse_touchstone(&noisy, b.n_ports()).unwrap();
        prop_assert_eq!(clean, dirty);
    }
}

#[test]
fn fixed_parse_examples() {
    let s = parse_touchstone("# HZ S RI R 50\n1e9 0.25 -0.5\n", 1).unwrap();
    assert_eq!(s.grid().points(), &[1e9]);
    assert_eq!(s.matrices()[0].get(0, 0), Complex64::new(0.25, -0.5));

    let s = parse_touchstone("# GHZ S MA R 50\n1.0 0.5 90.0\n", 1).unwrap();
    assert_eq!(s.grid().points(), &[1e9]);
    assert!((s.matrices()[0].get(0, 0) - Complex64::new(0.0, 0.5)).norm() <= 1e-12);

    let s = parse_touchstone("# GHZ S DB R 50\n1.0 -6.0206 180\n", 1).unwrap();
    assert!((s.matrices()[0].get(0, 0) - Complex64::new(-0.5, 0.0)).norm() <= 1e-4);
}

#[test]
fn file_antenna_matches_rlc() {
    let grid = FrequencyGrid::new(1e9, 3e9, 201, Spacing::Linear).unwrap();
    let rlc = antenna(&AntennaModel::default_rlc(), &grid).unwrap();
    let text = write_touchstone(&rlc, DataFormat::RI).unwrap();
    let file = AntennaModel::File(parse_touchstone(&text, 1).unwrap());
    let from_file = antenna(&file, &grid).unwrap();
    assert!(max_abs_diff(&from_file, &rlc) <= 1e-9);
}
