#![allow(dead_code)]

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rfsic::analysis::ScenarioParams;
use rfsic::components::{splitter, AntennaModel, CableSpec, HybridMode, SplitterParams};
use rfsic::netcore::{FrequencyGrid, NetworkBlock, PortRef, ScatteringMatrix, Spacing};
use rfsic::solver::Circuit;

pub fn band_grid(n: usize) -> FrequencyGrid {
    FrequencyGrid::new(1e9, 3e9, n, Spacing::Linear).unwrap()
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random strictly passive `n × n` matrix, symmetric when `reciprocal`.
pub fn random_passive(rng: &mut ChaCha8Rng, n: usize, reciprocal: bool) -> ScatteringMatrix {
    let mut e: Vec<Complex64> = (0..n * n).map(|_| random_complex(rng)).collect();
    if reciprocal {
        for r in 0..n {
            for c in 0..r {
                e[r * n + c] = e[c * n + r];
            }
        }
    }
    let m = ScatteringMatrix::from_rows(n, e.clone()).unwrap();
    let scale = rng.random_range(0.3..0.95) / m.max_singular_value();
    ScatteringMatrix::from_rows(n, e.into_iter().map(|v| v * scale).collect()).unwrap()
}

/// 2–5 blocks of 1–4 ports with random passive data; a random subset of
/// ports (at least one) is external and the rest are bonded in random pairs.
pub fn random_circuit(rng: &mut ChaCha8Rng, grid: &FrequencyGrid, reciprocal: bool) -> Circuit {
    let n_blocks = rng.random_range(2..=5);
    let mut blocks = Vec::new();
    let mut ports = Vec::new();
    for b in 0..n_blocks {
        let n = rng.random_range(1..=4);
        let mats = (0..grid.len()).map(|_| random_passive(rng, n, reciprocal)).collect();
        let name = format!("B{b}");
        blocks.push(NetworkBlock::numbered(name.clone(), grid.clone(), mats).unwrap());
        ports.extend((1..=n).map(|p| PortRef::new(name.clone(), p)));
    }
    ports.shuffle(rng);
    let total = ports.len();
    let mut n_ext = rng.random_range(1..=total.min(5));
    if (total - n_ext) % 2 == 1 {
        n_ext += 1;
    }
    let external = ports[..n_ext]
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("P{i}"), p.clone()))
        .collect();
    let connections = ports[n_ext..]
        .chunks(2)
        .map(|pair| (pair[0].clone(), pair[1].clone()))
        .collect();
    Circuit::assemble(blocks, connections, external).unwrap()
}

/// Ideal-preset parameters with random antenna, splitters, hybrid and arms;
/// both arms identical and the twins identical.
pub fn random_symmetric_params(rng: &mut ChaCha8Rng) -> ScenarioParams {
    let mut p = ScenarioParams::ideal();
    p.antenna = AntennaModel::Rlc {
        r: rng.random_range(5.0..200.0),
        l: rng.random_range(0.5e-9..10e-9),
        c: rng.random_range(0.5e-12..10e-12),
    };
    // redraw until passive: leakage needs some excess loss to stay passive
    let probe = FrequencyGrid::new(1e9, 1e9, 1, Spacing::Linear).unwrap();
    loop {
        p.splitter = SplitterParams {
            excess_loss_db: rng.random_range(0.0..3.0),
            isolation_db: if rng.random_bool(0.2) {
                f64::INFINITY
            } else {
                rng.random_range(15.0..40.0)
            },
            amp_imbalance_db: 0.0,
            phase_imbalance_deg: 0.0,
            thru_phase_deg: rng.random_range(-180.0..180.0),
        };
        if splitter(&p.splitter, &probe).is_ok() {
            break;
        }
    }
    p.hybrid.mode = if rng.random_bool(0.5) {
        HybridMode::PaperIdeal
    } else {
        HybridMode::Physical
    };
    p.hybrid.excess_loss_db = rng.random_range(0.0..2.0);
    let arm = CableSpec {
        length_m: rng.random_range(0.0..1.0),
        velocity_factor: rng.random_range(0.5..1.0),
        loss_db_per_m_at_1ghz: rng.random_range(0.0..1.0),
    };
    p.arm_a = arm;
    p.arm_b = arm;
    p
}

/// Largest entrywise difference between two blocks, relative to the
/// largest entry magnitude of `b` in the same column.
pub fn max_rel_column_error(a: &NetworkBlock, b: &NetworkBlock) -> f64 {
    let n = a.n_ports();
    let mut worst: f64 = 0.0;
    for (ma, mb) in a.matrices().iter().zip(b.matrices()) {
        for c in 0..n {
            let scale = (0..n).map(|r| mb.get(r, c).norm()).fold(f64::MIN_POSITIVE, f64::max);
            for r in 0..n {
                worst = worst.max((ma.get(r, c) - mb.get(r, c)).norm() / scale);
            }
        }
    }
    worst
}
