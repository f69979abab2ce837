//! Multiport network reduction.
//!
//! A bond between two ports forces the wave incident on one to equal the wave
//! leaving the other. Partitioning all component ports into external (`e`)
//! and bonded internal (`i`) sets, with `P` the exchange permutation of the
//! bonded pairs,
//!
//! ```text
//! S_ext = S_ee + S_ei · P · (I − S_ii · P)⁻¹ · S_ie
//! ```
//!
//! [`oracle_solve`] solves the full wave system over every port instead and
//! serves as an independent check of [`reduce`].

mod circuit;
mod lu;

pub use circuit::Circuit;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netcore::{NetworkBlock, ScatteringMatrix};
use lu::Lu;

/// Interconnections whose condition estimate exceeds this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// S-matrix seen at the circuit's external ports, in declaration order.
pub fn reduce(c: &Circuit) -> Result<NetworkBlock> {
    let n_ext = c.external_ports().len();
    if n_ext == 0 {
        return Err(Error::Assembly("reduction needs at least one external port".into()));
    }
    let plan = Plan::new(c);
    let grid = c.grid();
    let matrices = (0..grid.len())
        .into_par_iter()
        .map(|k| plan.reduce_at(c, k))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let labels = c.external_ports().iter().map(|(n, _)| n.clone()).collect();
    NetworkBlock::new("reduced", grid.clone(), matrices, labels)
}

/// Reduction at a single frequency index.
pub fn reduce_at(c: &Circuit, k: usize) -> Result<ScatteringMatrix> {
    Plan::new(c).reduce_at(c, k)
}

#[derive(Clone, Copy)]
enum Role {
    /// Position among the bonded ports.
    Internal(usize),
    /// Position among the external ports.
    External(usize),
}

/// Frequency-independent bookkeeping: which local ports of each block are
/// bonded or external, and where each bonded port's partner sits.
struct Plan {
    n_ext: usize,
    n_int: usize,
    partner_pos: Vec<usize>,
    // per block: (local port, role)
    members: Vec<Vec<(usize, Role)>>,
}

impl Plan {
    fn new(c: &Circuit) -> Plan {
        let total = c.total_ports();
        let mut role = vec![None; total];
        let mut n_int = 0;
        for (g, r) in role.iter_mut().enumerate() {
            if c.partner(g).is_some() {
                *r = Some(Role::Internal(n_int));
                n_int += 1;
            }
        }
        for (j, &g) in c.external_globals().iter().enumerate() {
            role[g] = Some(Role::External(j));
        }
        let mut partner_pos = vec![0; n_int];
        let mut members = vec![Vec::new(); c.blocks().len()];
        for g in 0..total {
            let (b, local) = c.owner(g);
            let r = role[g].expect("assembled circuits have no dangling ports");
            if let Role::Internal(i) = r {
                let Some(Role::Internal(j)) = role[c.partner(g).expect("bonded")] else {
                    unreachable!("partners are bonded ports")
                };
                partner_pos[i] = j;
            }
            members[b].push((local, r));
        }
        Plan {
            n_ext: c.external_globals().len(),
            n_int,
            partner_pos,
            members,
        }
    }

    fn reduce_at(&self, c: &Circuit, k: usize) -> Result<ScatteringMatrix> {
        let freq = c.grid().points()[k];
        let (n_ext, n_int) = (self.n_ext, self.n_int);
        let zero = Complex64::new(0.0, 0.0);

        // A = I − S_ii·P, where (S_ii·P)[r][partner(s)] = S_ii[r][s]; S_ee, S_ie
        // and S_ei only couple ports of the same block
        let mut out = vec![zero; n_ext * n_ext];
        let mut a = vec![zero; n_int * n_int];
        for i in 0..n_int {
            a[i * n_int + i] = Complex64::new(1.0, 0.0);
        }
        let mut s_ie = vec![zero; n_int * n_ext];
        let mut s_ei = vec![zero; n_ext * n_int];
        for (b, members) in self.members.iter().enumerate() {
            let m = &c.blocks()[b].matrices()[k];
            for &(pr, rr) in members {
                for &(pc, rc) in members {
                    let v = m.get(pr, pc);
                    if v == zero {
                        continue;
                    }
                    match (rr, rc) {
                        (Role::Internal(r), Role::Internal(s)) => {
                            a[r * n_int + self.partner_pos[s]] -= v
                        }
                        (Role::Internal(r), Role::External(j)) => s_ie[r * n_ext + j] = v,
                        (Role::External(i), Role::Internal(q)) => s_ei[i * n_int + q] = v,
                        (Role::External(i), Role::External(j)) => out[i * n_ext + j] = v,
                    }
                }
            }
        }
        if n_int == 0 {
            return ScatteringMatrix::from_rows(n_ext, out);
        }

        let a_norm = lu::norm1(&a, n_int);
        let lu = Lu::factor(a, n_int).ok_or(Error::IllPosed {
            freq_hz: freq,
            cond: f64::INFINITY,
        })?;
        let cond = a_norm * lu.inverse_norm1_estimate();
        if cond.is_nan() || cond > MAX_CONDITION {
            return Err(Error::IllPosed { freq_hz: freq, cond });
        }

        // X = A⁻¹·S_ie, then S_ext += S_ei·P·X
        let mut x = vec![zero; n_int];
        for j in 0..n_ext {
            for (r, xr) in x.iter_mut().enumerate() {
                *xr = s_ie[r * n_ext + j];
            }
            if x.iter().all(|&v| v == zero) {
                continue;
            }
            lu.solve(&mut x);
            for i in 0..n_ext {
                let mut acc = zero;
                for q in 0..n_int {
                    let s = s_ei[i * n_int + q];
                    if s != zero {
                        acc += s * x[self.partner_pos[q]];
                    }
                }
                out[i * n_ext + j] += acc;
            }
        }
        ScatteringMatrix::from_rows(n_ext, out)
    }
}

/// Outgoing waves at every external port, per frequency, for a unit wave
/// incident on external port `excitation` (0-based) and nothing elsewhere.
///
/// Solves `(I − S·Q)·b = S·e` over all ports at once, where `Q` routes each
/// bonded port's outgoing wave to its partner's incident wave.
pub fn oracle_solve(c: &Circuit, excitation: usize) -> Result<Vec<Vec<Complex64>>> {
    let ext = c.external_globals();
    if excitation >= ext.len() {
        return Err(Error::MissingPort(format!("#{excitation}")));
    }
    let n = c.total_ports();
    let mut q = DMatrix::<Complex64>::zeros(n, n);
    for g in 0..n {
        if let Some(p) = c.partner(g) {
            q[(g, p)] = Complex64::new(1.0, 0.0);
        }
    }
    let mut e = DVector::<Complex64>::zeros(n);
    e[ext[excitation]] = Complex64::new(1.0, 0.0);

    c.grid()
        .points()
        .iter()
        .enumerate()
        .map(|(k, &freq)| {
            let s = DMatrix::from_fn(n, n, |r, col| c.s_global(k, r, col));
            let system = DMatrix::<Complex64>::identity(n, n) - &s * &q;
            let rhs = &s * &e;
            let b = system
                .full_piv_lu()
                .solve(&rhs)
                .ok_or(Error::Singular { freq_hz: freq })?;
            Ok(ext.iter().map(|&g| b[g]).collect())
        })
        .collect()
}

/// Assembles the full external S-matrix column by column from [`oracle_solve`].
pub fn oracle_reduce(c: &Circuit) -> Result<NetworkBlock> {
    let n_ext = c.external_ports().len();
    let columns = (0..n_ext)
        .map(|j| oracle_solve(c, j))
        .collect::<Result<Vec<_>>>()?;
    let matrices = (0..c.grid().len())
        .map(|k| {
            let mut entries = vec![Complex64::new(0.0, 0.0); n_ext * n_ext];
            for (j, col) in columns.iter().enumerate() {
                for i in 0..n_ext {
                    entries[i * n_ext + j] = col[k][i];
                }
            }
            ScatteringMatrix::from_rows(n_ext, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = c.external_ports().iter().map(|(n, _)| n.clone()).collect();
    NetworkBlock::new("oracle", c.grid().clone(), matrices, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::*;
    use crate::netcore::{FrequencyGrid, PortRef, Spacing};

    fn grid() -> FrequencyGrid {
        FrequencyGrid::new(1e9, 3e9, 11, Spacing::Linear).unwrap()
    }

    fn p(b: &str, n: usize) -> PortRef {
        PortRef::new(b, n)
    }

    #[test]
    fn matched_load_absorbs() {
        let g = grid();
        let c = Circuit::assemble(vec![match_load(&g).unwrap()], vec![], vec![("x".into(), p("load", 1))]).unwrap();
        for col in oracle_solve(&c, 0).unwrap() {
            assert_eq!(col[0], Complex64::new(0.0, 0.0));
        }
        assert_eq!(reduce(&c).unwrap().trace(1, 1)[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_cable_identity() {
        let g = grid();
        let cab = cable(&CableSpec { length_m: 0.37, velocity_factor: 0.7, loss_db_per_m_at_1ghz: 0.3 }, &g).unwrap();
        let s21 = cab.trace(2, 1);
        let c = Circuit::assemble(vec![cab], vec![], vec![("a".into(), p("cable", 1)), ("b".into(), p("cable", 2))]).unwrap();
        let out = oracle_solve(&c, 0).unwrap();
        for (k, col) in out.iter().enumerate() {
            assert!((col[1] - s21[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn cable_into_load_is_matched() {
        let g = grid();
        let c = Circuit::assemble(
            vec![cable(&CableSpec::lossless(0.2, 0.66), &g).unwrap(), match_load(&g).unwrap()],
            vec![(p("cable", 2), p("load", 1))],
            vec![("in".into(), p("cable", 1))],
        )
        .unwrap();
        for s in reduce(&c).unwrap().trace(1, 1) {
            assert_eq!(s, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn circulator_oracle_reproduces_columns() {
        let g = grid();
        let gamma = Complex64::new(0.07, -0.03);
        let circ = circulator(gamma, &g).unwrap();
        let c = Circuit::assemble(
            vec![circ.clone()],
            vec![],
            (1..=3).map(|i| (format!("p{i}"), p("circulator", i))).collect(),
        )
        .unwrap();
        for j in 0..3 {
            let cols = oracle_solve(&c, j).unwrap();
            for (k, col) in cols.iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    assert!((v - circ.matrices()[k].get(i, j)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn cascaded_cables_match_single() {
        let g = grid();
        let spec = |l| CableSpec { length_m: l, velocity_factor: 0.8, loss_db_per_m_at_1ghz: 0.2 };
        let c = Circuit::assemble(
            vec![
                cable(&spec(0.1), &g).unwrap().renamed("a"),
                cable(&spec(0.25), &g).unwrap().renamed("b"),
            ],
            vec![(p("a", 2), p("b", 1))],
            vec![("in".into(), p("a", 1)), ("out".into(), p("b", 2))],
        )
        .unwrap();
        let r = reduce(&c).unwrap();
        let single = cable(&spec(0.35), &g).unwrap();
        for (x, y) in r.trace(2, 1).iter().zip(single.trace(2, 1)) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn lossless_resonance_is_ill_posed() {
        // two total reflections facing each other through a lossless line
        // whose round trip is exactly 360° at 1 GHz
        let g = FrequencyGrid::new(1e9, 1e9, 1, Spacing::Linear).unwrap();
        let short = |name: &str| {
            NetworkBlock::from_fn(name, &g, 1, |_| vec![Complex64::new(-1.0, 0.0)]).unwrap()
        };
        let half_wave = 0.5 * crate::netcore::C0 / 1e9;
        let c = Circuit::assemble(
            vec![
                cable(&CableSpec::lossless(half_wave, 1.0), &g).unwrap(),
                short("s1"),
                short("s2"),
                match_load(&g).unwrap(),
            ],
            vec![(p("cable", 1), p("s1", 1)), (p("cable", 2), p("s2", 1))],
            vec![("x".into(), p("load", 1))],
        )
        .unwrap();
        match reduce(&c) {
            Err(Error::IllPosed { freq_hz, .. }) => assert_eq!(freq_hz, 1e9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn no_external_ports_rejected() {
        let g = grid();
        let c = Circuit::assemble(
            vec![match_load(&g).unwrap().renamed("a"), match_load(&g).unwrap().renamed("b")],
            vec![(p("a", 1), p("b", 1))],
            vec![],
        )
        .unwrap();
        assert!(reduce(&c).is_err());
    }
}
