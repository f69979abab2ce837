use std::collections::{HashMap, HashSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netcore::{FrequencyGrid, NetworkBlock, PortRef, Z_REF};

/// Validated interconnection of blocks.
///
/// Ports are numbered globally in block declaration order, ascending port
/// number within each block.
#[derive(Debug, Clone)]
pub struct Circuit {
    blocks: Vec<NetworkBlock>,
    connections: Vec<(PortRef, PortRef)>,
    external: Vec<(String, PortRef)>,
    // per global port: owning block and 0-based local port
    owner: Vec<(usize, usize)>,
    // per global port: global index of the port it is bonded to
    partner: Vec<Option<usize>>,
    ext_global: Vec<usize>,
}

impl Circuit {
    pub fn assemble(
        blocks: Vec<NetworkBlock>,
        connections: Vec<(PortRef, PortRef)>,
        external_ports: Vec<(String, PortRef)>,
    ) -> Result<Circuit> {
        if blocks.is_empty() {
            return Err(Error::Assembly("circuit has no blocks".into()));
        }
        let grid = blocks[0].grid().clone();
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut owner = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            if index.insert(b.name(), bi).is_some() {
                return Err(Error::Assembly(format!("duplicate block name `{}`", b.name())));
            }
            if !b.grid().same_points(&grid) {
                return Err(Error::GridMismatch(b.name().to_string()));
            }
            if b.z_ref() != Z_REF {
                return Err(Error::ReferenceImpedance {
                    block: b.name().to_string(),
                    z_ref: b.z_ref(),
                });
            }
            offsets.push(owner.len());
            owner.extend((0..b.n_ports()).map(|p| (bi, p)));
        }

        let resolve = |r: &PortRef| -> Result<usize> {
            let &bi = index
                .get(r.block.as_str())
                .ok_or_else(|| Error::UnknownPort(r.to_string()))?;
            if r.port == 0 || r.port > blocks[bi].n_ports() {
                return Err(Error::UnknownPort(r.to_string()));
            }
            Ok(offsets[bi] + r.port - 1)
        };

        let total = owner.len();
        let mut used = vec![false; total];
        let mut partner = vec![None; total];
        let claim = |g: usize, r: &PortRef, used: &mut Vec<bool>| -> Result<()> {
            if used[g] {
                return Err(Error::DuplicatePort(r.to_string()));
            }
            used[g] = true;
            Ok(())
        };
        for (a, b) in &connections {
            let (ga, gb) = (resolve(a)?, resolve(b)?);
            if ga == gb {
                return Err(Error::DuplicatePort(a.to_string()));
            }
            claim(ga, a, &mut used)?;
            claim(gb, b, &mut used)?;
            partner[ga] = Some(gb);
            partner[gb] = Some(ga);
        }
        let mut names = HashSet::new();
        let mut ext_global = Vec::with_capacity(external_ports.len());
        for (name, r) in &external_ports {
            if !names.insert(name.as_str()) {
                return Err(Error::Assembly(format!("duplicate external port name `{name}`")));
            }
            let g = resolve(r)?;
            claim(g, r, &mut used)?;
            ext_global.push(g);
        }
        if let Some(g) = used.iter().position(|u| !u) {
            let (bi, p) = owner[g];
            return Err(Error::DanglingPort(format!("{}.{}", blocks[bi].name(), p + 1)));
        }

        Ok(Circuit {
            blocks,
            connections,
            external: external_ports,
            owner,
            partner,
            ext_global,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        self.blocks[0].grid()
    }

    pub fn blocks(&self) -> &[NetworkBlock] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&NetworkBlock> {
        self.blocks.iter().find(|b| b.name() == name)
    }

    pub fn connections(&self) -> &[(PortRef, PortRef)] {
        &self.connections
    }

    pub fn external_ports(&self) -> &[(String, PortRef)] {
        &self.external
    }

    pub fn external_index(&self, name: &str) -> Option<usize> {
        self.external.iter().position(|(n, _)| n == name)
    }

    pub fn total_ports(&self) -> usize {
        self.owner.len()
    }

    pub(crate) fn external_globals(&self) -> &[usize] {
        &self.ext_global
    }

    /// Owning block and 0-based local port of global port `g`.
    pub(crate) fn owner(&self, g: usize) -> (usize, usize) {
        self.owner[g]
    }

    pub(crate) fn partner(&self, g: usize) -> Option<usize> {
        self.partner[g]
    }

    /// Entry of the block-diagonal global S matrix at frequency index `k`.
    #[inline]
    pub(crate) fn s_global(&self, k: usize, row: usize, col: usize) -> Complex64 {
        let (br, pr) = self.owner[row];
        let (bc, pc) = self.owner[col];
        if br != bc {
            return Complex64::new(0.0, 0.0);
        }
        self.blocks[br].matrices()[k].get(pr, pc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::{cable, match_load, CableSpec};
    use crate::netcore::Spacing;

    fn grid() -> FrequencyGrid {
        FrequencyGrid::new(1e9, 2e9, 3, Spacing::Linear).unwrap()
    }

    fn p(b: &str, n: usize) -> PortRef {
        PortRef::new(b, n)
    }

    #[test]
    fn closed_pair_is_valid() {
        let g = grid();
        let c = Circuit::assemble(
            vec![match_load(&g).unwrap().renamed("a"), match_load(&g).unwrap().renamed("b")],
            vec![(p("a", 1), p("b", 1))],
            vec![],
        )
        .unwrap();
        assert_eq!(c.external_ports().len(), 0);
    }

    #[test]
    fn pass_through() {
        let g = grid();
        let c = Circuit::assemble(
            vec![cable(&CableSpec::lossless(0.1, 0.7), &g).unwrap()],
            vec![],
            vec![("in".into(), p("cable", 1)), ("out".into(), p("cable", 2))],
        )
        .unwrap();
        assert_eq!(c.total_ports(), 2);
    }

    #[test]
    fn rejects_bad_wiring() {
        let g = grid();
        let blocks = || {
            vec![
                cable(&CableSpec::lossless(0.1, 0.7), &g).unwrap(),
                match_load(&g).unwrap(),
                match_load(&g).unwrap().renamed("load2"),
            ]
        };
        let twice = Circuit::assemble(
            blocks(),
            vec![(p("cable", 2), p("load", 1)), (p("cable", 2), p("load2", 1))],
            vec![("in".into(), p("cable", 1))],
        );
        assert!(matches!(twice, Err(Error::DuplicatePort(_))));

        let dangling = Circuit::assemble(
            blocks(),
            vec![(p("cable", 2), p("load", 1))],
            vec![("in".into(), p("cable", 1))],
        );
        match dangling {
            Err(Error::DanglingPort(name)) => assert_eq!(name, "load2.1"),
            other => panic!("{other:?}"),
        }

        let unknown = Circuit::assemble(
            blocks(),
            vec![(p("cable", 3), p("load", 1))],
            vec![],
        );
        assert!(matches!(unknown, Err(Error::UnknownPort(_))));

        let conn_and_ext = Circuit::assemble(
            blocks(),
            vec![(p("cable", 2), p("load", 1)), (p("cable", 1), p("load2", 1))],
            vec![("x".into(), p("load", 1))],
        );
        assert!(matches!(conn_and_ext, Err(Error::DuplicatePort(_))));
    }

    #[test]
    fn rejects_grid_mismatch() {
        let g = grid();
        let other = FrequencyGrid::new(1e9, 2e9, 4, Spacing::Linear).unwrap();
        let r = Circuit::assemble(
            vec![match_load(&g).unwrap(), match_load(&other).unwrap().renamed("x")],
            vec![(p("load", 1), p("x", 1))],
            vec![],
        );
        assert!(matches!(r, Err(Error::GridMismatch(_))));
    }
}
