use super::chains::{cone_iso_low, ChainComplex, ChainMap, HomologyGroup};
use super::sparse::SparseMatrix;
use crate::cset::{CubicalMap, CubicalSet};
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Config};
use crate::report::Verdict;

/// Chains on cubes that are neither degeneracies nor connections, with
/// `∂x = Σ_i (-1)^i (x∂_{i,0} − x∂_{i,1})`.
///
/// Columns of the top differential are deduplicated up to sign, which keeps
/// homology below the top degree. Nothing is triangulated, so this scales to
/// sets whose triangulation would not fit the cell cap.
pub fn cubical_chains(x: &CubicalSet, top: usize, cfg: &Config) -> Result<ChainComplex> {
    if top > x.max_dim() {
        return Err(Error::Truncation(format!(
            "chains through degree {top} need cubes of dimension {top}, truncation is {}",
            x.max_dim()
        )));
    }
    let basis: Vec<Vec<u32>> = (0..=top).map(|k| x.nondegenerate(k)).collect();
    let position: Vec<Vec<u32>> = (0..=top)
        .map(|k| {
            let mut p = vec![u32::MAX; x.count(k)];
            for (i, &c) in basis[k].iter().enumerate() {
                p[c as usize] = i as u32;
            }
            p
        })
        .collect();
    let mut boundaries = vec![SparseMatrix::new(0)];
    for k in 1..=top {
        let position = &position[k - 1];
        let mut cols: Vec<Vec<(u32, i64)>> = map_ordered(cfg.exec, &basis[k], |&c| {
            let mut col: Vec<(u32, i64)> = Vec::with_capacity(2 * k);
            for i in 1..=k {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for eps in 0..2u8 {
                    let p = position[x.face(k, c, i, eps) as usize];
                    if p != u32::MAX {
                        col.push((p, if eps == 0 { sign } else { -sign }));
                    }
                }
            }
            merge(col, k == top)
        });
        if k == top {
            cols.sort_unstable();
            cols.dedup();
            cols.retain(|c| !c.is_empty());
        }
        let mut m = SparseMatrix::new(basis[k - 1].len());
        m.cols = cols;
        boundaries.push(m);
    }
    Ok(ChainComplex {
        ranks: basis.iter().map(Vec::len).collect(),
        boundaries,
        basis,
        position,
    })
}

/// Sorted and merged; with `positive`, the leading coefficient is made
/// positive.
fn merge(mut col: Vec<(u32, i64)>, positive: bool) -> Vec<(u32, i64)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    if positive && out.first().is_some_and(|e| e.1 < 0) {
        for e in &mut out {
            e.1 = -e.1;
        }
    }
    out
}

/// `H_0 … H_{up_to}` from [`cubical_chains`].
pub fn cubical_homology_direct(x: &CubicalSet, up_to: usize, cfg: &Config) -> Result<Vec<HomologyGroup>> {
    Ok(cubical_chains(x, up_to + 1, cfg)?.homology())
}

impl ChainMap {
    /// A cubical map on normalized cubical chains.
    pub fn of_cubical(f: &CubicalMap, a: &ChainComplex, b: &ChainComplex) -> Self {
        let top = a.top().min(b.top()).min(f.max_dim());
        let matrices = (0..=top)
            .map(|k| {
                let mut m = SparseMatrix::new(b.ranks[k]);
                for &x in &a.basis[k] {
                    let p = b.position[k][f.at(k, x) as usize];
                    m.push_col(if p == u32::MAX { Vec::new() } else { vec![(p, 1)] });
                }
                m
            })
            .collect();
        ChainMap { matrices }
    }
}

/// Whether a cubical map induces isomorphisms on `H_0` and `H_1`, decided
/// on normalized cubical chains.
pub fn cubical_iso_low(a: &CubicalSet, b: &CubicalSet, f: &CubicalMap, cfg: &Config) -> Result<Verdict> {
    if a.max_dim() < 2 || b.max_dim() < 2 || f.max_dim() < 2 {
        return Err(Error::Truncation("H_1 comparison needs truncation 2".into()));
    }
    let ca = cubical_chains(a, 2, cfg)?;
    let cb = cubical_chains(b, 2, cfg)?;
    let fm = ChainMap::of_cubical(f, &ca, &cb);
    Ok(cone_iso_low(&ca, &cb, &fm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cset::{standard_cell, CellKind};
    use crate::geom::triangulate_with;
    use crate::graphs::{graph_nerve, nerve_map, Graph};
    use crate::homology::{cubical_homology, induced_iso_low};

    fn corpus(cfg: &Config) -> Vec<CubicalSet> {
        let mut v = Vec::new();
        for n in 1..=3 {
            v.push(standard_cell(CellKind::Cube, n, 3, cfg).unwrap().set);
            v.push(standard_cell(CellKind::Boundary, n, 3, cfg).unwrap().set);
        }
        v.push(standard_cell(CellKind::OpenBox { i: 2, eps: 1 }, 3, 3, cfg).unwrap().set);
        for g in ["I0", "I2", "C3", "C4", "C5", "K2"] {
            v.push(graph_nerve(&Graph::builtin(g).unwrap(), 1, 3, cfg).unwrap().set);
        }
        v
    }

    #[test]
    fn boundary_squares_to_zero() {
        let cfg = Config::default();
        for x in corpus(&cfg) {
            let c = cubical_chains(&x, 3, &cfg).unwrap();
            assert!(c.boundary_squares_to_zero());
        }
    }

    #[test]
    fn agrees_with_triangulation() {
        let cfg = Config::default();
        for x in corpus(&cfg) {
            assert_eq!(cubical_homology_direct(&x, 2, &cfg).unwrap(), cubical_homology(&x, 2, &cfg).unwrap());
        }
    }

    #[test]
    fn induced_maps_agree_with_triangulation() {
        let cfg = Config::default();
        let g = |s: &str| Graph::builtin(s).unwrap();
        let cases: Vec<(Graph, Graph, Vec<u32>)> = vec![
            (g("I0"), g("C5"), vec![0]),
            (g("I0"), g("C4"), vec![2]),
            (g("C5"), g("I0"), vec![0; 5]),
            (g("C5"), g("C5"), vec![1, 2, 3, 4, 0]),
            (g("C5"), g("C5"), vec![0, 1, 1, 0, 0]),
            (g("I2"), g("C5"), vec![0, 1, 2]),
        ];
        for (x, y, f) in cases {
            let (nx, ny) = (graph_nerve(&x, 1, 2, &cfg).unwrap(), graph_nerve(&y, 1, 2, &cfg).unwrap());
            let nf = nerve_map(&nx, &ny, &f).unwrap();
            let direct = cubical_iso_low(&nx.set, &ny.set, &nf, &cfg).unwrap();
            let (tx, ty) = (triangulate_with(&nx.set, 2, &cfg).unwrap(), triangulate_with(&ny.set, 2, &cfg).unwrap());
            let tri = induced_iso_low(&tx.set, &ty.set, &tx.induced(&nf, &ty, &ny.set)).unwrap();
            assert_eq!(direct.is_pass(), tri.is_pass(), "{f:?}: {direct} vs {tri}");
        }
    }

    #[test]
    fn dedup_keeps_low_homology() {
        let cfg = Config::default();
        let x = graph_nerve(&Graph::builtin("C5").unwrap(), 1, 2, &cfg).unwrap().set;
        let c = cubical_chains(&x, 2, &cfg).unwrap();
        assert!(c.boundaries[2].cols.len() < c.ranks[2]);
        assert_eq!(c.homology()[1].group_string(), "Z");
    }
}
