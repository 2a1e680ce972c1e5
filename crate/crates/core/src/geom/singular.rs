use super::tensor::TensorProduct;
use crate::cset::{CubeModel, CubicalMap, CubicalSet};
use crate::cube::{self, BoxMorphism, Generator};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::simplicial::{enumerate_simplicial_maps, PosetNerve, SimplicialMap, SimplicialSet};
use std::collections::HashMap;

/// Nerve of `[1]^n` with its chains, for reindexing.
struct CubeNerve {
    set: SimplicialSet,
    chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl CubeNerve {
    fn new(n: usize, d: usize, cfg: &Config) -> Result<Self> {
        let leq = |a: usize, b: usize| a & !b == 0;
        let (set, chains) = SimplicialSet::build(&PosetNerve { size: 1 << n, leq: &leq, names: None }, d, cfg)?;
        let index = chains
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect())
            .collect();
        Ok(CubeNerve { set, chains, index })
    }
}

struct SingularModel<'a> {
    s: &'a SimplicialSet,
    nerves: Vec<CubeNerve>,
    cfg: Config,
}

impl SingularModel<'_> {
    fn pull(&self, n: usize, f: &SimplicialMap, g: Generator) -> SimplicialMap {
        let src = g.source_dim(n).unwrap();
        let gm = BoxMorphism::generator(g, src).unwrap();
        let (from, to) = (&self.nerves[src], &self.nerves[n]);
        SimplicialMap {
            images: from
                .chains
                .iter()
                .enumerate()
                .map(|(k, cs)| {
                    cs.iter()
                        .map(|c| {
                            let img: Vec<u32> = c.iter().map(|&v| gm.apply(v)).collect();
                            f.at(k, to.index[k][&img])
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl CubeModel for SingularModel<'_> {
    type Cube = SimplicialMap;

    fn cubes(&self, n: usize) -> Result<Vec<SimplicialMap>> {
        enumerate_simplicial_maps(&self.nerves[n].set, self.s, &self.cfg)
    }

    fn face(&self, n: usize, f: &SimplicialMap, i: usize, eps: u8) -> SimplicialMap {
        self.pull(n, f, cube::face(i, eps))
    }

    fn degen(&self, n: usize, f: &SimplicialMap, i: usize) -> SimplicialMap {
        self.pull(n, f, cube::degen(i))
    }

    fn conn(&self, n: usize, f: &SimplicialMap, i: usize, eps: u8) -> SimplicialMap {
        self.pull(n, f, cube::conn(i, eps))
    }
}

/// The right adjoint of triangulation: `(U S)_n = sSet((Δ¹)^n, S)`, truncated
/// at `d`.
pub struct SingularCubes {
    pub set: CubicalSet,
    pub maps: Vec<Vec<SimplicialMap>>,
    index: Vec<HashMap<SimplicialMap, u32>>,
    nerves: Vec<CubeNerve>,
}

pub fn singular_cubes(s: &SimplicialSet, d: usize, cfg: &Config) -> Result<SingularCubes> {
    let mut nerves = Vec::new();
    for n in 0..=d + 1 {
        nerves.push(CubeNerve::new(n, s.max_dim(), cfg)?);
    }
    let model = SingularModel { s, nerves, cfg: *cfg };
    let (set, maps) = CubicalSet::build(&model, d, cfg)?;
    let index = maps
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect())
        .collect();
    Ok(SingularCubes {
        set,
        maps,
        index,
        nerves: model.nerves,
    })
}

/// The comparison `α: UA ⊗ UB → U(A × B)`, `(a, b) ↦ a × b`.
pub fn monoidal_comparison(
    ua: &SingularCubes,
    ub: &SingularCubes,
    uaub: &TensorProduct,
    ab: &SimplicialSet,
    ab_simplices: &[Vec<(u32, u32)>],
    uab: &SingularCubes,
) -> Result<CubicalMap> {
    let pair_index: Vec<HashMap<(u32, u32), u32>> = ab_simplices
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect())
        .collect();
    let mut images = Vec::new();
    for k in 0..=uaub.set.max_dim() {
        let mut row = Vec::new();
        for c in &uaub.cubes[k] {
            let m = c.m as usize;
            let n = k - m;
            let a = &ua.maps[m][c.x as usize];
            let b = &ub.maps[n][c.y as usize];
            let nk = &uab.nerves[k];
            let mask = (1u32 << m) - 1;
            let mut img = Vec::new();
            for (dim, cs) in nk.chains.iter().enumerate() {
                let mut r = Vec::with_capacity(cs.len());
                for ch in cs {
                    let lo: Vec<u32> = ch.iter().map(|&v| v & mask).collect();
                    let hi: Vec<u32> = ch.iter().map(|&v| v >> m).collect();
                    let sa = a.at(dim, ua.nerves[m].index[dim][&lo]);
                    let sb = b.at(dim, ub.nerves[n].index[dim][&hi]);
                    match pair_index[dim].get(&(sa, sb)) {
                        Some(&p) => r.push(p),
                        None => return domain("product simplex missing"),
                    }
                }
                img.push(r);
            }
            let f = SimplicialMap { images: img };
            if f.check_natural(&nk.set, ab).is_err() {
                return domain("a × b is not simplicial");
            }
            match uab.index[k].get(&f) {
                Some(&i) => row.push(i),
                None => return domain("a × b is not a cube of U(A × B)"),
            }
        }
        images.push(row);
    }
    Ok(CubicalMap { images })
}

