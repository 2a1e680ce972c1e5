use super::{graph_maps, map_name, Graph};
use crate::cset::{CubeModel, CubicalMap, CubicalSet};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::homology::{cubical_homology, HomologyGroup};

/// The grid `I_m^{□k}`; the vertex `(u₁, …, u_k)` has index `Σ u_i (m+1)^{i-1}`.
pub fn grid(m: usize, k: usize) -> Graph {
    let side = m + 1;
    let n = side.pow(k as u32);
    let mut edges = Vec::new();
    let mut stride = 1;
    for _ in 0..k {
        for v in 0..n {
            if (v / stride) % side < m {
                edges.push((v as u32, (v + stride) as u32));
            }
        }
        stride *= side;
    }
    let names = (0..n)
        .map(|v| {
            let coords: Vec<String> = (0..k).map(|i| ((v / side.pow(i as u32)) % side).to_string()).collect();
            format!("({})", coords.join(","))
        })
        .collect();
    Graph::new(names, &edges).expect("grid")
}

pub(crate) fn digits(v: usize, side: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| (v / side.pow(i as u32)) % side).collect()
}

pub(crate) fn undigits(u: &[usize], side: usize) -> usize {
    u.iter().rev().fold(0, |acc, &d| acc * side + d)
}

struct NerveModel<'a> {
    x: &'a Graph,
    m: usize,
    named: bool,
    cfg: &'a Config,
}

impl NerveModel<'_> {
    fn pull(&self, c: &[u32], k_out: usize, coord: impl Fn(&mut Vec<usize>)) -> Vec<u32> {
        let side = self.m + 1;
        (0..side.pow(k_out as u32))
            .map(|v| {
                let mut u = digits(v, side, k_out);
                coord(&mut u);
                c[undigits(&u, side)]
            })
            .collect()
    }
}

impl CubeModel for NerveModel<'_> {
    type Cube = Vec<u32>;

    fn cubes(&self, dim: usize) -> Result<Vec<Vec<u32>>> {
        graph_maps(&grid(self.m, dim), self.x, self.cfg)
    }

    fn face(&self, dim: usize, c: &Vec<u32>, i: usize, eps: u8) -> Vec<u32> {
        let end = if eps == 0 { 0 } else { self.m };
        self.pull(c, dim - 1, |u| u.insert(i - 1, end))
    }

    fn degen(&self, dim: usize, c: &Vec<u32>, i: usize) -> Vec<u32> {
        self.pull(c, dim + 1, |u| {
            u.remove(i - 1);
        })
    }

    fn conn(&self, dim: usize, c: &Vec<u32>, i: usize, eps: u8) -> Vec<u32> {
        self.pull(c, dim + 1, |u| {
            let b = u.remove(i);
            let a = &mut u[i - 1];
            *a = if eps == 0 { (*a).max(b) } else { (*a).min(b) };
        })
    }

    fn name(&self, dim: usize, c: &Vec<u32>) -> Option<String> {
        self.named.then(|| if dim == 0 { self.x.name(c[0]).to_string() } else { map_name(self.x, c) })
    }
}

/// `N^G_m X` truncated at `D`: `k`-cubes are graph maps `I_m^{□k} → X`.
#[derive(Clone, Debug)]
pub struct GraphNerve {
    pub set: CubicalSet,
    pub m: usize,
    /// Sorted in each dimension.
    cubes: Vec<Vec<Vec<u32>>>,
}

impl GraphNerve {
    /// The grid map of a cube.
    pub fn cube(&self, dim: usize, idx: u32) -> &[u32] {
        &self.cubes[dim][idx as usize]
    }

    pub fn index_of(&self, dim: usize, c: &[u32]) -> Option<u32> {
        let cs = self.cubes.get(dim)?;
        cs.binary_search_by(|x| x.as_slice().cmp(c)).ok().map(|i| i as u32)
    }

    /// Precomposition with `p^{□k}` for `p: I_{m'} → I_m`, giving a map
    /// `N^G_m X → N^G_{m'} X`.
    fn reindex(&self, to: &GraphNerve, p: impl Fn(usize) -> usize) -> Result<CubicalMap> {
        let d = self.set.max_dim().min(to.set.max_dim());
        let (side, side_to) = (self.m + 1, to.m + 1);
        let mut images = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut row = Vec::with_capacity(self.cubes[k].len());
            for c in &self.cubes[k] {
                let img: Vec<u32> = (0..side_to.pow(k as u32))
                    .map(|v| {
                        let u: Vec<usize> = digits(v, side_to, k).into_iter().map(&p).collect();
                        c[undigits(&u, side)]
                    })
                    .collect();
                match to.index_of(k, &img) {
                    Some(i) => row.push(i),
                    None => return domain("reindexed grid is not a cube of the target nerve"),
                }
            }
            images.push(row);
        }
        Ok(CubicalMap { images })
    }

    /// `l^*: N^G_m X → N^G_{m+1} X`, with `l` repeating `0`.
    pub fn l_star(&self, to: &GraphNerve) -> Result<CubicalMap> {
        if to.m != self.m + 1 {
            return domain("l* goes from level m to level m+1");
        }
        self.reindex(to, |t| t.saturating_sub(1))
    }

    /// `r^*: N^G_m X → N^G_{m+1} X`, with `r` repeating `m`.
    pub fn r_star(&self, to: &GraphNerve) -> Result<CubicalMap> {
        if to.m != self.m + 1 {
            return domain("r* goes from level m to level m+1");
        }
        let m = self.m;
        self.reindex(to, move |t| t.min(m))
    }
}

pub fn graph_nerve(x: &Graph, m: usize, d: usize, cfg: &Config) -> Result<GraphNerve> {
    build_nerve(x, m, d, true, cfg)
}

/// As [`graph_nerve`] without cube names, for nerves too large to label.
pub(crate) fn graph_nerve_unnamed(x: &Graph, m: usize, d: usize, cfg: &Config) -> Result<GraphNerve> {
    build_nerve(x, m, d, false, cfg)
}

fn build_nerve(x: &Graph, m: usize, d: usize, named: bool, cfg: &Config) -> Result<GraphNerve> {
    if m == 0 {
        return domain("graph nerves need m ≥ 1");
    }
    let (set, cubes) = CubicalSet::build(&NerveModel { x, m, named, cfg }, d, cfg)?;
    debug_assert!(cubes.iter().all(|cs| cs.windows(2).all(|w| w[0] < w[1])));
    Ok(GraphNerve { set, m, cubes })
}

/// `N^G_m f` for a graph map `f`, by postcomposition.
pub fn nerve_map(a: &GraphNerve, b: &GraphNerve, f: &[u32]) -> Result<CubicalMap> {
    if a.m != b.m {
        return domain("nerves at different levels");
    }
    let d = a.set.max_dim().min(b.set.max_dim());
    let mut images = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut row = Vec::with_capacity(a.cubes[k].len());
        for c in &a.cubes[k] {
            let img: Vec<u32> = c.iter().map(|&v| f[v as usize]).collect();
            match b.index_of(k, &img) {
                Some(i) => row.push(i),
                None => return domain("not a graph map"),
            }
        }
        images.push(row);
    }
    Ok(CubicalMap { images })
}

/// Homology of the triangulated `N^G_1 X`, truncated at `up_to + 1`.
pub fn nerve_homology(x: &Graph, up_to: usize, cfg: &Config) -> Result<Vec<HomologyGroup>> {
    let n = graph_nerve(x, 1, up_to + 1, cfg)?;
    cubical_homology(&n.set, up_to, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cset::kan_box_check;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn nerve_counts() {
        let c4 = Graph::cycle(4).unwrap();
        let n = graph_nerve(&c4, 1, 2, &cfg()).unwrap();
        assert_eq!(n.set.counts(), &[4, 12, 84]);
        let p = graph_nerve(&Graph::interval(0), 1, 3, &cfg()).unwrap();
        assert_eq!(p.set.counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn cycle_homology() {
        let h4 = nerve_homology(&Graph::cycle(4).unwrap(), 1, &cfg()).unwrap();
        assert!(h4[1].is_zero());
        let h5 = nerve_homology(&Graph::cycle(5).unwrap(), 1, &cfg()).unwrap();
        assert_eq!(h5[1].to_string(), "H_1 = Z");
    }

    #[test]
    fn l_and_r_are_injective_and_natural() {
        let c5 = Graph::cycle(5).unwrap();
        let a = graph_nerve(&c5, 1, 2, &cfg()).unwrap();
        let b = graph_nerve(&c5, 2, 2, &cfg()).unwrap();
        for f in [a.l_star(&b).unwrap(), a.r_star(&b).unwrap()] {
            assert!(f.is_injective());
            f.check_natural(&a.set, &b.set).unwrap();
        }
    }

    #[test]
    fn complete_graph_nerve_is_kan_low() {
        let n = graph_nerve(&Graph::complete(2), 1, 2, &cfg()).unwrap();
        assert!(kan_box_check(&n.set, 2, &cfg()).unwrap().is_kan());
    }
}
