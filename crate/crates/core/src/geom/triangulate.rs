use crate::cset::{CubicalMap, CubicalSet};
use crate::cube;
use crate::error::Result;
use crate::exec::Config;
use crate::simplicial::{SimplexModel, SimplicialMap, SimplicialSet};
use std::collections::HashMap;

/// A simplex of `T X`: a nondegenerate cube `x ∈ X_n` and a chain of
/// vertices of `[1]^n` from the bottom to the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriSimplex {
    pub n: u8,
    pub x: u32,
    pub chain: Vec<u32>,
}

struct TriModel<'a> {
    x: &'a CubicalSet,
}

impl TriModel<'_> {
    /// Reduce `(x, chain)`, with `x` any cube, to normal form.
    fn normalize(&self, n: usize, x: u32, chain: &[u32]) -> TriSimplex {
        let (v0, vk) = (chain[0], *chain.last().unwrap());
        let fixed: Vec<usize> = (1..=n).filter(|&j| (v0 ^ vk) >> (j - 1) & 1 == 0).collect();
        let (mut n, mut x, mut chain) = (n, x, chain.to_vec());
        if !fixed.is_empty() {
            let word: Vec<_> = fixed
                .iter()
                .enumerate()
                .map(|(r, &c)| cube::face(c - r, ((v0 >> (c - 1)) & 1) as u8))
                .collect();
            // x·(∂_{c1} ∘ ∂_{c2-1} ∘ …): apply the leftmost face first
            let (nd, y) = self.x.act_word(n, x, &word).expect("faces stay in range");
            let free: Vec<usize> = (1..=n).filter(|j| !fixed.contains(j)).collect();
            chain = chain
                .iter()
                .map(|&v| {
                    free.iter()
                        .enumerate()
                        .fold(0, |acc, (t, &j)| acc | (((v >> (j - 1)) & 1) << t))
                })
                .collect();
            n = nd;
            x = y;
        }
        let (d, y, e) = self.x.ez(n, x);
        let chain = chain.iter().map(|&v| e.apply(v)).collect();
        TriSimplex { n: d as u8, x: y, chain }
    }
}

fn chains(n: usize, k: usize) -> Vec<Vec<u32>> {
    // coordinate j flips at step t_j ∈ 1..=k
    if n == 0 {
        return vec![vec![0; k + 1]];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut t = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            t.push(c % k + 1);
            c /= k;
        }
        let chain = (0..=k)
            .map(|i| {
                t.iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &tj)| if i >= tj { acc | (1 << j) } else { acc })
            })
            .collect();
        out.push(chain);
    }
    out
}

impl SimplexModel for TriModel<'_> {
    type Simplex = TriSimplex;

    fn simplices(&self, k: usize) -> Result<Vec<TriSimplex>> {
        let mut out = Vec::new();
        for n in 0..=self.x.max_dim() {
            let cs = chains(n, k);
            for x in self.x.nondegenerate(n) {
                for c in &cs {
                    out.push(TriSimplex {
                        n: n as u8,
                        x,
                        chain: c.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn face(&self, _k: usize, s: &TriSimplex, i: usize) -> TriSimplex {
        let mut c = s.chain.clone();
        c.remove(i);
        self.normalize(s.n as usize, s.x, &c)
    }

    fn degen(&self, _k: usize, s: &TriSimplex, i: usize) -> TriSimplex {
        let mut c = s.chain.clone();
        c.insert(i, s.chain[i]);
        TriSimplex { chain: c, ..s.clone() }
    }

    fn name(&self, _k: usize, s: &TriSimplex) -> Option<String> {
        let n = s.n as usize;
        let chain: Vec<String> = s
            .chain
            .iter()
            .map(|&v| (1..=n).map(|j| if (v >> (j - 1)) & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        Some(format!("{}|{}", self.x.name(n, s.x), chain.join(">")))
    }
}

pub struct Triangulation {
    pub set: SimplicialSet,
    pub simplices: Vec<Vec<TriSimplex>>,
}

/// `T X` truncated at `max_dim`, built from the nondegenerate cubes of `X`.
pub fn triangulate_with(x: &CubicalSet, max_dim: usize, cfg: &Config) -> Result<Triangulation> {
    let (set, simplices) = SimplicialSet::build(&TriModel { x }, max_dim, cfg)?;
    Ok(Triangulation { set, simplices })
}

/// `T X` truncated at the truncation of `X`.
pub fn triangulate(x: &CubicalSet, cfg: &Config) -> Result<SimplicialSet> {
    Ok(triangulate_with(x, x.max_dim(), cfg)?.set)
}

impl Triangulation {
    /// Image of a simplex `(x, chain)` for an arbitrary cube `x`.
    pub fn locate(&self, x: &CubicalSet, n: usize, cube: u32, chain: &[u32]) -> Option<u32> {
        let s = TriModel { x }.normalize(n, cube, chain);
        let k = chain.len() - 1;
        self.simplices.get(k)?.iter().position(|t| *t == s).map(|p| p as u32)
    }

    /// `T f : T X → T Y` for a cubical map `f`, within the common truncation.
    pub fn induced(&self, f: &CubicalMap, target: &Triangulation, y: &CubicalSet) -> SimplicialMap {
        let model = TriModel { x: y };
        let d = self.set.max_dim().min(target.set.max_dim());
        let images = (0..=d)
            .map(|k| {
                let index: HashMap<&TriSimplex, u32> =
                    target.simplices[k].iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
                self.simplices[k]
                    .iter()
                    .map(|s| {
                        let n = s.n as usize;
                        let t = model.normalize(n, f.at(n, s.x), &s.chain);
                        index[&t]
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cset::representable;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn cube_has_factorial_many_top_simplices() {
        let cfg = Config::default();
        for n in 0..=3 {
            let c = representable(n, n, &cfg).unwrap();
            let t = triangulate(&c, &cfg).unwrap();
            assert_eq!(t.nondegenerate(n).len(), factorial(n), "n = {n}");
        }
    }
}
