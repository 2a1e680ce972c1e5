use super::finite::FiniteCategory;
use super::CubicalCategory;
use crate::cset::CubicalSet;
use crate::error::{domain, Result};
use crate::exec::Config;
use std::collections::HashMap;

/// `(a, b, c, j, g, k, f)` with `(g, f)` canonical: `g` is not of the
/// form `w·σ_j`.
pub type ComposeKey = (u16, u16, u16, u8, u32, u8, u32);

/// A cubical category given by explicit mapping spaces and a composition
/// table on canonical pairs.
#[derive(Clone, Debug)]
pub struct TabulatedCategory {
    names: Vec<String>,
    homs: Vec<CubicalSet>,
    ids: Vec<u32>,
    table: HashMap<ComposeKey, u32>,
    d: usize,
}

impl TabulatedCategory {
    /// Tabulate composition from `comp`, which is consulted on canonical
    /// pairs with `j + k ≤ d` only. `homs` is indexed by `a·n + b`.
    pub fn from_fn<F>(names: Vec<String>, homs: Vec<CubicalSet>, ids: Vec<u32>, comp: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize, u32, usize, u32) -> Option<u32>,
    {
        let n = names.len();
        if homs.len() != n * n || ids.len() != n {
            return domain("mapping spaces or identities do not match the object count");
        }
        let d = homs.iter().map(CubicalSet::max_dim).min().unwrap_or(0);
        let homs: Vec<CubicalSet> = homs.into_iter().map(|h| h.truncate(d)).collect();
        for (a, &i) in ids.iter().enumerate() {
            if i as usize >= homs[a * n + a].count(0) {
                return domain(format!("identity of {} is not a 0-cube", names[a]));
            }
        }
        let mut table = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (sg, sf) = (&homs[b * n + c], &homs[a * n + b]);
                    for j in 0..=d {
                        for k in 0..=d - j {
                            for g in 0..sg.count(j) as u32 {
                                if last_degenerate(sg, j, g) {
                                    continue;
                                }
                                for f in 0..sf.count(k) as u32 {
                                    let Some(h) = comp(a, b, c, j, g, k, f) else {
                                        return domain(format!(
                                            "composite {} ∘ {} undefined",
                                            sg.name(j, g),
                                            sf.name(k, f)
                                        ));
                                    };
                                    table.insert(key(a, b, c, j, g, k, f), h);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(TabulatedCategory {
            names,
            homs,
            ids,
            table,
            d,
        })
    }

    /// Assemble from a table given on canonical pairs.
    pub fn from_table(
        names: Vec<String>,
        homs: Vec<CubicalSet>,
        ids: Vec<u32>,
        entries: &[(ComposeKey, u32)],
    ) -> Result<Self> {
        let table: HashMap<ComposeKey, u32> = entries.iter().copied().collect();
        TabulatedCategory::from_fn(names, homs, ids, |a, b, c, j, g, k, f| table.get(&key(a, b, c, j, g, k, f)).copied())
    }

    pub fn hom(&self, a: usize, b: usize) -> &CubicalSet {
        &self.homs[a * self.names.len() + b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identities(&self) -> &[u32] {
        &self.ids
    }

    /// Canonical table entries in a deterministic order.
    pub fn entries(&self) -> Vec<(ComposeKey, u32)> {
        let mut e: Vec<_> = self.table.iter().map(|(&k, &v)| (k, v)).collect();
        e.sort();
        e
    }
}

fn key(a: usize, b: usize, c: usize, j: usize, g: u32, k: usize, f: u32) -> ComposeKey {
    (a as u16, b as u16, c as u16, j as u8, g, k as u8, f)
}

fn last_degenerate(s: &CubicalSet, j: usize, g: u32) -> bool {
    j >= 1 && s.degen(j - 1, s.face(j, g, j, 0), j) == g
}

impl CubicalCategory for TabulatedCategory {
    type Cube = u32;

    fn object_count(&self) -> usize {
        self.names.len()
    }

    fn object_name(&self, a: usize) -> String {
        self.names[a].clone()
    }

    fn truncation(&self) -> usize {
        self.d
    }

    fn cubes(&self, a: usize, b: usize, k: usize, _cfg: &Config) -> Result<Vec<u32>> {
        Ok((0..self.hom(a, b).count(k) as u32).collect())
    }

    fn contains(&self, a: usize, b: usize, k: usize, c: &u32) -> bool {
        k <= self.d && (*c as usize) < self.hom(a, b).count(k)
    }

    fn face(&self, a: usize, b: usize, k: usize, c: &u32, i: usize, eps: u8) -> u32 {
        self.hom(a, b).face(k, *c, i, eps)
    }

    fn degen(&self, a: usize, b: usize, k: usize, c: &u32, i: usize) -> u32 {
        self.hom(a, b).degen(k, *c, i)
    }

    fn conn(&self, a: usize, b: usize, k: usize, c: &u32, i: usize, eps: u8) -> u32 {
        self.hom(a, b).conn(k, *c, i, eps)
    }

    fn identity(&self, a: usize) -> u32 {
        self.ids[a]
    }

    fn compose(&self, a: usize, b: usize, c: usize, j: usize, g: &u32, k: usize, f: &u32) -> u32 {
        let (sg, sf) = (self.hom(b, c), self.hom(a, b));
        let (mut j, mut g, mut k, mut f) = (j, *g, k, *f);
        while last_degenerate(sg, j, g) {
            g = sg.face(j, g, j, 0);
            f = sf.degen(k, f, 1);
            j -= 1;
            k += 1;
        }
        self.table.get(&key(a, b, c, j, g, k, f)).copied().unwrap_or(u32::MAX)
    }

    fn cube_name(&self, a: usize, b: usize, k: usize, c: &u32) -> String {
        self.hom(a, b).name(k, *c)
    }
}

/// `Sk₀ C`: the ordinary category `C` with discrete mapping spaces.
pub fn sk0(c: &FiniteCategory, d: usize, cfg: &Config) -> Result<TabulatedCategory> {
    let n = c.object_count();
    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let names = c.hom(a, b).iter().map(|&f| c.arrow(f).name.clone()).collect();
            homs.push(CubicalSet::discrete(names, d, cfg)?);
        }
    }
    let pos = |a: usize, b: usize, f: u32| c.hom(a, b).iter().position(|&x| x == f).map(|p| p as u32);
    let ids = (0..n).map(|a| pos(a, a, c.identity(a)).unwrap()).collect();
    TabulatedCategory::from_fn(c.objects().to_vec(), homs, ids, |a, b, cc, _, g, _, f| {
        let h = c.compose(c.hom(b, cc)[g as usize], c.hom(a, b)[f as usize])?;
        pos(a, cc, h)
    })
}

/// `ΣX`: objects `0, 1` with `ΣX(0, 1) = X`, `ΣX(1, 0) = ∅` and trivial
/// endomorphism spaces.
pub fn suspension(x: &CubicalSet, cfg: &Config) -> Result<TabulatedCategory> {
    let d = x.max_dim();
    let point = || CubicalSet::discrete(vec!["id".into()], d, cfg);
    let empty = CubicalSet::discrete(Vec::new(), d, cfg)?;
    let homs = vec![point()?, x.clone(), empty, point()?];
    TabulatedCategory::from_fn(vec!["0".into(), "1".into()], homs, vec![0, 0], |a, b, c, j, g, k, f| {
        match (a, b, c) {
            (0, 0, 1) => Some((j..j + k).fold(g, |y, dim| x.degen(dim, y, dim + 1))),
            (0, 1, 1) => Some((k..k + j).fold(f, |y, dim| x.degen(dim, y, 1))),
            (0, 0, 0) | (1, 1, 1) => Some(0),
            _ => None,
        }
    })
}
