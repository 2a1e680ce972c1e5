//! Finite truncated simplicial sets.

use crate::cset::UnionFind;
use crate::error::{domain, Result};
use crate::exec::{map_ordered, Budget, Config};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicBool, Ordering};

pub trait SimplexModel: Sync {
    type Simplex: Clone + Eq + Hash + Send + Sync;

    fn simplices(&self, dim: usize) -> Result<Vec<Self::Simplex>>;
    fn face(&self, dim: usize, s: &Self::Simplex, i: usize) -> Self::Simplex;
    fn degen(&self, dim: usize, s: &Self::Simplex, i: usize) -> Self::Simplex;

    fn name(&self, _dim: usize, _s: &Self::Simplex) -> Option<String> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    max_dim: usize,
    counts: Vec<usize>,
    names: Option<Vec<Vec<String>>>,
    /// `faces[k][(k+1)·x + i]` for `k ≥ 1`.
    faces: Vec<Vec<u32>>,
    /// `degens[k][(k+1)·x + i]` for `k < max_dim`.
    degens: Vec<Vec<u32>>,
    witness: Vec<Vec<Option<(u32, usize)>>>,
}

impl SimplicialSet {
    pub fn from_raw(
        max_dim: usize,
        counts: Vec<usize>,
        names: Option<Vec<Vec<String>>>,
        faces: Vec<Vec<u32>>,
        degens: Vec<Vec<u32>>,
        cfg: &Config,
    ) -> Result<Self> {
        if counts.len() != max_dim + 1 {
            return domain("simplex counts do not match the truncation");
        }
        for k in 0..=max_dim {
            if k >= 1 && (faces[k].len() != (k + 1) * counts[k] || faces[k].iter().any(|&v| v as usize >= counts[k - 1])) {
                return domain(format!("bad face table in dimension {k}"));
            }
            if k < max_dim && (degens[k].len() != (k + 1) * counts[k] || degens[k].iter().any(|&v| v as usize >= counts[k + 1])) {
                return domain(format!("bad degeneracy table in dimension {k}"));
            }
        }
        let mut witness: Vec<Vec<Option<(u32, usize)>>> = counts.iter().map(|&c| vec![None; c]).collect();
        for k in 0..max_dim {
            for x in 0..counts[k] {
                for i in 0..=k {
                    let y = degens[k][(k + 1) * x + i] as usize;
                    witness[k + 1][y].get_or_insert((x as u32, i));
                }
            }
        }
        let s = SimplicialSet {
            max_dim,
            counts,
            names,
            faces,
            degens,
            witness,
        };
        if cfg.validate {
            s.check_identities()?;
        }
        Ok(s)
    }

    pub fn build<M: SimplexModel>(
        model: &M,
        max_dim: usize,
        cfg: &Config,
    ) -> Result<(SimplicialSet, Vec<Vec<M::Simplex>>)> {
        let mut simp = Vec::new();
        let mut total = 0;
        for k in 0..=max_dim {
            let s = model.simplices(k)?;
            total += s.len();
            cfg.check("simplices", total)?;
            simp.push(s);
        }
        let index: Vec<HashMap<&M::Simplex, u32>> = simp
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, s)| (s, i as u32)).collect())
            .collect();
        for (k, ix) in index.iter().enumerate() {
            if ix.len() != simp[k].len() {
                return domain(format!("duplicate {k}-simplices in model"));
            }
        }
        let missing = AtomicBool::new(false);
        let look = |k: usize, s: &M::Simplex| -> u32 {
            index[k].get(s).copied().unwrap_or_else(|| {
                missing.store(true, Ordering::Relaxed);
                0
            })
        };
        let mut faces = vec![Vec::new()];
        for k in 1..=max_dim {
            let rows = map_ordered(cfg.exec, &simp[k], |s| {
                (0..=k).map(|i| look(k - 1, &model.face(k, s, i))).collect::<Vec<_>>()
            });
            faces.push(rows.concat());
        }
        let mut degens = Vec::new();
        for k in 0..max_dim {
            let rows = map_ordered(cfg.exec, &simp[k], |s| {
                (0..=k).map(|i| look(k + 1, &model.degen(k, s, i))).collect::<Vec<_>>()
            });
            degens.push(rows.concat());
        }
        if missing.load(Ordering::Relaxed) {
            return domain("model is not closed under faces and degeneracies");
        }
        let names: Option<Vec<Vec<String>>> = simp
            .iter()
            .enumerate()
            .map(|(k, v)| v.iter().map(|s| model.name(k, s)).collect::<Option<Vec<_>>>())
            .collect();
        let counts = simp.iter().map(Vec::len).collect();
        drop(index);
        let set = SimplicialSet::from_raw(max_dim, counts, names, faces, degens, cfg)?;
        Ok((set, simp))
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn count(&self, dim: usize) -> usize {
        self.counts.get(dim).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn name(&self, dim: usize, x: u32) -> String {
        match &self.names {
            Some(n) => n[dim][x as usize].clone(),
            None => format!("{dim}:{x}"),
        }
    }

    #[inline]
    pub fn face(&self, dim: usize, x: u32, i: usize) -> u32 {
        self.faces[dim][(dim + 1) * x as usize + i]
    }

    #[inline]
    pub fn degen(&self, dim: usize, x: u32, i: usize) -> u32 {
        self.degens[dim][(dim + 1) * x as usize + i]
    }

    pub fn faces_of(&self, dim: usize, x: u32) -> &[u32] {
        &self.faces[dim][(dim + 1) * x as usize..(dim + 1) * (x as usize + 1)]
    }

    pub fn is_degenerate(&self, dim: usize, x: u32) -> bool {
        self.witness[dim][x as usize].is_some()
    }

    pub fn witness(&self, dim: usize, x: u32) -> Option<(u32, usize)> {
        self.witness[dim][x as usize]
    }

    pub fn nondegenerate(&self, dim: usize) -> Vec<u32> {
        (0..self.count(dim) as u32).filter(|&x| !self.is_degenerate(dim, x)).collect()
    }

    /// `x = η^* y` with `y` nondegenerate; the surjection `η: [dim] → [d]` is
    /// returned as its value list.
    pub fn ez(&self, dim: usize, x: u32) -> (usize, u32, Vec<usize>) {
        let mut eta: Vec<usize> = (0..=dim).collect();
        let (mut d, mut y) = (dim, x);
        while let Some((src, i)) = self.witness[d][y as usize] {
            // y = s_i src: vertex j of y goes to j for j ≤ i, j-1 above
            for v in eta.iter_mut() {
                if *v > i {
                    *v -= 1;
                }
            }
            y = src;
            d -= 1;
        }
        (d, y, eta)
    }

    /// Total face `x ↦ x·δ` along an injective monotone `δ: [k] → [dim]`.
    pub fn restrict(&self, dim: usize, x: u32, verts: &[usize]) -> u32 {
        let mut keep = vec![false; dim + 1];
        for &v in verts {
            keep[v] = true;
        }
        let (mut d, mut y) = (dim, x);
        for v in (0..=dim).rev() {
            if !keep[v] {
                y = self.face(d, y, v);
                d -= 1;
            }
        }
        y
    }

    /// Vertices of a simplex, in order.
    pub fn vertices(&self, dim: usize, x: u32) -> Vec<u32> {
        (0..=dim).map(|v| self.restrict(dim, x, &[v])).collect()
    }

    pub fn truncate(&self, d: usize) -> SimplicialSet {
        let d = d.min(self.max_dim);
        SimplicialSet {
            max_dim: d,
            counts: self.counts[..=d].to_vec(),
            names: self.names.as_ref().map(|n| n[..=d].to_vec()),
            faces: self.faces[..=d].to_vec(),
            degens: self.degens[..d].to_vec(),
            witness: self.witness[..=d].to_vec(),
        }
    }

    fn check_identities(&self) -> Result<()> {
        let n = self.max_dim;
        for k in 2..=n {
            for x in 0..self.count(k) as u32 {
                for j in 0..=k {
                    for i in 0..j {
                        if self.face(k - 1, self.face(k, x, j), i) != self.face(k - 1, self.face(k, x, i), j - 1) {
                            return domain(format!("d_{i} d_{j} identity fails on {}", self.name(k, x)));
                        }
                    }
                }
            }
        }
        for k in 0..n {
            for x in 0..self.count(k) as u32 {
                for j in 0..=k {
                    let y = self.degen(k, x, j);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, y, i);
                        let rhs = if i < j {
                            self.degen(k - 1, self.face(k, x, i), j - 1)
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.degen(k - 1, self.face(k, x, i - 1), j)
                        };
                        if lhs != rhs {
                            return domain(format!("d_{i} s_{j} identity fails on {}", self.name(k, x)));
                        }
                    }
                    if k + 1 < n {
                        for i in 0..=j {
                            if self.degen(k + 1, self.degen(k, x, j), i) != self.degen(k + 1, self.degen(k, x, i), j + 1) {
                                return domain(format!("s_{i} s_{j} identity fails on {}", self.name(k, x)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn pi0(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.count(0));
        if self.max_dim >= 1 {
            for e in 0..self.count(1) as u32 {
                uf.union(self.face(1, e, 0) as usize, self.face(1, e, 1) as usize);
            }
        }
        uf.labels()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialMap {
    pub images: Vec<Vec<u32>>,
}

impl SimplicialMap {
    pub fn at(&self, dim: usize, x: u32) -> u32 {
        self.images[dim][x as usize]
    }

    pub fn check_natural(&self, a: &SimplicialSet, b: &SimplicialSet) -> std::result::Result<(), String> {
        let d = a.max_dim.min(b.max_dim);
        for k in 0..=d {
            if self.images[k].len() != a.count(k) {
                return Err(format!("wrong size in dimension {k}"));
            }
            for x in 0..a.count(k) as u32 {
                let fx = self.at(k, x);
                if k >= 1 {
                    for i in 0..=k {
                        if self.at(k - 1, a.face(k, x, i)) != b.face(k, fx, i) {
                            return Err(format!("face d_{i} of {} not preserved", a.name(k, x)));
                        }
                    }
                }
                if k < d {
                    for i in 0..=k {
                        if self.at(k + 1, a.degen(k, x, i)) != b.degen(k, fx, i) {
                            return Err(format!("degeneracy s_{i} of {} not preserved", a.name(k, x)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, a: &SimplicialSet, b: &SimplicialSet) -> bool {
        let d = a.max_dim.min(b.max_dim);
        (0..=d).all(|k| {
            a.count(k) == b.count(k) && {
                let mut seen = vec![false; b.count(k)];
                self.images[k].iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
            }
        })
    }
}

/// All simplicial maps `a → b` within the common truncation.
pub fn enumerate_simplicial_maps(a: &SimplicialSet, b: &SimplicialSet, cfg: &Config) -> Result<Vec<SimplicialMap>> {
    let d = a.max_dim.min(b.max_dim);
    let nondeg: Vec<Vec<u32>> = (0..=d).map(|k| a.nondegenerate(k)).collect();
    let by_faces: Vec<HashMap<Vec<u32>, Vec<u32>>> = (0..=d)
        .map(|k| {
            let mut m: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            if k >= 1 {
                for y in 0..b.count(k) as u32 {
                    m.entry(b.faces_of(k, y).to_vec()).or_default().push(y);
                }
            }
            m
        })
        .collect();
    let budget = Budget::new(cfg, "simplicial maps");
    struct Ctx<'a> {
        a: &'a SimplicialSet,
        b: &'a SimplicialSet,
        d: usize,
        nondeg: &'a [Vec<u32>],
        by_faces: &'a [HashMap<Vec<u32>, Vec<u32>>],
    }
    fn settle(c: &Ctx, k: usize, f: &mut [Vec<u32>]) -> bool {
        for x in 0..c.a.count(k) as u32 {
            if let Some((src, i)) = c.a.witness(k, x) {
                f[k][x as usize] = c.b.degen(k - 1, f[k - 1][src as usize], i);
            }
        }
        for x in 0..c.a.count(k) as u32 {
            if k >= 1 && c.a.is_degenerate(k, x) {
                let fx = f[k][x as usize];
                for i in 0..=k {
                    if c.b.face(k, fx, i) != f[k - 1][c.a.face(k, x, i) as usize] {
                        return false;
                    }
                }
            }
        }
        if k >= 1 {
            for x in 0..c.a.count(k - 1) as u32 {
                for i in 0..k {
                    if f[k][c.a.degen(k - 1, x, i) as usize] != c.b.degen(k - 1, f[k - 1][x as usize], i) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(c: &Ctx, k: usize, pos: usize, f: &mut Vec<Vec<u32>>, out: &mut Vec<SimplicialMap>, budget: &Budget) -> Result<()> {
        if pos == c.nondeg[k].len() {
            if !settle(c, k, f) {
                return Ok(());
            }
            if k == c.d {
                budget.take(1)?;
                out.push(SimplicialMap { images: f.clone() });
                return Ok(());
            }
            return rec(c, k + 1, 0, f, out, budget);
        }
        let x = c.nondeg[k][pos];
        let cands: Vec<u32> = if k == 0 {
            (0..c.b.count(0) as u32).collect()
        } else {
            let key: Vec<u32> = c.a.faces_of(k, x).iter().map(|&y| f[k - 1][y as usize]).collect();
            c.by_faces[k].get(&key).cloned().unwrap_or_default()
        };
        for y in cands {
            f[k][x as usize] = y;
            rec(c, k, pos + 1, f, out, budget)?;
        }
        Ok(())
    }
    let ctx = Ctx {
        a,
        b,
        d,
        nondeg: &nondeg,
        by_faces: &by_faces,
    };
    let fresh = || -> Vec<Vec<u32>> { (0..=d).map(|k| vec![0; a.count(k)]).collect() };
    if nondeg[0].is_empty() {
        let mut out = Vec::new();
        rec(&ctx, 0, 0, &mut fresh(), &mut out, &budget)?;
        return Ok(out);
    }
    let first = nondeg[0][0];
    let cands: Vec<u32> = (0..b.count(0) as u32).collect();
    let parts = map_ordered(cfg.exec, &cands, |&y| {
        let mut f = fresh();
        f[0][first as usize] = y;
        let mut out = Vec::new();
        rec(&ctx, 0, 1, &mut f, &mut out, &budget).map(|_| out)
    });
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

/// Nerve of a finite poset given by its order relation; simplices are weakly
/// increasing chains.
pub struct PosetNerve<'a> {
    pub size: usize,
    pub leq: &'a (dyn Fn(usize, usize) -> bool + Sync),
    pub names: Option<&'a [String]>,
}

impl SimplexModel for PosetNerve<'_> {
    type Simplex = Vec<u32>;

    fn simplices(&self, dim: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(dim + 1);
        fn go(p: &PosetNerve, dim: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == dim + 1 {
                out.push(cur.clone());
                return;
            }
            for v in 0..p.size {
                if cur.last().map_or(true, |&l| (p.leq)(l as usize, v)) {
                    cur.push(v as u32);
                    go(p, dim, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, dim, &mut cur, &mut out);
        Ok(out)
    }

    fn face(&self, _dim: usize, s: &Vec<u32>, i: usize) -> Vec<u32> {
        let mut t = s.clone();
        t.remove(i);
        t
    }

    fn degen(&self, _dim: usize, s: &Vec<u32>, i: usize) -> Vec<u32> {
        let mut t = s.clone();
        t.insert(i, s[i]);
        t
    }

    fn name(&self, _dim: usize, s: &Vec<u32>) -> Option<String> {
        let parts: Vec<String> = s
            .iter()
            .map(|&v| match self.names {
                Some(n) => n[v as usize].clone(),
                None => v.to_string(),
            })
            .collect();
        Some(format!("<{}>", parts.join(",")))
    }
}

/// The standard simplex `Δ^n` truncated at `max_dim`.
pub fn delta(n: usize, max_dim: usize, cfg: &Config) -> Result<SimplicialSet> {
    let leq = |a: usize, b: usize| a <= b;
    Ok(SimplicialSet::build(&PosetNerve { size: n + 1, leq: &leq, names: None }, max_dim, cfg)?.0)
}

/// Simplices of a simplicial set satisfying a predicate on vertex lists,
/// closed under faces; used for `∂Δ^n` and horns.
struct SubDelta<'a> {
    n: usize,
    keep: &'a (dyn Fn(&[u32]) -> bool + Sync),
}

impl SimplexModel for SubDelta<'_> {
    type Simplex = Vec<u32>;

    fn simplices(&self, dim: usize) -> Result<Vec<Vec<u32>>> {
        let leq = |a: usize, b: usize| a <= b;
        let all = PosetNerve { size: self.n + 1, leq: &leq, names: None }.simplices(dim)?;
        Ok(all.into_iter().filter(|s| (self.keep)(s)).collect())
    }

    fn face(&self, _dim: usize, s: &Vec<u32>, i: usize) -> Vec<u32> {
        let mut t = s.clone();
        t.remove(i);
        t
    }

    fn degen(&self, _dim: usize, s: &Vec<u32>, i: usize) -> Vec<u32> {
        let mut t = s.clone();
        t.insert(i, s[i]);
        t
    }

    fn name(&self, _dim: usize, s: &Vec<u32>) -> Option<String> {
        Some(format!("<{}>", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
    }
}

/// `∂Δ^n`: simplices missing at least one vertex.
pub fn boundary_delta(n: usize, max_dim: usize, cfg: &Config) -> Result<SimplicialSet> {
    let keep = move |s: &[u32]| (0..=n as u32).any(|v| !s.contains(&v));
    Ok(SimplicialSet::build(&SubDelta { n, keep: &keep }, max_dim, cfg)?.0)
}

/// The spine of `Δ^n`: the chain of edges `i → i+1`.
pub fn spine(n: usize, max_dim: usize, cfg: &Config) -> Result<SimplicialSet> {
    let keep = |s: &[u32]| s.last().copied().unwrap_or(0) <= s.first().copied().unwrap_or(0) + 1;
    Ok(SimplicialSet::build(&SubDelta { n, keep: &keep }, max_dim, cfg)?.0)
}

/// The nerve of the vertex poset of `[1]^n`, i.e. the triangulated cube.
pub fn cube_nerve(n: usize, max_dim: usize, cfg: &Config) -> Result<SimplicialSet> {
    let leq = |a: usize, b: usize| a & !b == 0;
    Ok(SimplicialSet::build(&PosetNerve { size: 1 << n, leq: &leq, names: None }, max_dim, cfg)?.0)
}

/// Cartesian product; `(a, b)` with `a ∈ A_k`, `b ∈ B_k`.
pub struct Product<'a> {
    pub a: &'a SimplicialSet,
    pub b: &'a SimplicialSet,
}

impl SimplexModel for Product<'_> {
    type Simplex = (u32, u32);

    fn simplices(&self, dim: usize) -> Result<Vec<(u32, u32)>> {
        let mut v = Vec::with_capacity(self.a.count(dim) * self.b.count(dim));
        for x in 0..self.a.count(dim) as u32 {
            for y in 0..self.b.count(dim) as u32 {
                v.push((x, y));
            }
        }
        Ok(v)
    }

    fn face(&self, dim: usize, s: &(u32, u32), i: usize) -> (u32, u32) {
        (self.a.face(dim, s.0, i), self.b.face(dim, s.1, i))
    }

    fn degen(&self, dim: usize, s: &(u32, u32), i: usize) -> (u32, u32) {
        (self.a.degen(dim, s.0, i), self.b.degen(dim, s.1, i))
    }

    fn name(&self, dim: usize, s: &(u32, u32)) -> Option<String> {
        Some(format!("({},{})", self.a.name(dim, s.0), self.b.name(dim, s.1)))
    }
}

pub fn product(a: &SimplicialSet, b: &SimplicialSet, cfg: &Config) -> Result<SimplicialSet> {
    let d = a.max_dim.min(b.max_dim);
    Ok(SimplicialSet::build(&Product { a, b }, d, cfg)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_counts() {
        let d = delta(2, 3, &Config::default()).unwrap();
        assert_eq!(d.counts(), &[3, 6, 10, 15]);
        assert_eq!(d.nondegenerate(2).len(), 1);
        assert_eq!(d.nondegenerate(3).len(), 0);
    }

    #[test]
    fn boundary_has_no_top_simplex() {
        let b = boundary_delta(2, 2, &Config::default()).unwrap();
        assert_eq!(b.nondegenerate(1).len(), 3);
        assert_eq!(b.nondegenerate(2).len(), 0);
    }

    #[test]
    fn maps_from_delta1_are_edges() {
        let cfg = Config::default();
        let d1 = delta(1, 1, &cfg).unwrap();
        let x = cube_nerve(2, 1, &cfg).unwrap();
        assert_eq!(enumerate_simplicial_maps(&d1, &x, &cfg).unwrap().len(), x.count(1));
    }

    #[test]
    fn ez_recovers_degenerate() {
        let d = delta(1, 3, &Config::default()).unwrap();
        for x in 0..d.count(3) as u32 {
            let (k, y, eta) = d.ez(3, x);
            assert!(!d.is_degenerate(k, y));
            assert_eq!(eta.len(), 4);
            assert_eq!(*eta.last().unwrap(), k);
        }
    }
}
