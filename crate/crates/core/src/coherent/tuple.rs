use super::rigid_map;
use crate::cube::{self, epimorphisms, BoxMorphism};
use crate::enriched::CubicalCategory;
use crate::error::{domain, Error, Result};
use crate::exec::Config;
use crate::simplicial::SimplicialSet;
use std::collections::HashMap;

/// A pair `(s, f)`: an `m`-simplex `s` and a cube `f: [1]^d → [1]^{m−1}` of
/// `𝔠[m](0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RigidPair {
    pub m: u8,
    pub s: u32,
    pub f: BoxMorphism,
}

/// A `k`-cube `((s_n, f_n), …, (s_1, f_1))` of `𝔠X(x, y)`; `pairs[0]` is
/// `(s_n, f_n)` and its coordinates come first. The empty tuple is the
/// identity, degenerated `k` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RigidTuple {
    pub k: u8,
    pub pairs: Vec<RigidPair>,
}

impl RigidTuple {
    pub fn empty(k: usize) -> Self {
        RigidTuple { k: k as u8, pairs: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.k as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    LeftFirst,
    RightFirst,
}

enum Step {
    Drop,
    Replace(Vec<RigidPair>),
}

/// Reduction and cube operations on tuples over a simplicial set.
#[derive(Clone, Copy)]
pub struct TupleOps<'a> {
    pub x: &'a SimplicialSet,
}

fn prepend(f: &BoxMorphism, n: usize) -> BoxMorphism {
    (0..n).fold(f.clone(), |f, _| {
        f.compose(&BoxMorphism::generator(cube::degen(1), f.src() + 1).unwrap()).unwrap()
    })
}

fn append(f: &BoxMorphism, n: usize) -> BoxMorphism {
    (0..n).fold(f.clone(), |f, _| {
        let d = f.src() + 1;
        f.compose(&BoxMorphism::generator(cube::degen(d), d).unwrap()).unwrap()
    })
}

fn drop_last_input(f: &BoxMorphism) -> BoxMorphism {
    let d = f.src();
    f.compose(&BoxMorphism::generator(cube::face(d, 0), d - 1).unwrap()).unwrap()
}

fn last_input_used_by(f: &BoxMorphism, outputs: std::ops::Range<usize>) -> usize {
    let mask: u32 = outputs.clone().map(|j| 1u32 << (j - 1)).sum();
    (1..=f.src())
        .rev()
        .find(|&i| (0..1u32 << f.src()).any(|v| (f.apply(v) ^ f.apply(v ^ (1 << (i - 1)))) & mask != 0))
        .unwrap_or(0)
}

impl<'a> TupleOps<'a> {
    pub fn new(x: &'a SimplicialSet) -> Self {
        TupleOps { x }
    }

    pub fn source(&self, t: &RigidTuple) -> Option<u32> {
        t.pairs.last().map(|p| self.x.restrict(p.m as usize, p.s, &[0]))
    }

    pub fn target(&self, t: &RigidTuple) -> Option<u32> {
        t.pairs.first().map(|p| self.x.restrict(p.m as usize, p.s, &[p.m as usize]))
    }

    /// Whether consecutive pairs chain and each `f` has the right shape.
    pub fn is_wellformed(&self, t: &RigidTuple) -> bool {
        let shapes = t.pairs.iter().all(|p| {
            p.m >= 1 && (p.m as usize) <= self.x.max_dim() && (p.s as usize) < self.x.count(p.m as usize) && p.f.dst() + 1 == p.m as usize
        });
        let total: usize = t.pairs.iter().map(|p| p.f.src()).sum();
        shapes
            && (t.pairs.is_empty() || total == t.dim())
            && t.pairs.windows(2).all(|w| {
                let (hi, lo) = (&w[0], &w[1]);
                self.x.restrict(lo.m as usize, lo.s, &[lo.m as usize]) == self.x.restrict(hi.m as usize, hi.s, &[0])
            })
    }

    fn step(&self, p: &RigidPair, order: ReductionOrder) -> Option<Step> {
        let m = p.m as usize;
        if self.x.is_degenerate(m, p.s) {
            let (m2, s2, eta) = self.x.ez(m, p.s);
            if m2 == 0 {
                return Some(Step::Drop);
            }
            let mu = rigid_map(&eta, 0, m);
            return Some(Step::Replace(vec![RigidPair {
                m: m2 as u8,
                s: s2,
                f: mu.compose(&p.f).unwrap(),
            }]));
        }
        let mut qs: Vec<usize> = (1..m).collect();
        if order == ReductionOrder::RightFirst {
            qs.reverse();
        }
        for q in qs {
            match p.f.constant_coord(q) {
                Some(0) => {
                    let del = BoxMorphism::generator(cube::degen(q), m - 1).unwrap();
                    return Some(Step::Replace(vec![RigidPair {
                        m: (m - 1) as u8,
                        s: self.x.face(m, p.s, m - q),
                        f: del.compose(&p.f).unwrap(),
                    }]));
                }
                Some(_) => return Some(Step::Replace(self.split(p, q).to_vec())),
                None => {}
            }
        }
        None
    }

    /// `(s, f)` with output `q` constantly `1` as the composite through the
    /// object `c = m − q`; inputs read by neither side go to the later one.
    fn split(&self, p: &RigidPair, q: usize) -> [RigidPair; 2] {
        let m = p.m as usize;
        let c = m - q;
        let d = p.f.src();
        let t = last_input_used_by(&p.f, 1..q);
        let gmask = (1u32 << (q - 1)) - 1;
        let hmask = (1u32 << (c - 1)) - 1;
        let g = (0..1u32 << t).map(|v| p.f.apply(v) & gmask).collect();
        let h = (0..1u32 << (d - t)).map(|w| (p.f.apply(w << t) >> q) & hmask).collect();
        let front = RigidPair {
            m: q as u8,
            s: self.x.restrict(m, p.s, &(c..=m).collect::<Vec<_>>()),
            f: BoxMorphism::from_table_unchecked(t, q - 1, g),
        };
        let back = RigidPair {
            m: c as u8,
            s: self.x.restrict(m, p.s, &(0..=c).collect::<Vec<_>>()),
            f: BoxMorphism::from_table_unchecked(d - t, c - 1, h),
        };
        [front, back]
    }

    /// The reduced representative.
    pub fn reduce_with(&self, mut t: RigidTuple, order: ReductionOrder) -> RigidTuple {
        loop {
            let n = t.pairs.len();
            let idx: Vec<usize> = match order {
                ReductionOrder::LeftFirst => (0..n).collect(),
                ReductionOrder::RightFirst => (0..n).rev().collect(),
            };
            let hit = idx.into_iter().find_map(|i| self.step(&t.pairs[i], order).map(|s| (i, s)));
            match hit {
                None => break,
                Some((i, Step::Drop)) => {
                    let d = t.pairs.remove(i).f.src();
                    if i < t.pairs.len() {
                        t.pairs[i].f = prepend(&t.pairs[i].f, d);
                    } else if i > 0 {
                        t.pairs[i - 1].f = append(&t.pairs[i - 1].f, d);
                    }
                }
                Some((i, Step::Replace(v))) => {
                    t.pairs.splice(i..=i, v);
                }
            }
        }
        for i in 0..t.pairs.len().saturating_sub(1) {
            while t.pairs[i].f.src() >= 1 && t.pairs[i].f.ignores(t.pairs[i].f.src()) {
                t.pairs[i].f = drop_last_input(&t.pairs[i].f);
                t.pairs[i + 1].f = prepend(&t.pairs[i + 1].f, 1);
            }
        }
        t
    }

    pub fn reduce(&self, t: RigidTuple) -> RigidTuple {
        self.reduce_with(t, ReductionOrder::LeftFirst)
    }

    /// `(pair, local coordinate)` owning coordinate `p` of the tuple.
    fn locate(t: &RigidTuple, p: usize) -> (usize, usize) {
        let mut start = 0;
        for (i, pr) in t.pairs.iter().enumerate() {
            let d = pr.f.src();
            if p <= start + d {
                return (i, p - start);
            }
            start += d;
        }
        (t.pairs.len() - 1, t.pairs.last().unwrap().f.src() + 1)
    }

    fn act_local(&self, t: &RigidTuple, p: usize, k2: usize, g: impl Fn(usize) -> cube::Generator) -> RigidTuple {
        if t.pairs.is_empty() {
            return RigidTuple::empty(k2);
        }
        let (i, l) = Self::locate(t, p);
        let mut u = t.clone();
        u.k = k2 as u8;
        u.pairs[i].f = u.pairs[i].f.after(g(l)).unwrap();
        self.reduce(u)
    }

    pub fn face(&self, t: &RigidTuple, p: usize, eps: u8) -> RigidTuple {
        self.act_local(t, p, t.dim() - 1, |l| cube::face(l, eps))
    }

    pub fn degen(&self, t: &RigidTuple, p: usize) -> RigidTuple {
        self.act_local(t, p, t.dim() + 1, cube::degen)
    }

    pub fn conn(&self, t: &RigidTuple, p: usize, eps: u8) -> RigidTuple {
        self.act_local(t, p, t.dim() + 1, |l| cube::conn(l, eps))
    }

    /// `g ∘ f` by concatenation.
    pub fn concat(&self, g: &RigidTuple, f: &RigidTuple) -> RigidTuple {
        let k = g.dim() + f.dim();
        let mut pairs: Vec<RigidPair> = g.pairs.iter().chain(&f.pairs).cloned().collect();
        if g.pairs.is_empty() && !f.pairs.is_empty() {
            pairs[0].f = prepend(&pairs[0].f, g.dim());
        } else if f.pairs.is_empty() && !g.pairs.is_empty() {
            let last = pairs.len() - 1;
            pairs[last].f = append(&pairs[last].f, f.dim());
        }
        self.reduce(RigidTuple { k: k as u8, pairs })
    }
}

/// `𝔠X` truncated at `d`, for `X` whose nondegenerate simplices of positive
/// dimension form an acyclic graph from first to last vertex.
pub struct Rigidification {
    x: SimplicialSet,
    d: usize,
    /// Nondegenerate `(m, s, last vertex)` by first vertex.
    out: Vec<Vec<(usize, u32, u32)>>,
    epis: HashMap<(usize, usize), Vec<BoxMorphism>>,
}

pub fn rigidification(x: &SimplicialSet, d: usize, cfg: &Config) -> Result<Rigidification> {
    Rigidification::new(x.clone(), d, cfg)
}

impl Rigidification {
    pub fn new(x: SimplicialSet, d: usize, cfg: &Config) -> Result<Self> {
        if x.max_dim() < d + 1 {
            return Err(Error::Truncation(format!(
                "cubes of dimension {d} need simplices up to dimension {}, the set stops at {}",
                d + 1,
                x.max_dim()
            )));
        }
        let nv = x.count(0);
        let mut out = vec![Vec::new(); nv];
        let mut total = 0;
        for m in 1..=d + 1 {
            for s in x.nondegenerate(m) {
                let v = x.vertices(m, s);
                out[v[0] as usize].push((m, s, v[m]));
                total += 1;
            }
        }
        cfg.check("nondegenerate simplices", total)?;
        // Kahn's algorithm on first → last vertex
        let mut indeg = vec![0usize; nv];
        for o in &out {
            for &(_, _, e) in o {
                indeg[e as usize] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(_, _, e) in &out[v] {
                indeg[e as usize] -= 1;
                if indeg[e as usize] == 0 {
                    queue.push(e as usize);
                }
            }
        }
        if seen < nv {
            return domain("nondegenerate simplices form a cycle; the mapping spaces would be infinite");
        }
        let mut epis = HashMap::new();
        for k in 0..=d {
            for j in 0..=k {
                epis.insert((k, j), epimorphisms(k, j));
            }
        }
        Ok(Rigidification { x, d, out, epis })
    }

    pub fn simplicial_set(&self) -> &SimplicialSet {
        &self.x
    }

    pub fn ops(&self) -> TupleOps<'_> {
        TupleOps::new(&self.x)
    }

    /// Every reduced `k`-cube of `𝔠X(a, b)`.
    pub fn enumerate(&self, a: usize, b: usize, k: usize) -> Vec<RigidTuple> {
        if a == b {
            return vec![RigidTuple::empty(k)];
        }
        let mut res = Vec::new();
        let mut stack = Vec::new();
        self.grow(a as u32, b as u32, k, true, &mut stack, &mut res);
        res.sort();
        res
    }

    fn grow(&self, v: u32, b: u32, rest: usize, first: bool, stack: &mut Vec<RigidPair>, res: &mut Vec<RigidTuple>) {
        for &(m, s, e) in &self.out[v as usize] {
            for d in m - 1..=rest {
                for f in &self.epis[&(d, m - 1)] {
                    if !first && d >= 1 && f.ignores(d) {
                        continue;
                    }
                    stack.push(RigidPair { m: m as u8, s, f: f.clone() });
                    if e == b {
                        if d == rest {
                            res.push(RigidTuple {
                                k: (stack.iter().map(|p| p.f.src()).sum::<usize>()) as u8,
                                pairs: stack.iter().rev().cloned().collect(),
                            });
                        }
                    } else {
                        self.grow(e, b, rest - d, false, stack, res);
                    }
                    stack.pop();
                }
            }
        }
    }
}

impl CubicalCategory for Rigidification {
    type Cube = RigidTuple;

    fn object_count(&self) -> usize {
        self.x.count(0)
    }

    fn object_name(&self, a: usize) -> String {
        self.x.name(0, a as u32)
    }

    fn truncation(&self) -> usize {
        self.d
    }

    fn cubes(&self, a: usize, b: usize, k: usize, cfg: &Config) -> Result<Vec<RigidTuple>> {
        let v = self.enumerate(a, b, k);
        cfg.check("rigid tuples", v.len())?;
        Ok(v)
    }

    fn contains(&self, a: usize, b: usize, k: usize, c: &RigidTuple) -> bool {
        let ops = self.ops();
        if c.dim() != k || k > self.d || !ops.is_wellformed(c) {
            return false;
        }
        let ends = if c.pairs.is_empty() {
            a == b
        } else {
            ops.source(c) == Some(a as u32) && ops.target(c) == Some(b as u32)
        };
        ends && ops.reduce(c.clone()) == *c
    }

    fn face(&self, _a: usize, _b: usize, _k: usize, c: &RigidTuple, i: usize, eps: u8) -> RigidTuple {
        self.ops().face(c, i, eps)
    }

    fn degen(&self, _a: usize, _b: usize, _k: usize, c: &RigidTuple, i: usize) -> RigidTuple {
        self.ops().degen(c, i)
    }

    fn conn(&self, _a: usize, _b: usize, _k: usize, c: &RigidTuple, i: usize, eps: u8) -> RigidTuple {
        self.ops().conn(c, i, eps)
    }

    fn identity(&self, _a: usize) -> RigidTuple {
        RigidTuple::empty(0)
    }

    fn compose(&self, _a: usize, _b: usize, _c: usize, _j: usize, g: &RigidTuple, _k: usize, f: &RigidTuple) -> RigidTuple {
        self.ops().concat(g, f)
    }

    fn cube_name(&self, _a: usize, _b: usize, _k: usize, c: &RigidTuple) -> String {
        if c.pairs.is_empty() {
            return format!("id^{}", c.k);
        }
        let parts: Vec<String> = c
            .pairs
            .iter()
            .map(|p| format!("({}, {})", self.x.name(p.m as usize, p.s), p.f))
            .collect();
        format!("({})", parts.join(", "))
    }
}
