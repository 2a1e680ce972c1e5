//! Truncated cubical categories: categories enriched in cubical sets under
//! the geometric product, known through their cubes up to a truncation.
//!
//! A `j`-cube `g ∈ C(b, c)` and a `k`-cube `f ∈ C(a, b)` compose to a
//! `(j+k)`-cube of `C(a, c)` whose first `j` coordinates come from `g`.

mod cotensor;
mod finite;
mod graph;
mod ho;
mod natural;
mod tabulated;

pub use cotensor::{verify_cotensor, CotensorWitness, GraphCotensor};
pub use finite::{Arrow, FiniteCategory};
pub use graph::{
    connection_homotopy_check, graph_cubical_category, ConnectionStep, CotensorTower, GraphCategory,
};
pub use ho::{
    is_homotopy_equivalence_enriched, ho, verify_equivalence, EnrichedEquivalence, EquivalenceWitness, Ho,
    ZigZag,
};
pub use natural::{
    postcomposition_homotopy, precomposition_homotopy, verify_natural_transformation, ArrowProduct,
    NaturalTransformation,
};
pub use tabulated::{sk0, suspension, TabulatedCategory};

use crate::cset::{CubeModel, CubicalSet};
use crate::cube::{BoxMorphism, Generator};
use crate::error::{domain, Result};
use crate::exec::{map_ordered, Config};
use crate::report::{Check, Verdict};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

pub trait CubicalCategory: Sync {
    type Cube: Clone + Eq + Hash + Debug + Send + Sync;

    fn object_count(&self) -> usize;
    fn object_name(&self, a: usize) -> String;
    /// Cubes above this dimension are not represented.
    fn truncation(&self) -> usize;

    fn cubes(&self, a: usize, b: usize, k: usize, cfg: &Config) -> Result<Vec<Self::Cube>>;
    fn contains(&self, a: usize, b: usize, k: usize, c: &Self::Cube) -> bool;
    fn face(&self, a: usize, b: usize, k: usize, c: &Self::Cube, i: usize, eps: u8) -> Self::Cube;
    fn degen(&self, a: usize, b: usize, k: usize, c: &Self::Cube, i: usize) -> Self::Cube;
    fn conn(&self, a: usize, b: usize, k: usize, c: &Self::Cube, i: usize, eps: u8) -> Self::Cube;
    fn identity(&self, a: usize) -> Self::Cube;
    #[allow(clippy::too_many_arguments)]
    fn compose(
        &self,
        a: usize,
        b: usize,
        c: usize,
        j: usize,
        g: &Self::Cube,
        k: usize,
        f: &Self::Cube,
    ) -> Self::Cube;

    fn cube_name(&self, _a: usize, _b: usize, _k: usize, c: &Self::Cube) -> String {
        format!("{c:?}")
    }
}

/// `c·(g_1 ∘ … ∘ g_r)`, applying `g_1` first.
pub fn act_word<C: CubicalCategory>(
    cat: &C,
    a: usize,
    b: usize,
    k: usize,
    c: &C::Cube,
    word: &[Generator],
) -> Option<(usize, C::Cube)> {
    let (mut k, mut c) = (k, c.clone());
    for g in word {
        if g.source_dim(k)? > cat.truncation() {
            return None;
        }
        let src = g.source_dim(k)?;
        c = match *g {
            Generator::Face { i, eps } => cat.face(a, b, k, &c, i as usize, eps),
            Generator::Degen { i } => cat.degen(a, b, k, &c, i as usize),
            Generator::Conn { i, eps } => cat.conn(a, b, k, &c, i as usize, eps),
        };
        k = src;
    }
    Some((k, c))
}

/// `c·μ` for a box morphism `μ: [1]^m → [1]^k`.
pub fn act_morphism<C: CubicalCategory>(
    cat: &C,
    a: usize,
    b: usize,
    c: &C::Cube,
    mu: &BoxMorphism,
) -> Option<C::Cube> {
    act_word(cat, a, b, mu.dst(), c, &mu.word()).map(|(_, c)| c)
}

/// `id_a` degenerated to a `k`-cube.
pub fn degenerate_identity<C: CubicalCategory>(cat: &C, a: usize, k: usize) -> C::Cube {
    (0..k).fold(cat.identity(a), |c, d| cat.degen(a, a, d, &c, 1))
}

struct HomAdapter<'a, C: CubicalCategory> {
    cat: &'a C,
    a: usize,
    b: usize,
    cfg: Config,
}

impl<C: CubicalCategory> CubeModel for HomAdapter<'_, C> {
    type Cube = C::Cube;

    fn cubes(&self, k: usize) -> Result<Vec<C::Cube>> {
        self.cat.cubes(self.a, self.b, k, &self.cfg)
    }

    fn face(&self, k: usize, c: &C::Cube, i: usize, eps: u8) -> C::Cube {
        self.cat.face(self.a, self.b, k, c, i, eps)
    }

    fn degen(&self, k: usize, c: &C::Cube, i: usize) -> C::Cube {
        self.cat.degen(self.a, self.b, k, c, i)
    }

    fn conn(&self, k: usize, c: &C::Cube, i: usize, eps: u8) -> C::Cube {
        self.cat.conn(self.a, self.b, k, c, i, eps)
    }

    fn name(&self, k: usize, c: &C::Cube) -> Option<String> {
        Some(self.cat.cube_name(self.a, self.b, k, c))
    }
}

/// A mapping space `C(a, b)` tabulated as a cubical set.
pub struct MappingSpace<X> {
    pub set: CubicalSet,
    pub cubes: Vec<Vec<X>>,
    index: Vec<HashMap<X, u32>>,
}

impl<X: Clone + Eq + Hash> MappingSpace<X> {
    pub fn index_of(&self, k: usize, c: &X) -> Option<u32> {
        self.index.get(k)?.get(c).copied()
    }

    pub fn cube(&self, k: usize, i: u32) -> &X {
        &self.cubes[k][i as usize]
    }
}

/// `C(a, b)` truncated at `d` (at most the truncation of `C`).
pub fn mapping_space<C: CubicalCategory>(
    cat: &C,
    a: usize,
    b: usize,
    d: usize,
    cfg: &Config,
) -> Result<MappingSpace<C::Cube>> {
    let d = d.min(cat.truncation());
    let (set, cubes) = CubicalSet::build(&HomAdapter { cat, a, b, cfg: *cfg }, d, cfg)?;
    let index = cubes
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect())
        .collect();
    Ok(MappingSpace { set, cubes, index })
}

/// A category with every mapping space tabulated up to `d`; cubes are
/// indices into the tabulated sets.
pub struct Materialized<'a, C: CubicalCategory> {
    pub inner: &'a C,
    pub spaces: Vec<MappingSpace<C::Cube>>,
    d: usize,
}

impl<'a, C: CubicalCategory> Materialized<'a, C> {
    pub fn new(inner: &'a C, d: usize, cfg: &Config) -> Result<Self> {
        let n = inner.object_count();
        let d = d.min(inner.truncation());
        let mut spaces = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                spaces.push(mapping_space(inner, a, b, d, cfg)?);
            }
        }
        Ok(Materialized { inner, spaces, d })
    }

    pub fn space(&self, a: usize, b: usize) -> &MappingSpace<C::Cube> {
        &self.spaces[a * self.inner.object_count() + b]
    }
}

impl<C: CubicalCategory> CubicalCategory for Materialized<'_, C> {
    type Cube = u32;

    fn object_count(&self) -> usize {
        self.inner.object_count()
    }

    fn object_name(&self, a: usize) -> String {
        self.inner.object_name(a)
    }

    fn truncation(&self) -> usize {
        self.d
    }

    fn cubes(&self, a: usize, b: usize, k: usize, _cfg: &Config) -> Result<Vec<u32>> {
        Ok((0..self.space(a, b).set.count(k) as u32).collect())
    }

    fn contains(&self, a: usize, b: usize, k: usize, c: &u32) -> bool {
        k <= self.d && (*c as usize) < self.space(a, b).set.count(k)
    }

    fn face(&self, a: usize, b: usize, k: usize, c: &u32, i: usize, eps: u8) -> u32 {
        self.space(a, b).set.face(k, *c, i, eps)
    }

    fn degen(&self, a: usize, b: usize, k: usize, c: &u32, i: usize) -> u32 {
        self.space(a, b).set.degen(k, *c, i)
    }

    fn conn(&self, a: usize, b: usize, k: usize, c: &u32, i: usize, eps: u8) -> u32 {
        self.space(a, b).set.conn(k, *c, i, eps)
    }

    fn identity(&self, a: usize) -> u32 {
        self.space(a, a)
            .index_of(0, &self.inner.identity(a))
            .expect("identity is a 0-cube")
    }

    fn compose(&self, a: usize, b: usize, c: usize, j: usize, g: &u32, k: usize, f: &u32) -> u32 {
        let h = self.inner.compose(
            a,
            b,
            c,
            j,
            self.space(b, c).cube(j, *g),
            k,
            self.space(a, b).cube(k, *f),
        );
        self.space(a, c)
            .index_of(j + k, &h)
            .expect("composite lies in the mapping space")
    }

    fn cube_name(&self, a: usize, b: usize, k: usize, c: &u32) -> String {
        self.space(a, b).set.name(k, *c)
    }
}

/// Outcome of an exhaustive coherence check.
#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub checked: usize,
    pub failures: Vec<String>,
    pub truncation: usize,
}

impl CoherenceReport {
    pub fn verdict(&self) -> Verdict {
        match self.failures.first() {
            None => Verdict::Pass,
            Some(f) => Verdict::Fail(format!("{} failure(s), first: {f}", self.failures.len())),
        }
    }

    pub fn check(&self, name: &str) -> Check {
        Check::new(format!("{name} (verified within truncation {})", self.truncation), self.verdict())
    }

    fn merge(parts: Vec<(usize, Vec<String>)>, truncation: usize) -> Self {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (c, f) in parts {
            checked += c;
            failures.extend(f);
        }
        CoherenceReport {
            checked,
            failures,
            truncation,
        }
    }
}

const MAX_REPORTED: usize = 20;

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_REPORTED {
            self.failures.push(msg());
        }
    }
}

/// Exhaustive check, within the truncation, that composition is a map out
/// of the geometric product and that the associativity and unit diagrams
/// commute.
pub fn check_axioms<C: CubicalCategory>(cat: &C, cfg: &Config) -> Result<CoherenceReport> {
    let d = cat.truncation();
    let m = Materialized::new(cat, d, cfg)?;
    let n = cat.object_count();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                triples.push((a, b, c));
            }
        }
    }
    let name = |a: usize, b: usize, k: usize, x: u32| m.cube_name(a, b, k, &x);
    let comp_parts = map_ordered(cfg.exec, &triples, |&(a, b, c)| {
        let mut t = Tally::new();
        let (sg, sf) = (&m.space(b, c).set, &m.space(a, b).set);
        for j in 0..=d {
            for k in 0..=d - j {
                for g in 0..sg.count(j) as u32 {
                    for f in 0..sf.count(k) as u32 {
                        let raw = cat.compose(a, b, c, j, sg_cube(&m, b, c, j, g), k, sg_cube(&m, a, b, k, f));
                        let ok = cat.contains(a, c, j + k, &raw) && m.space(a, c).index_of(j + k, &raw).is_some();
                        t.expect(ok, || format!("{} ∘ {} is not a cube of the mapping space", name(b, c, j, g), name(a, b, k, f)));
                        if !ok {
                            continue;
                        }
                        let h = m.space(a, c).index_of(j + k, &raw).unwrap();
                        let hs = &m.space(a, c).set;
                        for i in 1..=j + k {
                            for e in 0..2u8 {
                                let lhs = hs.face(j + k, h, i, e);
                                let rhs = if i <= j {
                                    m.compose(a, b, c, j - 1, &sg.face(j, g, i, e), k, &f)
                                } else {
                                    m.compose(a, b, c, j, &g, k - 1, &sf.face(k, f, i - j, e))
                                };
                                t.expect(lhs == rhs, || {
                                    format!("face ∂({i},{e}) of {} ∘ {}", name(b, c, j, g), name(a, b, k, f))
                                });
                            }
                        }
                        if j + k < d {
                            for i in 1..=j + k + 1 {
                                let lhs = hs.degen(j + k, h, i);
                                let rhs = if i <= j {
                                    m.compose(a, b, c, j + 1, &sg.degen(j, g, i), k, &f)
                                } else {
                                    m.compose(a, b, c, j, &g, k + 1, &sf.degen(k, f, i - j))
                                };
                                t.expect(lhs == rhs, || {
                                    format!("degeneracy σ({i}) of {} ∘ {}", name(b, c, j, g), name(a, b, k, f))
                                });
                            }
                            for i in 1..=j + k {
                                for e in 0..2u8 {
                                    let lhs = hs.conn(j + k, h, i, e);
                                    let rhs = if i <= j {
                                        m.compose(a, b, c, j + 1, &sg.conn(j, g, i, e), k, &f)
                                    } else {
                                        m.compose(a, b, c, j, &g, k + 1, &sf.conn(k, f, i - j, e))
                                    };
                                    t.expect(lhs == rhs, || {
                                        format!("connection γ({i},{e}) of {} ∘ {}", name(b, c, j, g), name(a, b, k, f))
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        (t.checked, t.failures)
    })
    .into_iter()
    .collect::<Vec<_>>();
    let mut report = CoherenceReport::merge(comp_parts, d);
    if !report.failures.is_empty() {
        return Ok(report);
    }
    let unit_parts = map_ordered(cfg.exec, &triples[..n * n], |&(_, a, b)| {
        let mut t = Tally::new();
        let s = &m.space(a, b).set;
        let (ia, ib) = (m.identity(a), m.identity(b));
        for k in 0..=d {
            for f in 0..s.count(k) as u32 {
                t.expect(m.compose(a, b, b, 0, &ib, k, &f) == f, || format!("id ∘ {} ≠ itself", name(a, b, k, f)));
                t.expect(m.compose(a, a, b, k, &f, 0, &ia) == f, || format!("{} ∘ id ≠ itself", name(a, b, k, f)));
            }
        }
        (t.checked, t.failures)
    });
    let mut quads = Vec::new();
    for &(a, b, c) in &triples {
        for e in 0..n {
            quads.push((a, b, c, e));
        }
    }
    let assoc_parts = map_ordered(cfg.exec, &quads, |&(a, b, c, e)| {
        let mut t = Tally::new();
        let (sh, sg, sf) = (&m.space(c, e).set, &m.space(b, c).set, &m.space(a, b).set);
        for i in 0..=d {
            for j in 0..=d - i {
                for k in 0..=d - i - j {
                    for h in 0..sh.count(i) as u32 {
                        for g in 0..sg.count(j) as u32 {
                            let hg = m.compose(b, c, e, i, &h, j, &g);
                            for f in 0..sf.count(k) as u32 {
                                let l = m.compose(a, b, e, i + j, &hg, k, &f);
                                let gf = m.compose(a, b, c, j, &g, k, &f);
                                let r = m.compose(a, c, e, i, &h, j + k, &gf);
                                t.expect(l == r, || {
                                    format!(
                                        "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                                        name(c, e, i, h),
                                        name(b, c, j, g),
                                        name(a, b, k, f),
                                        name(c, e, i, h),
                                        name(b, c, j, g),
                                        name(a, b, k, f)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
        (t.checked, t.failures)
    });
    let rest = CoherenceReport::merge(unit_parts.into_iter().chain(assoc_parts).collect(), d);
    report.checked += rest.checked;
    report.failures.extend(rest.failures);
    Ok(report)
}

fn sg_cube<'m, C: CubicalCategory>(m: &'m Materialized<'_, C>, a: usize, b: usize, k: usize, i: u32) -> &'m C::Cube {
    m.space(a, b).cube(k, i)
}

type CubeFn<'a, X, Y> = Box<dyn Fn(usize, usize, usize, &X) -> Y + Sync + 'a>;

/// A cubical functor `C → D`: an object assignment and, per pair, a map of
/// mapping spaces given cube by cube.
pub struct CubicalFunctor<'a, X, Y> {
    pub objects: Vec<usize>,
    map: CubeFn<'a, X, Y>,
}

impl<'a, X, Y> CubicalFunctor<'a, X, Y> {
    pub fn new(objects: Vec<usize>, map: impl Fn(usize, usize, usize, &X) -> Y + Sync + 'a) -> Self {
        CubicalFunctor {
            objects,
            map: Box::new(map),
        }
    }

    pub fn apply(&self, a: usize, b: usize, k: usize, c: &X) -> Y {
        (self.map)(a, b, k, c)
    }
}

impl<'x, X: Clone + Eq + Hash + Debug + Send + Sync> CubicalFunctor<'x, X, X> {
    pub fn identity(n: usize) -> Self {
        CubicalFunctor::new((0..n).collect(), |_, _, _, c: &X| c.clone())
    }
}

/// `G ∘ F`.
pub fn compose_functors<'a, X, Y, Z>(
    g: &'a CubicalFunctor<'a, Y, Z>,
    f: &'a CubicalFunctor<'a, X, Y>,
) -> CubicalFunctor<'a, X, Z> {
    let objects = f.objects.iter().map(|&o| g.objects[o]).collect();
    CubicalFunctor::new(objects, move |a, b, k, c| {
        g.apply(f.objects[a], f.objects[b], k, &f.apply(a, b, k, c))
    })
}

/// Check that `F: C → D` preserves the cubical structure, identities and
/// composition on every cube within the common truncation.
pub fn verify_functor<C: CubicalCategory, D: CubicalCategory>(
    src: &C,
    dst: &D,
    f: &CubicalFunctor<'_, C::Cube, D::Cube>,
    cfg: &Config,
) -> Result<CoherenceReport> {
    let n = src.object_count();
    if f.objects.len() != n || f.objects.iter().any(|&o| o >= dst.object_count()) {
        return domain("functor object assignment does not match the categories");
    }
    let d = src.truncation().min(dst.truncation());
    let m = Materialized::new(src, d, cfg)?;
    let fo = &f.objects;
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            pairs.push((a, b));
        }
    }
    let local = map_ordered(cfg.exec, &pairs, |&(a, b)| {
        let mut t = Tally::new();
        let sp = m.space(a, b);
        let (fa, fb) = (fo[a], fo[b]);
        for k in 0..=d {
            for (i, x) in sp.cubes[k].iter().enumerate() {
                let y = f.apply(a, b, k, x);
                let nm = || src.cube_name(a, b, k, x);
                t.expect(dst.contains(fa, fb, k, &y), || format!("F({}) is not a cube", nm()));
                for p in 1..=k {
                    for e in 0..2u8 {
                        let lhs = dst.face(fa, fb, k, &y, p, e);
                        let rhs = f.apply(a, b, k - 1, sp.cube(k - 1, sp.set.face(k, i as u32, p, e)));
                        t.expect(lhs == rhs, || format!("F does not commute with ∂({p},{e}) on {}", nm()));
                    }
                }
                if k < d {
                    for p in 1..=k + 1 {
                        let lhs = dst.degen(fa, fb, k, &y, p);
                        let rhs = f.apply(a, b, k + 1, sp.cube(k + 1, sp.set.degen(k, i as u32, p)));
                        t.expect(lhs == rhs, || format!("F does not commute with σ({p}) on {}", nm()));
                    }
                    for p in 1..=k {
                        for e in 0..2u8 {
                            let lhs = dst.conn(fa, fb, k, &y, p, e);
                            let rhs = f.apply(a, b, k + 1, sp.cube(k + 1, sp.set.conn(k, i as u32, p, e)));
                            t.expect(lhs == rhs, || format!("F does not commute with γ({p},{e}) on {}", nm()));
                        }
                    }
                }
            }
        }
        if a == b {
            let id = f.apply(a, a, 0, &src.identity(a));
            t.expect(id == dst.identity(fa), || format!("F(id_{}) ≠ id", src.object_name(a)));
        }
        (t.checked, t.failures)
    });
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                triples.push((a, b, c));
            }
        }
    }
    let comp = map_ordered(cfg.exec, &triples, |&(a, b, c)| {
        let mut t = Tally::new();
        let (sg, sf) = (m.space(b, c), m.space(a, b));
        for j in 0..=d {
            for k in 0..=d - j {
                for g in &sg.cubes[j] {
                    let fg = f.apply(b, c, j, g);
                    for x in &sf.cubes[k] {
                        let lhs = f.apply(a, c, j + k, &src.compose(a, b, c, j, g, k, x));
                        let rhs = dst.compose(fo[a], fo[b], fo[c], j, &fg, k, &f.apply(a, b, k, x));
                        t.expect(lhs == rhs, || {
                            format!(
                                "F({} ∘ {}) ≠ F({}) ∘ F({})",
                                src.cube_name(b, c, j, g),
                                src.cube_name(a, b, k, x),
                                src.cube_name(b, c, j, g),
                                src.cube_name(a, b, k, x)
                            )
                        });
                    }
                }
            }
        }
        (t.checked, t.failures)
    });
    Ok(CoherenceReport::merge(local.into_iter().chain(comp).collect(), d))
}

#[cfg(test)]
mod tests;
