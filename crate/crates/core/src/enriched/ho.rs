use super::finite::{Arrow, FiniteCategory};
use super::CubicalCategory;
use crate::cset::UnionFind;
use crate::error::{domain, Error, Result};
use crate::exec::Config;
use crate::report::Verdict;
use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

/// The homotopy category: `π₀` of every mapping space with the induced
/// composition.
#[derive(Clone, Debug)]
pub struct Ho<X> {
    pub category: FiniteCategory,
    /// Per pair `a·n + b`: the arrow of each 0-cube.
    index: Vec<HashMap<X, u32>>,
    /// A representative 0-cube per arrow.
    pub reps: Vec<X>,
}

impl<X: Clone + Eq + Hash> Ho<X> {
    pub fn class_of(&self, a: usize, b: usize, f: &X) -> Option<u32> {
        self.index[a * self.category.object_count() + b].get(f).copied()
    }
}

/// Path components of `C(a, b)` together with its 1-skeleton.
pub(crate) struct Components<X> {
    pub vertices: Vec<X>,
    pub index: HashMap<X, u32>,
    pub label: Vec<usize>,
    pub classes: usize,
    /// `(neighbour, 1-cube, forward)` per vertex.
    adj: Vec<Vec<(u32, u32, bool)>>,
    edges: Vec<X>,
}

impl<X: Clone + Eq + Hash + Debug> Components<X> {
    pub fn new<C: CubicalCategory<Cube = X>>(cat: &C, a: usize, b: usize, cfg: &Config) -> Result<Self> {
        let vertices = cat.cubes(a, b, 0, cfg)?;
        let index: HashMap<X, u32> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let edges = if cat.truncation() >= 1 {
            cat.cubes(a, b, 1, cfg)?
        } else {
            Vec::new()
        };
        let mut uf = UnionFind::new(vertices.len());
        let mut adj = vec![Vec::new(); vertices.len()];
        for (e, c) in edges.iter().enumerate() {
            let s = index[&cat.face(a, b, 1, c, 1, 0)];
            let t = index[&cat.face(a, b, 1, c, 1, 1)];
            uf.union(s as usize, t as usize);
            if s != t {
                adj[s as usize].push((t, e as u32, true));
                adj[t as usize].push((s, e as u32, false));
            }
        }
        let label = uf.labels();
        let classes = label.iter().copied().max().map_or(0, |m| m + 1);
        Ok(Components {
            vertices,
            index,
            label,
            classes,
            adj,
            edges,
        })
    }

    pub fn class(&self, v: &X) -> Option<usize> {
        self.index.get(v).map(|&i| self.label[i as usize])
    }

    /// A shortest zig-zag from `from` to `to`.
    pub fn path(&self, from: &X, to: &X) -> Option<ZigZag<X>> {
        let (s, t) = (*self.index.get(from)?, *self.index.get(to)?);
        let mut prev: Vec<Option<(u32, u32, bool)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[s as usize] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &(w, e, fwd) in &self.adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    prev[w as usize] = Some((v, e, fwd));
                    queue.push_back(w);
                }
            }
        }
        if !seen[t as usize] {
            return None;
        }
        let mut steps = Vec::new();
        let mut v = t;
        while let Some((u, e, fwd)) = prev[v as usize] {
            steps.push((self.edges[e as usize].clone(), fwd));
            v = u;
        }
        steps.reverse();
        Some(ZigZag {
            start: from.clone(),
            steps,
        })
    }
}

/// `Ho C`. The induced composition is checked on every pair of 0-cubes.
pub fn ho<C: CubicalCategory>(cat: &C, cfg: &Config) -> Result<Ho<C::Cube>> {
    let n = cat.object_count();
    let mut comps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            comps.push(Components::new(cat, a, b, cfg)?);
        }
    }
    let mut offset = vec![0u32; n * n];
    let mut arrows = Vec::new();
    let mut reps = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let p = a * n + b;
            offset[p] = arrows.len() as u32;
            let c = &comps[p];
            let mut first = vec![None; c.classes];
            for (v, &l) in c.label.iter().enumerate() {
                first[l].get_or_insert(v);
            }
            for v in first.into_iter().flatten() {
                arrows.push(Arrow {
                    src: a as u32,
                    dst: b as u32,
                    name: format!("[{}]", cat.cube_name(a, b, 0, &c.vertices[v])),
                });
                reps.push(c.vertices[v].clone());
            }
        }
    }
    let arrow_of = |a: usize, b: usize, v: &C::Cube| -> Option<u32> {
        comps[a * n + b].class(v).map(|l| offset[a * n + b] + l as u32)
    };
    let mut ids = Vec::with_capacity(n);
    for a in 0..n {
        match arrow_of(a, a, &cat.identity(a)) {
            Some(i) => ids.push(i),
            None => return domain(format!("identity of {} is not a 0-cube", cat.object_name(a))),
        }
    }
    let mut table = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut seen: HashMap<(u32, u32), u32> = HashMap::new();
                for g in &comps[b * n + c].vertices {
                    let gc = arrow_of(b, c, g).unwrap();
                    for f in &comps[a * n + b].vertices {
                        let fc = arrow_of(a, b, f).unwrap();
                        let h = cat.compose(a, b, c, 0, g, 0, f);
                        let Some(hc) = arrow_of(a, c, &h) else {
                            return domain("composite of 0-cubes is not a 0-cube");
                        };
                        if let Some(&old) = seen.get(&(gc, fc)) {
                            if old != hc {
                                return Err(Error::Truncation(format!(
                                    "composition on π₀ is not well defined at {} ∘ {}",
                                    cat.cube_name(b, c, 0, g),
                                    cat.cube_name(a, b, 0, f)
                                )));
                            }
                        } else {
                            seen.insert((gc, fc), hc);
                            table.push((gc, fc, hc));
                        }
                    }
                }
            }
        }
    }
    let names = (0..n).map(|a| cat.object_name(a)).collect();
    let category = FiniteCategory::new(names, arrows, ids, &table)?;
    let index = comps
        .into_iter()
        .enumerate()
        .map(|(p, c)| {
            c.vertices
                .iter()
                .zip(&c.label)
                .map(|(v, &l)| (v.clone(), offset[p] + l as u32))
                .collect()
        })
        .collect();
    Ok(Ho { category, index, reps })
}

/// A zig-zag of 1-cubes. A forward step `h` goes from `h∂_{1,0}` to
/// `h∂_{1,1}`; a backward step the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZag<X> {
    pub start: X,
    pub steps: Vec<(X, bool)>,
}

impl<X: Clone + Eq> ZigZag<X> {
    pub fn constant(x: X) -> Self {
        ZigZag {
            start: x,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The endpoint, if every step is a 1-cube of `C(a, b)` continuing the
    /// previous one.
    pub fn end<C: CubicalCategory<Cube = X>>(&self, cat: &C, a: usize, b: usize) -> Option<X> {
        if !cat.contains(a, b, 0, &self.start) {
            return None;
        }
        let mut cur = self.start.clone();
        for (h, fwd) in &self.steps {
            if !cat.contains(a, b, 1, h) {
                return None;
            }
            let (s, t) = (cat.face(a, b, 1, h, 1, 0), cat.face(a, b, 1, h, 1, 1));
            let (s, t) = if *fwd { (s, t) } else { (t, s) };
            if s != cur {
                return None;
            }
            cur = t;
        }
        Some(cur)
    }
}

/// An inverse `g: b → a` with zig-zags `gf ⇝ id_a` and `fg ⇝ id_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness<X> {
    pub inverse: X,
    pub gf: ZigZag<X>,
    pub fg: ZigZag<X>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnrichedEquivalence<X> {
    Yes(EquivalenceWitness<X>),
    No(String),
    Unknown(String),
}

impl<X> EnrichedEquivalence<X> {
    pub fn verdict(&self) -> Verdict {
        match self {
            EnrichedEquivalence::Yes(_) => Verdict::Pass,
            EnrichedEquivalence::No(c) => Verdict::Fail(c.clone()),
            EnrichedEquivalence::Unknown(r) => Verdict::Inconclusive(r.clone()),
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, EnrichedEquivalence::Yes(_))
    }
}

/// Check a witness that `f ∈ C(a, b)_0` is a homotopy equivalence.
pub fn verify_equivalence<C: CubicalCategory>(
    cat: &C,
    a: usize,
    b: usize,
    f: &C::Cube,
    w: &EquivalenceWitness<C::Cube>,
) -> Verdict {
    if !cat.contains(a, b, 0, f) || !cat.contains(b, a, 0, &w.inverse) {
        return Verdict::Fail("morphism or inverse is not a 0-cube".into());
    }
    if cat.truncation() == 0 && !(w.gf.is_empty() && w.fg.is_empty()) {
        return Verdict::Fail("zig-zags need 1-cubes".into());
    }
    let gf = cat.compose(a, b, a, 0, &w.inverse, 0, f);
    let fg = cat.compose(b, a, b, 0, f, 0, &w.inverse);
    let ok_a = w.gf.start == gf && w.gf.end(cat, a, a) == Some(cat.identity(a));
    let ok_b = w.fg.start == fg && w.fg.end(cat, b, b) == Some(cat.identity(b));
    match (ok_a, ok_b) {
        (true, true) => Verdict::Pass,
        (false, _) => Verdict::Fail("zig-zag from g∘f does not reach the identity".into()),
        _ => Verdict::Fail("zig-zag from f∘g does not reach the identity".into()),
    }
}

/// Decide whether `f ∈ C(a, b)_0` is a homotopy equivalence. `No` means
/// `[f]` has no inverse in `Ho C`; zig-zags longer than `bound` give
/// `Unknown`.
pub fn is_homotopy_equivalence_enriched<C: CubicalCategory>(
    cat: &C,
    a: usize,
    b: usize,
    f: &C::Cube,
    bound: usize,
    cfg: &Config,
) -> Result<EnrichedEquivalence<C::Cube>> {
    if !cat.contains(a, b, 0, f) {
        return domain("not a 0-cube of the mapping space");
    }
    let back = Components::new(cat, b, a, cfg)?;
    let endo_a = Components::new(cat, a, a, cfg)?;
    let endo_b = Components::new(cat, b, b, cfg)?;
    let (ia, ib) = (cat.identity(a), cat.identity(b));
    let (ca, cb) = (endo_a.class(&ia), endo_b.class(&ib));
    let mut best: Option<EquivalenceWitness<C::Cube>> = None;
    let mut inverse_found = false;
    for g in &back.vertices {
        let gf = cat.compose(a, b, a, 0, g, 0, f);
        let fg = cat.compose(b, a, b, 0, f, 0, g);
        if endo_a.class(&gf) != ca || endo_b.class(&fg) != cb {
            continue;
        }
        inverse_found = true;
        let (Some(p), Some(q)) = (endo_a.path(&gf, &ia), endo_b.path(&fg, &ib)) else {
            continue;
        };
        let len = p.len().max(q.len());
        if best.as_ref().is_none_or(|w| w.gf.len().max(w.fg.len()) > len) {
            best = Some(EquivalenceWitness {
                inverse: g.clone(),
                gf: p,
                fg: q,
            });
        }
        if len == 0 {
            break;
        }
    }
    Ok(match best {
        Some(w) if w.gf.len().max(w.fg.len()) <= bound => EnrichedEquivalence::Yes(w),
        Some(w) => EnrichedEquivalence::Unknown(format!(
            "an inverse exists but the shortest zig-zags have length {} > {bound}",
            w.gf.len().max(w.fg.len())
        )),
        None if inverse_found => EnrichedEquivalence::Unknown("no zig-zag found".into()),
        None if cat.truncation() == 0 => {
            EnrichedEquivalence::Unknown("truncation 0 does not determine π₀ of the mapping spaces".into())
        }
        None => EnrichedEquivalence::No(format!(
            "[{}] has no inverse in Ho: no 0-cube g of {}({}, {}) has gf ≃ id and fg ≃ id",
            cat.cube_name(a, b, 0, f),
            "C",
            cat.object_name(b),
            cat.object_name(a)
        )),
    })
}
