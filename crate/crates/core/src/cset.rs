//! Finite truncated cubical sets with connections.
//!
//! Cubes are indexed per dimension. Operators act on the right: for an
//! `n`-cube `x` and a generator `g` landing in `[1]^n`, `x·g` is a cube of
//! the source dimension of `g`.

use crate::cube::{self, BoxMorphism, Generator};
use crate::error::{domain, Error, Result};
use crate::exec::{map_ordered, Budget, Config, Exec};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicBool, Ordering};

/// A presheaf description from which a [`CubicalSet`] is tabulated.
pub trait CubeModel: Sync {
    type Cube: Clone + Eq + Hash + Send + Sync;

    fn cubes(&self, dim: usize) -> Result<Vec<Self::Cube>>;
    fn face(&self, dim: usize, c: &Self::Cube, i: usize, eps: u8) -> Self::Cube;
    fn degen(&self, dim: usize, c: &Self::Cube, i: usize) -> Self::Cube;
    fn conn(&self, dim: usize, c: &Self::Cube, i: usize, eps: u8) -> Self::Cube;

    fn name(&self, _dim: usize, _c: &Self::Cube) -> Option<String> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalSet {
    max_dim: usize,
    counts: Vec<usize>,
    names: Option<Vec<Vec<String>>>,
    /// `faces[k][2k·x + 2(i-1) + ε]` for `k ≥ 1`.
    faces: Vec<Vec<u32>>,
    /// `degens[k][(k+1)·x + i-1]` for `k < max_dim`.
    degens: Vec<Vec<u32>>,
    /// `conns[k][2k·x + 2(i-1) + ε]` for `k < max_dim`.
    conns: Vec<Vec<u32>>,
    /// For a degenerate cube, a lower cube and generator producing it.
    witness: Vec<Vec<Option<(u32, Generator)>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeRef {
    pub dim: usize,
    pub idx: u32,
}

impl CubicalSet {
    /// Assemble from raw action tables, compute degeneracy witnesses and
    /// (when `cfg.validate`) check every cubical identity.
    pub fn from_raw(
        max_dim: usize,
        counts: Vec<usize>,
        names: Option<Vec<Vec<String>>>,
        faces: Vec<Vec<u32>>,
        degens: Vec<Vec<u32>>,
        conns: Vec<Vec<u32>>,
        cfg: &Config,
    ) -> Result<Self> {
        if counts.len() != max_dim + 1 {
            return domain("cube counts do not match the truncation");
        }
        for k in 0..=max_dim {
            let nf = if k == 0 { 0 } else { 2 * k * counts[k] };
            if faces.get(k).map_or(nf != 0, |f| f.len() != nf) {
                return domain(format!("face table in dimension {k} has the wrong size"));
            }
            if k < max_dim {
                if degens[k].len() != (k + 1) * counts[k] || conns[k].len() != 2 * k * counts[k] {
                    return domain(format!("degeneracy tables in dimension {k} have the wrong size"));
                }
                if degens[k].iter().chain(&conns[k]).any(|&v| v as usize >= counts[k + 1]) {
                    return domain(format!("degeneracy of a {k}-cube out of range"));
                }
            }
            if k >= 1 && faces[k].iter().any(|&v| v as usize >= counts[k - 1]) {
                return domain(format!("face of a {k}-cube out of range"));
            }
        }
        let mut witness: Vec<Vec<Option<(u32, Generator)>>> =
            counts.iter().map(|&c| vec![None; c]).collect();
        for k in 0..max_dim {
            for x in 0..counts[k] {
                for i in 1..=k + 1 {
                    let y = degens[k][(k + 1) * x + i - 1] as usize;
                    witness[k + 1][y].get_or_insert((x as u32, cube::degen(i)));
                }
                for i in 1..=k {
                    for e in 0..2u8 {
                        let y = conns[k][2 * k * x + 2 * (i - 1) + e as usize] as usize;
                        witness[k + 1][y].get_or_insert((x as u32, cube::conn(i, e)));
                    }
                }
            }
        }
        let set = CubicalSet {
            max_dim,
            counts,
            names,
            faces,
            degens,
            conns,
            witness,
        };
        if cfg.validate {
            set.check_identities(cfg.exec)?;
        }
        Ok(set)
    }

    /// Tabulate a model up to dimension `max_dim`. Returns the set and the
    /// model cubes in index order.
    pub fn build<M: CubeModel>(
        model: &M,
        max_dim: usize,
        cfg: &Config,
    ) -> Result<(CubicalSet, Vec<Vec<M::Cube>>)> {
        let mut cubes = Vec::with_capacity(max_dim + 1);
        let mut total = 0usize;
        for k in 0..=max_dim {
            let c = model.cubes(k)?;
            total += c.len();
            cfg.check("cubes", total)?;
            cubes.push(c);
        }
        let index: Vec<HashMap<&M::Cube, u32>> = cubes
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i as u32)).collect())
            .collect();
        for (k, ix) in index.iter().enumerate() {
            if ix.len() != cubes[k].len() {
                return domain(format!("duplicate {k}-cubes in model"));
            }
        }
        let missing = AtomicBool::new(false);
        let look = |k: usize, c: &M::Cube| -> u32 {
            match index[k].get(c) {
                Some(&i) => i,
                None => {
                    missing.store(true, Ordering::Relaxed);
                    0
                }
            }
        };
        let mut faces = vec![Vec::new()];
        let mut degens = Vec::new();
        let mut conns = Vec::new();
        for k in 1..=max_dim {
            let rows = map_ordered(cfg.exec, &cubes[k], |c| {
                let mut row = Vec::with_capacity(2 * k);
                for i in 1..=k {
                    for e in 0..2u8 {
                        row.push(look(k - 1, &model.face(k, c, i, e)));
                    }
                }
                row
            });
            faces.push(rows.concat());
            if missing.load(Ordering::Relaxed) {
                return domain(format!("a face of a {k}-cube is not among the {}-cubes", k - 1));
            }
        }
        for k in 0..max_dim {
            let rows = map_ordered(cfg.exec, &cubes[k], |c| {
                let d: Vec<u32> = (1..=k + 1).map(|i| look(k + 1, &model.degen(k, c, i))).collect();
                let mut g = Vec::with_capacity(2 * k);
                for i in 1..=k {
                    for e in 0..2u8 {
                        g.push(look(k + 1, &model.conn(k, c, i, e)));
                    }
                }
                (d, g)
            });
            if missing.load(Ordering::Relaxed) {
                return domain(format!("a degeneracy of a {k}-cube is not among the {}-cubes", k + 1));
            }
            let (d, g): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
            degens.push(d.concat());
            conns.push(g.concat());
        }
        let names: Option<Vec<Vec<String>>> = cubes
            .iter()
            .enumerate()
            .map(|(k, cs)| cs.iter().map(|c| model.name(k, c)).collect::<Option<Vec<_>>>())
            .collect();
        let counts = cubes.iter().map(Vec::len).collect();
        drop(index);
        let set = CubicalSet::from_raw(max_dim, counts, names, faces, degens, conns, cfg)?;
        Ok((set, cubes))
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

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn name(&self, dim: usize, x: u32) -> String {
        match &self.names {
            Some(n) => n[dim][x as usize].clone(),
            None => format!("{dim}:{x}"),
        }
    }

    pub fn has_names(&self) -> bool {
        self.names.is_some()
    }

    /// Lookup of cubes by name.
    pub fn name_index(&self) -> HashMap<String, CubeRef> {
        let mut m = HashMap::new();
        for k in 0..=self.max_dim {
            for x in 0..self.count(k) as u32 {
                m.insert(self.name(k, x), CubeRef { dim: k, idx: x });
            }
        }
        m
    }

    #[inline]
    pub fn face(&self, dim: usize, x: u32, i: usize, eps: u8) -> u32 {
        self.faces[dim][2 * dim * x as usize + 2 * (i - 1) + eps as usize]
    }

    #[inline]
    pub fn degen(&self, dim: usize, x: u32, i: usize) -> u32 {
        self.degens[dim][(dim + 1) * x as usize + i - 1]
    }

    #[inline]
    pub fn conn(&self, dim: usize, x: u32, i: usize, eps: u8) -> u32 {
        self.conns[dim][2 * dim * x as usize + 2 * (i - 1) + eps as usize]
    }

    /// `x·g`, if defined within the truncation.
    pub fn act(&self, dim: usize, x: u32, g: Generator) -> Option<(usize, u32)> {
        let nd = g.source_dim(dim)?;
        if nd > self.max_dim {
            return None;
        }
        Some(match g {
            Generator::Face { i, eps } => (nd, self.face(dim, x, i as usize, eps)),
            Generator::Degen { i } => (nd, self.degen(dim, x, i as usize)),
            Generator::Conn { i, eps } => (nd, self.conn(dim, x, i as usize, eps)),
        })
    }

    /// `x·(g_1 ∘ … ∘ g_r)`, applying `g_1` first.
    pub fn act_word(&self, dim: usize, x: u32, word: &[Generator]) -> Option<(usize, u32)> {
        word.iter()
            .try_fold((dim, x), |(d, y), &g| self.act(d, y, g))
    }

    pub fn act_morphism(&self, dim: usize, x: u32, m: &BoxMorphism) -> Option<(usize, u32)> {
        if m.dst() != dim {
            return None;
        }
        self.act_word(dim, x, &m.word())
    }

    pub fn faces_of(&self, dim: usize, x: u32) -> &[u32] {
        let w = 2 * dim;
        &self.faces[dim][w * x as usize..w * (x as usize + 1)]
    }

    pub fn is_degenerate(&self, dim: usize, x: u32) -> bool {
        self.witness[dim][x as usize].is_some()
    }

    pub fn witness(&self, dim: usize, x: u32) -> Option<(u32, Generator)> {
        self.witness[dim][x as usize]
    }

    pub fn nondegenerate(&self, dim: usize) -> Vec<u32> {
        (0..self.count(dim) as u32)
            .filter(|&x| !self.is_degenerate(dim, x))
            .collect()
    }

    /// Eilenberg–Zilber decomposition `x = y·e` with `y` nondegenerate and
    /// `e` an epimorphism.
    pub fn ez(&self, dim: usize, x: u32) -> (usize, u32, BoxMorphism) {
        let mut word = Vec::new();
        let (mut d, mut y) = (dim, x);
        while let Some((src, g)) = self.witness[d][y as usize] {
            word.push(g);
            y = src;
            d -= 1;
        }
        word.reverse();
        let e = BoxMorphism::from_word(dim, &word).expect("valid degeneracy word");
        (d, y, e)
    }

    /// The discrete cubical set on the given vertices: every higher cube is
    /// the total degeneracy of a vertex.
    pub fn discrete(names: Vec<String>, max_dim: usize, cfg: &Config) -> Result<CubicalSet> {
        let n = names.len();
        let same = |k: usize, w: usize| (0..n as u32).flat_map(|x| std::iter::repeat(x).take(w * k)).collect::<Vec<_>>();
        let faces = (0..=max_dim).map(|k| same(k, 2)).collect();
        let degens = (0..max_dim).map(|k| (0..n as u32).flat_map(|x| std::iter::repeat(x).take(k + 1)).collect()).collect();
        let conns = (0..max_dim).map(|k| same(k, 2)).collect();
        let names = (0..=max_dim).map(|_| names.clone()).collect();
        CubicalSet::from_raw(max_dim, vec![n; max_dim + 1], Some(names), faces, degens, conns, cfg)
    }

    /// Restriction to dimensions `≤ d`.
    pub fn truncate(&self, d: usize) -> CubicalSet {
        let d = d.min(self.max_dim);
        let mut degens = self.degens[..d].to_vec();
        let mut conns = self.conns[..d].to_vec();
        degens.truncate(d);
        conns.truncate(d);
        CubicalSet {
            max_dim: d,
            counts: self.counts[..=d].to_vec(),
            names: self.names.as_ref().map(|n| n[..=d].to_vec()),
            faces: self.faces[..=d].to_vec(),
            degens,
            conns,
            witness: self.witness[..=d].to_vec(),
        }
    }

    fn check_identities(&self, exec: Exec) -> Result<()> {
        let ids = cube::cubical_identities(self.max_dim);
        for inst in &ids {
            let dims = cube::word_dims(inst.src, &inst.lhs)?;
            let t = *dims.last().unwrap();
            let xs: Vec<u32> = (0..self.count(t) as u32).collect();
            let bad = map_ordered(exec, &xs, |&x| {
                let a = self.act_word(t, x, &inst.lhs);
                let b = self.act_word(t, x, &inst.rhs);
                (a != b).then_some(x)
            });
            if let Some(x) = bad.into_iter().flatten().next() {
                return domain(format!(
                    "cubical identity {} = {} fails on cube {}",
                    cube::word_to_string(&inst.lhs),
                    cube::word_to_string(&inst.rhs),
                    self.name(t, x)
                ));
            }
        }
        Ok(())
    }

    /// Connected components of the 1-skeleton: component id per vertex.
    pub fn pi0(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.count(0));
        if self.max_dim >= 1 {
            for e in 0..self.count(1) as u32 {
                uf.union(self.face(1, e, 1, 0) as usize, self.face(1, e, 1, 1) as usize);
            }
        }
        uf.labels()
    }

    pub fn pi0_count(&self) -> usize {
        self.pi0().iter().copied().max().map_or(0, |m| m + 1)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Component labels numbered by first occurrence.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[x] = label[r];
        }
        out
    }
}

/// A map of cubical sets, one image table per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicalMap {
    pub images: Vec<Vec<u32>>,
}

impl CubicalMap {
    pub fn identity(x: &CubicalSet) -> Self {
        CubicalMap {
            images: x.counts.iter().map(|&c| (0..c as u32).collect()).collect(),
        }
    }

    pub fn max_dim(&self) -> usize {
        self.images.len().saturating_sub(1)
    }

    #[inline]
    pub fn at(&self, dim: usize, x: u32) -> u32 {
        self.images[dim][x as usize]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &CubicalMap) -> CubicalMap {
        CubicalMap {
            images: self
                .images
                .iter()
                .zip(&g.images)
                .map(|(a, b)| a.iter().map(|&x| b[x as usize]).collect())
                .collect(),
        }
    }

    /// Check that the map commutes with every face, degeneracy and connection
    /// of `src` up to the common truncation. Returns a description of the
    /// first violation.
    pub fn check_natural(&self, src: &CubicalSet, dst: &CubicalSet) -> std::result::Result<(), String> {
        let d = src.max_dim.min(dst.max_dim);
        if self.images.len() < d + 1 {
            return Err("map is undefined in some dimension".into());
        }
        for k in 0..=d {
            if self.images[k].len() != src.count(k) {
                return Err(format!("map has the wrong size in dimension {k}"));
            }
            if self.images[k].iter().any(|&y| y as usize >= dst.count(k)) {
                return Err(format!("image out of range in dimension {k}"));
            }
        }
        for k in 0..=d {
            for x in 0..src.count(k) as u32 {
                let fx = self.at(k, x);
                let mut gens: Vec<Generator> = Vec::new();
                for i in 1..=k {
                    gens.push(cube::face(i, 0));
                    gens.push(cube::face(i, 1));
                }
                if k < d {
                    gens.extend((1..=k + 1).map(cube::degen));
                    for i in 1..=k {
                        gens.push(cube::conn(i, 0));
                        gens.push(cube::conn(i, 1));
                    }
                }
                for g in gens {
                    let (nd, a) = src.act(k, x, g).unwrap();
                    let (_, b) = dst.act(k, fx, g).unwrap();
                    if self.at(nd, a) != b {
                        return Err(format!(
                            "f({}·{g}) ≠ f({})·{g}",
                            src.name(k, x),
                            src.name(k, x)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, src: &CubicalSet, dst: &CubicalSet) -> bool {
        let d = src.max_dim.min(dst.max_dim);
        (0..=d).all(|k| {
            if src.count(k) != dst.count(k) {
                return false;
            }
            let mut seen = vec![false; dst.count(k)];
            self.images[k].iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        })
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().all(|im| {
            let mut s = std::collections::HashSet::new();
            im.iter().all(|y| s.insert(*y))
        })
    }
}

/// A check that can run once every cube it reads has an image.
#[derive(Clone, Copy)]
enum Constraint {
    /// The faces of the image of a degenerate cube are the images of its faces.
    Faces(usize, u32),
    /// `f(c·g) = f(c)·g` for a `k`-cube `c` and a degeneracy or connection `g`.
    Act(usize, u32, Generator),
}

/// Backtracking over the nondegenerate cubes of `x`, each placed as soon as
/// its faces are determined, with every constraint checked as early as its
/// cubes allow.
struct Search<'a> {
    x: &'a CubicalSet,
    y: &'a CubicalSet,
    d: usize,
    injective: bool,
    /// Cubes of `y` in each dimension keyed by their face tuple.
    by_faces: Vec<HashMap<Vec<u32>, Vec<u32>>>,
    /// Nondegenerate cubes of `x` in assignment order.
    order: Vec<(usize, u32)>,
    /// `checks[p]` become decidable once `order[p]` is assigned.
    checks: Vec<Vec<Constraint>>,
    limit: usize,
}

impl<'a> Search<'a> {
    fn new(x: &'a CubicalSet, y: &'a CubicalSet, injective: bool, limit: usize) -> Self {
        let d = x.max_dim.min(y.max_dim);
        let by_faces = (0..=d)
            .map(|k| {
                let mut m: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
                if k >= 1 {
                    for c in 0..y.count(k) as u32 {
                        m.entry(y.faces_of(k, c).to_vec()).or_default().push(c);
                    }
                }
                m
            })
            .collect();
        let order = Self::assignment_order(x, d);
        let mut pos: Vec<Vec<usize>> = (0..=d).map(|k| vec![0; x.count(k)]).collect();
        for (p, &(k, c)) in order.iter().enumerate() {
            pos[k][c as usize] = p;
        }
        // a degenerate cube is ready with the nondegenerate cube it comes from
        for k in 1..=d {
            for c in 0..x.count(k) {
                if let Some((src, _)) = x.witness(k, c as u32) {
                    pos[k][c] = pos[k - 1][src as usize];
                }
            }
        }
        let mut checks = vec![Vec::new(); order.len().max(1)];
        let faces_ready = |k: usize, c: u32| x.faces_of(k, c).iter().map(|&f| pos[k - 1][f as usize]).max().unwrap_or(0);
        for k in 1..=d {
            for c in 0..x.count(k) as u32 {
                if x.is_degenerate(k, c) {
                    checks[pos[k][c as usize].max(faces_ready(k, c))].push(Constraint::Faces(k, c));
                }
            }
        }
        for k in 0..d {
            let gens = (1..=k + 1).map(cube::degen).chain((1..=k).flat_map(|i| [cube::conn(i, 0), cube::conn(i, 1)]));
            let gens: Vec<Generator> = gens.collect();
            for c in 0..x.count(k) as u32 {
                for &g in &gens {
                    let (_, t) = x.act(k, c, g).expect("k < d");
                    if x.witness(k + 1, t) != Some((c, g)) {
                        checks[pos[k][c as usize].max(pos[k + 1][t as usize])].push(Constraint::Act(k, c, g));
                    }
                }
            }
        }
        Search {
            x,
            y,
            d,
            injective,
            by_faces,
            order,
            checks,
            limit,
        }
    }

    /// Vertices in breadth-first order along nondegenerate edges, each
    /// followed by the higher cubes it completes.
    fn assignment_order(x: &CubicalSet, d: usize) -> Vec<(usize, u32)> {
        let root = |mut k: usize, mut c: u32| {
            while let Some((src, _)) = x.witness(k, c) {
                (k, c) = (k - 1, src);
            }
            (k, c)
        };
        let mut waiting: HashMap<(usize, u32), usize> = HashMap::new();
        let mut dependents: HashMap<(usize, u32), Vec<(usize, u32)>> = HashMap::new();
        for k in 1..=d {
            for c in x.nondegenerate(k) {
                let mut roots: Vec<(usize, u32)> = x.faces_of(k, c).iter().map(|&f| root(k - 1, f)).collect();
                roots.sort_unstable();
                roots.dedup();
                waiting.insert((k, c), roots.len());
                for r in roots {
                    dependents.entry(r).or_default().push((k, c));
                }
            }
        }
        let mut neighbours = vec![Vec::new(); x.count(0)];
        if d >= 1 {
            for e in x.nondegenerate(1) {
                let (a, b) = (x.face(1, e, 1, 0), x.face(1, e, 1, 1));
                neighbours[a as usize].push(b);
                neighbours[b as usize].push(a);
            }
        }
        let mut order = Vec::new();
        let mut seen = vec![false; x.count(0)];
        let mut ready = std::collections::VecDeque::new();
        for start in 0..x.count(0) as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                ready.push_back((0, v));
                while let Some(cube) = ready.pop_front() {
                    order.push(cube);
                    for &dep in dependents.get(&cube).into_iter().flatten() {
                        let w = waiting.get_mut(&dep).expect("registered");
                        *w -= 1;
                        if *w == 0 {
                            ready.push_back(dep);
                        }
                    }
                }
                for &w in &neighbours[v as usize] {
                    if !std::mem::replace(&mut seen[w as usize], true) {
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    /// The image of a cube, following degeneracy witnesses down to an
    /// assigned nondegenerate cube.
    fn image(&self, k: usize, c: u32, f: &[Vec<u32>]) -> u32 {
        match self.x.witness(k, c) {
            None => f[k][c as usize],
            Some((src, g)) => self.y.act(k - 1, self.image(k - 1, src, f), g).expect("within truncation").1,
        }
    }

    fn holds(&self, con: Constraint, f: &[Vec<u32>]) -> bool {
        match con {
            Constraint::Faces(k, c) => {
                let img = self.image(k, c, f);
                let want = self.x.faces_of(k, c).iter().map(|&xf| self.image(k - 1, xf, f));
                self.y.faces_of(k, img).iter().copied().eq(want)
            }
            Constraint::Act(k, c, g) => {
                let (_, t) = self.x.act(k, c, g).expect("within truncation");
                let (_, want) = self.y.act(k, self.image(k, c, f), g).expect("within truncation");
                self.image(k + 1, t, f) == want
            }
        }
    }

    fn candidates(&self, k: usize, xc: u32, f: &[Vec<u32>]) -> Vec<u32> {
        if k == 0 {
            return (0..self.y.count(0) as u32).collect();
        }
        let key: Vec<u32> = self.x.faces_of(k, xc).iter().map(|&fc| self.image(k - 1, fc, f)).collect();
        self.by_faces[k].get(&key).cloned().unwrap_or_default()
    }

    /// Fills in degenerate images and checks every condition of a map.
    fn fill_and_check(&self, k: usize, f: &mut [Vec<u32>]) -> bool {
        let (x, y) = (self.x, self.y);
        for c in 0..x.count(k) as u32 {
            if let Some((src, g)) = x.witness(k, c) {
                let (_, img) = y.act(k - 1, f[k - 1][src as usize], g).unwrap();
                f[k][c as usize] = img;
            }
        }
        for c in 0..x.count(k) as u32 {
            if x.is_degenerate(k, c) {
                let fc = f[k][c as usize];
                for (t, &xf) in x.faces_of(k, c).iter().enumerate() {
                    if y.faces_of(k, fc)[t] != f[k - 1][xf as usize] {
                        return false;
                    }
                }
            }
        }
        if k >= 1 {
            for c in 0..x.count(k - 1) as u32 {
                let fc = f[k - 1][c as usize];
                for i in 1..=k {
                    if f[k][x.degen(k - 1, c, i) as usize] != y.degen(k - 1, fc, i) {
                        return false;
                    }
                }
                for i in 1..k {
                    for e in 0..2 {
                        if f[k][x.conn(k - 1, c, i, e) as usize] != y.conn(k - 1, fc, i, e) {
                            return false;
                        }
                    }
                }
            }
        }
        if self.injective {
            let mut seen = vec![false; y.count(k)];
            for &v in &f[k] {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return false;
                }
            }
        }
        true
    }

    fn rec(
        &self,
        p: usize,
        f: &mut Vec<Vec<u32>>,
        used: &mut Vec<Vec<bool>>,
        out: &mut Vec<CubicalMap>,
        budget: &Budget,
    ) -> Result<()> {
        if out.len() >= self.limit {
            return Ok(());
        }
        if p == self.order.len() {
            if (0..=self.d).all(|k| self.fill_and_check(k, f)) {
                budget.take(1)?;
                out.push(CubicalMap { images: f.clone() });
            }
            return Ok(());
        }
        let (k, xc) = self.order[p];
        for cand in self.candidates(k, xc, f) {
            self.try_candidate(p, cand, f, used, out, budget)?;
        }
        Ok(())
    }

    fn try_candidate(
        &self,
        p: usize,
        cand: u32,
        f: &mut Vec<Vec<u32>>,
        used: &mut Vec<Vec<bool>>,
        out: &mut Vec<CubicalMap>,
        budget: &Budget,
    ) -> Result<()> {
        let (k, xc) = self.order[p];
        if self.injective && (used[k][cand as usize] || self.y.is_degenerate(k, cand)) {
            return Ok(());
        }
        f[k][xc as usize] = cand;
        if !self.checks[p].iter().all(|&con| self.holds(con, f)) {
            return Ok(());
        }
        if self.injective {
            used[k][cand as usize] = true;
        }
        let r = self.rec(p + 1, f, used, out, budget);
        if self.injective {
            used[k][cand as usize] = false;
        }
        r
    }

    fn run(&self, cfg: &Config) -> Result<Vec<CubicalMap>> {
        let budget = Budget::new(cfg, "cubical maps");
        let fresh = || -> (Vec<Vec<u32>>, Vec<Vec<bool>>) {
            (
                (0..=self.d).map(|k| vec![0; self.x.count(k)]).collect(),
                (0..=self.d).map(|k| vec![false; self.y.count(k)]).collect(),
            )
        };
        if self.order.is_empty() {
            let (mut f, mut used) = fresh();
            let mut out = Vec::new();
            self.rec(0, &mut f, &mut used, &mut out, &budget)?;
            return Ok(out);
        }
        let cands: Vec<u32> = (0..self.y.count(0) as u32).collect();
        let parts = map_ordered(cfg.exec, &cands, |&c| {
            let (mut f, mut used) = fresh();
            let mut out = Vec::new();
            self.try_candidate(0, c, &mut f, &mut used, &mut out, &budget).map(|_| out)
        });
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
            if all.len() >= self.limit {
                break;
            }
        }
        all.sort_unstable_by(|a, b| a.images.cmp(&b.images));
        all.truncate(self.limit);
        Ok(all)
    }
}

/// All cubical maps `x → y` within the common truncation, in a deterministic
/// order.
pub fn enumerate_maps(x: &CubicalSet, y: &CubicalSet, cfg: &Config) -> Result<Vec<CubicalMap>> {
    Search::new(x, y, false, usize::MAX).run(cfg)
}

/// An isomorphism `x → y`, if one exists.
pub fn find_isomorphism(x: &CubicalSet, y: &CubicalSet, cfg: &Config) -> Result<Option<CubicalMap>> {
    if x.max_dim != y.max_dim || x.counts != y.counts {
        return Ok(None);
    }
    let mut found = Search::new(x, y, true, 1).run(cfg)?;
    Ok(found.pop())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Cube,
    Boundary,
    OpenBox { i: usize, eps: u8 },
}

/// The representable `□^n`, its boundary, or an open box, truncated at `max_dim`.
pub struct StandardCell {
    pub kind: CellKind,
    pub n: usize,
}

impl StandardCell {
    fn contains(&self, m: &BoxMorphism) -> bool {
        match self.kind {
            CellKind::Cube => true,
            CellKind::Boundary => (1..=self.n).any(|j| m.constant_coord(j).is_some()),
            CellKind::OpenBox { i, eps } => (1..=self.n).any(|j| match m.constant_coord(j) {
                Some(v) => (j, v as u8) != (i, eps),
                None => false,
            }),
        }
    }
}

impl CubeModel for StandardCell {
    type Cube = BoxMorphism;

    fn cubes(&self, dim: usize) -> Result<Vec<BoxMorphism>> {
        Ok(cube::all_morphisms(dim, self.n)
            .into_iter()
            .filter(|m| self.contains(m))
            .collect())
    }

    fn face(&self, _dim: usize, c: &BoxMorphism, i: usize, eps: u8) -> BoxMorphism {
        c.after(cube::face(i, eps)).unwrap()
    }

    fn degen(&self, _dim: usize, c: &BoxMorphism, i: usize) -> BoxMorphism {
        c.after(cube::degen(i)).unwrap()
    }

    fn conn(&self, _dim: usize, c: &BoxMorphism, i: usize, eps: u8) -> BoxMorphism {
        c.after(cube::conn(i, eps)).unwrap()
    }

    fn name(&self, _dim: usize, c: &BoxMorphism) -> Option<String> {
        Some(c.word_string())
    }
}

/// A standard cell together with the box morphism behind each cube.
pub struct Cell {
    pub set: CubicalSet,
    pub cubes: Vec<Vec<BoxMorphism>>,
}

impl Cell {
    pub fn index_of(&self, m: &BoxMorphism) -> Option<u32> {
        self.cubes
            .get(m.src())?
            .iter()
            .position(|c| c == m)
            .map(|p| p as u32)
    }
}

pub fn standard_cell(kind: CellKind, n: usize, max_dim: usize, cfg: &Config) -> Result<Cell> {
    if let CellKind::OpenBox { i, eps } = kind {
        if i == 0 || i > n || eps > 1 {
            return domain(format!("no open box ({i},{eps}) in dimension {n}"));
        }
    }
    if n > 10 || max_dim > 10 {
        return domain("dimension too large for a standard cell");
    }
    let (set, cubes) = CubicalSet::build(&StandardCell { kind, n }, max_dim, cfg)?;
    Ok(Cell { set, cubes })
}

pub fn representable(n: usize, max_dim: usize, cfg: &Config) -> Result<CubicalSet> {
    Ok(standard_cell(CellKind::Cube, n, max_dim, cfg)?.set)
}

/// One unfillable open box.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct UnfilledBox {
    pub dim: usize,
    pub i: usize,
    pub eps: u8,
    /// Face generator and assigned cube name, for each face of the box.
    pub faces: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct KanReport {
    pub boxes_checked: usize,
    pub failures: Vec<UnfilledBox>,
}

impl KanReport {
    pub fn is_kan(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check every open box of dimension `1..=up_to` for a filler.
pub fn kan_box_check(x: &CubicalSet, up_to: usize, cfg: &Config) -> Result<KanReport> {
    if up_to > x.max_dim {
        return Err(Error::Truncation(format!(
            "Kan check in dimension {up_to} needs truncation {up_to}, set is truncated at {}",
            x.max_dim
        )));
    }
    let mut report = KanReport::default();
    for n in 1..=up_to {
        for i in 1..=n {
            for eps in 0..2u8 {
                let cell = standard_cell(CellKind::OpenBox { i, eps }, n, n - 1, cfg)?;
                let sides: Vec<(Generator, u32)> = (1..=n)
                    .flat_map(|j| [(j, 0u8), (j, 1u8)])
                    .filter(|&s| s != (i, eps))
                    .map(|(j, e)| {
                        let g = cube::face(j, e);
                        let m = BoxMorphism::generator(g, n - 1).unwrap();
                        (g, cell.index_of(&m).expect("face lies in the box"))
                    })
                    .collect();
                let pos = |g: &Generator| match *g {
                    Generator::Face { i, eps } => 2 * (i as usize - 1) + eps as usize,
                    _ => unreachable!(),
                };
                let mut fillable: std::collections::HashSet<Vec<u32>> = Default::default();
                for z in 0..x.count(n) as u32 {
                    let fs = x.faces_of(n, z);
                    fillable.insert(sides.iter().map(|(g, _)| fs[pos(g)]).collect());
                }
                let maps = enumerate_maps(&cell.set, x, cfg)?;
                report.boxes_checked += maps.len();
                for m in maps {
                    let key: Vec<u32> = sides.iter().map(|&(_, c)| m.at(n - 1, c)).collect();
                    if !fillable.contains(&key) {
                        report.failures.push(UnfilledBox {
                            dim: n,
                            i,
                            eps,
                            faces: sides
                                .iter()
                                .zip(&key)
                                .map(|((g, _), &v)| (g.to_string(), x.name(n - 1, v)))
                                .collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn representable_counts() {
        let c = representable(1, 2, &cfg()).unwrap();
        // two vertices, the identity and two degenerate 1-cubes
        assert_eq!(c.count(0), 2);
        assert_eq!(c.count(1), 3);
        assert_eq!(c.nondegenerate(1).len(), 1);
    }

    #[test]
    fn boundary_of_square() {
        let b = standard_cell(CellKind::Boundary, 2, 2, &cfg()).unwrap();
        assert_eq!(b.set.nondegenerate(0).len(), 4);
        assert_eq!(b.set.nondegenerate(1).len(), 4);
        assert_eq!(b.set.nondegenerate(2).len(), 0);
        assert_eq!(b.set.pi0_count(), 1);
    }

    #[test]
    fn open_box_missing_one_face() {
        let b = standard_cell(CellKind::OpenBox { i: 1, eps: 0 }, 2, 1, &cfg()).unwrap();
        assert_eq!(b.set.nondegenerate(1).len(), 3);
    }

    #[test]
    fn maps_from_representable_are_cubes() {
        let x = standard_cell(CellKind::Boundary, 2, 1, &cfg()).unwrap().set;
        let r = representable(1, 1, &cfg()).unwrap();
        let maps = enumerate_maps(&r, &x, &cfg()).unwrap();
        assert_eq!(maps.len(), x.count(1));
    }

    /// Every assignment of nondegenerate cubes, kept when natural.
    fn exhaustive_maps(x: &CubicalSet, y: &CubicalSet) -> Vec<CubicalMap> {
        let d = x.max_dim().min(y.max_dim());
        let slots: Vec<(usize, u32)> = (0..=d).flat_map(|k| x.nondegenerate(k).into_iter().map(move |c| (k, c))).collect();
        let mut out = Vec::new();
        let mut choice = vec![0u32; slots.len()];
        loop {
            let mut images: Vec<Vec<u32>> = (0..=d).map(|k| vec![0; x.count(k)]).collect();
            for (&(k, c), &v) in slots.iter().zip(&choice) {
                images[k][c as usize] = v;
            }
            for k in 1..=d {
                for c in 0..x.count(k) as u32 {
                    if let Some((src, g)) = x.witness(k, c) {
                        images[k][c as usize] = y.act(k - 1, images[k - 1][src as usize], g).unwrap().1;
                    }
                }
            }
            let f = CubicalMap { images };
            if f.check_natural(x, y).is_ok() {
                out.push(f);
            }
            let Some(p) = (0..slots.len()).rev().find(|&p| (choice[p] as usize) + 1 < y.count(slots[p].0)) else {
                break;
            };
            choice[p] += 1;
            choice[p + 1..].fill(0);
        }
        out.sort_by(|a, b| a.images.cmp(&b.images));
        out
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let c = |k, n, d| standard_cell(k, n, d, &cfg()).unwrap().set;
        let pairs = [
            (c(CellKind::Boundary, 2, 2), c(CellKind::Cube, 1, 2)),
            (c(CellKind::Boundary, 2, 2), c(CellKind::Boundary, 2, 2)),
            (c(CellKind::OpenBox { i: 1, eps: 0 }, 2, 2), c(CellKind::Cube, 2, 2)),
            (c(CellKind::Cube, 2, 1), c(CellKind::Boundary, 2, 1)),
            (c(CellKind::Cube, 1, 2), c(CellKind::OpenBox { i: 2, eps: 1 }, 2, 2)),
        ];
        for (x, y) in pairs {
            assert_eq!(enumerate_maps(&x, &y, &cfg()).unwrap(), exhaustive_maps(&x, &y), "{:?} → {:?}", x.counts(), y.counts());
        }
    }

    #[test]
    fn ez_of_degenerate_square() {
        let c = representable(1, 2, &cfg()).unwrap();
        for x in 0..c.count(2) as u32 {
            let (d, y, e) = c.ez(2, x);
            assert!(!c.is_degenerate(d, y));
            assert_eq!(c.act_morphism(d, y, &e), Some((2, x)));
        }
    }

    #[test]
    fn representable_fills_only_low_boxes() {
        let c = representable(1, 2, &cfg()).unwrap();
        assert!(kan_box_check(&c, 1, &cfg()).unwrap().is_kan());
        // edges const 1, id, const 1 around a square force a non-monotone filler
        assert!(!kan_box_check(&c, 2, &cfg()).unwrap().is_kan());
    }

    #[test]
    fn boundary_is_not_kan() {
        let b = standard_cell(CellKind::Boundary, 2, 2, &cfg()).unwrap().set;
        let r = kan_box_check(&b, 2, &cfg()).unwrap();
        assert!(!r.is_kan());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let x = standard_cell(CellKind::Boundary, 2, 2, &cfg()).unwrap().set;
        let y = representable(2, 2, &cfg()).unwrap();
        let a = enumerate_maps(&x, &y, &Config::sequential()).unwrap();
        let b = enumerate_maps(&x, &y, &cfg().with_exec(Exec::Parallel)).unwrap();
        assert_eq!(a, b);
    }
}
