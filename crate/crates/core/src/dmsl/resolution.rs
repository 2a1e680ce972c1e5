use crate::cset::{CubicalMap, UnionFind};
use crate::cube::{self, BoxMorphism, Generator};
use crate::enriched::{is_homotopy_equivalence_enriched, verify_equivalence, CubicalCategory, EquivalenceWitness, FiniteCategory};
use crate::error::{domain, Error, Result};
use crate::exec::{join, Config};
use crate::geom::{diagonal_of, BicubicalModel};
use crate::homology::{
    cone_iso_low, cubical_chains, cubical_iso_low, homology_groups, ChainComplex, ChainMap, HomologyGroup, SparseMatrix,
};
use crate::report::{overall, Check, Verdict};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// The index of a diagram `Y_•` together with the diagram itself.
pub enum Diagram<X> {
    /// A finite index category; `arrows[u]` is `Y(u)`.
    Finite {
        index: FiniteCategory,
        objects: Vec<usize>,
        arrows: Vec<X>,
    },
    /// `□^op_{≤n}`; index `k` is `[1]^k`, and `maps[μ]` for `μ: [1]^a → [1]^b`
    /// is `Y(μ): Y_b → Y_a`.
    Cubes {
        n: usize,
        objects: Vec<usize>,
        maps: HashMap<BoxMorphism, X>,
    },
}

impl<X> Diagram<X> {
    /// A cubical diagram from its action on box morphisms.
    pub fn cubes(n: usize, objects: Vec<usize>, mut f: impl FnMut(&BoxMorphism) -> X) -> Self {
        let mut maps = HashMap::new();
        for a in 0..=n {
            for b in 0..=n {
                for mu in cube::all_morphisms(a, b) {
                    let y = f(&mu);
                    maps.insert(mu, y);
                }
            }
        }
        Diagram::Cubes { n, objects, maps }
    }

    pub fn objects(&self) -> &[usize] {
        match self {
            Diagram::Finite { objects, .. } | Diagram::Cubes { objects, .. } => objects,
        }
    }

    pub fn shape_name(&self) -> String {
        match self {
            Diagram::Finite { index, .. } => format!("finite index on {} objects", index.object_count()),
            Diagram::Cubes { n, .. } => format!("□^op_≤{n}"),
        }
    }
}

/// A morphism `f: X′ → X` to be inverted by the colimit presheaf.
#[derive(Clone, Debug)]
pub struct WTest<X> {
    pub source: usize,
    pub target: usize,
    pub map: X,
}

pub type Predicate<'a, X> = Box<dyn Fn(usize, usize, &X) -> Verdict + Sync + 'a>;

/// Certificate that two objects are not homotopy equivalent, if one is found.
pub type Obstruction<'a> = Box<dyn Fn(usize, usize) -> Result<Option<String>> + Sync + 'a>;

/// The weak equivalences `W`, as a membership test on 0-cubes.
pub struct WeakEquivalences<'a, X> {
    pub name: String,
    pub contains: Predicate<'a, X>,
}

/// A diagram under `Y` proposed as a resolution of `Y`.
pub struct ResolutionCandidate<'a, C: CubicalCategory> {
    pub category: &'a C,
    pub target: usize,
    pub diagram: Diagram<C::Cube>,
    /// The structure morphisms `Y → Y_i`.
    pub cone: Vec<C::Cube>,
    pub weak_equivalences: WeakEquivalences<'a, C::Cube>,
    pub tests: Vec<WTest<C::Cube>>,
    /// Explicit inverses for the structure morphisms, checked as given.
    pub witnesses: Vec<Option<EquivalenceWitness<C::Cube>>>,
    pub obstruction: Option<Obstruction<'a>>,
    /// Zig-zag bound for the inverse search.
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    /// Set when the condition could not be evaluated.
    pub error: Option<String>,
}

impl ConditionReport {
    fn from_result(condition: &str, r: Result<Vec<Check>>) -> Self {
        match r {
            Ok(checks) => ConditionReport {
                condition: condition.into(),
                verdict: overall(&checks),
                checks,
                error: None,
            },
            Err(e) => ConditionReport {
                condition: condition.into(),
                verdict: Verdict::Inconclusive(e.to_string()),
                checks: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub shape: String,
    /// Functoriality of `Y_•` and the cone condition.
    pub diagram: Vec<Check>,
    pub conditions: Vec<ConditionReport>,
}

impl ResolutionReport {
    pub fn verdict(&self, condition: &str) -> Option<&Verdict> {
        self.conditions.iter().find(|c| c.condition == condition).map(|c| &c.verdict)
    }

    pub fn is_well_formed(&self) -> bool {
        overall(&self.diagram).is_pass()
    }

    pub fn overall(&self) -> Verdict {
        Verdict::all(self.diagram.iter().map(|c| c.verdict.clone()).chain(self.conditions.iter().map(|c| c.verdict.clone())))
    }
}

pub fn check_resolution<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, cfg: &Config) -> Result<ResolutionReport> {
    let n_idx = r.diagram.objects().len();
    if r.cone.len() != n_idx || r.witnesses.len() != n_idx {
        return domain("cone and witnesses need one entry per index object");
    }
    let diagram = diagram_checks(r);
    let (r1, (r2, r3)) = join(
        cfg.exec,
        || ConditionReport::from_result("R1", r1(r, cfg)),
        || {
            join(
                cfg.exec,
                || ConditionReport::from_result("R2", r2(r, cfg)),
                || ConditionReport::from_result("R3", r3(r, cfg)),
            )
        },
    );
    Ok(ResolutionReport {
        shape: r.diagram.shape_name(),
        diagram,
        conditions: vec![r1, r2, r3],
    })
}

fn then<C: CubicalCategory>(cat: &C, a: usize, b: usize, c: usize, g: &C::Cube, f: &C::Cube) -> C::Cube {
    cat.compose(a, b, c, 0, g, 0, f)
}

fn diagram_checks<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>) -> Vec<Check> {
    let cat = r.category;
    let y = r.target;
    let mut fun = Vec::new();
    let mut cone = Vec::new();
    let mut checked = 0;
    match &r.diagram {
        Diagram::Finite { index, objects, arrows } => {
            if arrows.len() != index.arrows().len() || objects.len() != index.object_count() {
                return vec![Check::new("diagram shape", Verdict::Fail("wrong number of objects or arrows".into()))];
            }
            for (u, a) in index.arrows().iter().enumerate() {
                let (i, j) = (a.src as usize, a.dst as usize);
                checked += 1;
                if !cat.contains(objects[i], objects[j], 0, &arrows[u]) {
                    fun.push(format!("Y({}) is not a 0-cube", a.name));
                    continue;
                }
                if then(cat, y, objects[i], objects[j], &arrows[u], &r.cone[i]) != r.cone[j] {
                    cone.push(format!("Y({}) ∘ c_{} ≠ c_{}", a.name, index.object_name(i), index.object_name(j)));
                }
            }
            for i in 0..index.object_count() {
                if arrows[index.identity(i) as usize] != cat.identity(objects[i]) {
                    fun.push(format!("Y(id) ≠ id at {}", index.object_name(i)));
                }
            }
            for (g, f, h) in index.composition_table() {
                let (af, ag) = (index.arrow(f), index.arrow(g));
                let (i, j, k) = (af.src as usize, af.dst as usize, ag.dst as usize);
                checked += 1;
                let lhs = then(cat, objects[i], objects[j], objects[k], &arrows[g as usize], &arrows[f as usize]);
                if lhs != arrows[h as usize] {
                    fun.push(format!("Y({}) ∘ Y({}) ≠ Y({} ∘ {})", ag.name, af.name, ag.name, af.name));
                }
            }
        }
        Diagram::Cubes { n, objects, maps } => {
            let n = *n;
            for a in 0..=n {
                if maps[&BoxMorphism::identity(a)] != cat.identity(objects[a]) {
                    fun.push(format!("Y(id) ≠ id at [1]^{a}"));
                }
            }
            for a in 0..=n {
                for b in 0..=n {
                    for mu in cube::all_morphisms(a, b) {
                        let ym = &maps[&mu];
                        checked += 1;
                        if !cat.contains(objects[b], objects[a], 0, ym) {
                            fun.push(format!("Y({mu}) is not a 0-cube"));
                            continue;
                        }
                        if then(cat, y, objects[b], objects[a], ym, &r.cone[b]) != r.cone[a] {
                            cone.push(format!("Y({mu}) ∘ c_{b} ≠ c_{a}"));
                        }
                        for c in 0..=n {
                            for nu in cube::all_morphisms(b, c) {
                                let nm = nu.compose(&mu).expect("composable");
                                checked += 1;
                                let rhs = then(cat, objects[c], objects[b], objects[a], ym, &maps[&nu]);
                                if maps[&nm] != rhs {
                                    fun.push(format!("Y({nu} ∘ {mu}) ≠ Y({mu}) ∘ Y({nu})"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    fn summary(v: &[String]) -> String {
        let mut s = v.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
        if v.len() > 3 {
            s.push_str(&format!("; … {} in all", v.len()));
        }
        s
    }
    vec![
        Check::new(
            format!("diagram is a functor ({checked} identities)"),
            Verdict::from_bool(fun.is_empty(), || summary(&fun)),
        ),
        Check::new("structure morphisms form a cone under Y", Verdict::from_bool(cone.is_empty(), || summary(&cone))),
    ]
}

fn r1<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, cfg: &Config) -> Result<Vec<Check>> {
    let verdict = match &r.diagram {
        Diagram::Cubes { .. } => Check::new("□^op_≤n has the initial object [1]^0", Verdict::Pass),
        Diagram::Finite { index, .. } => {
            if let Some(a) = index.initial_object() {
                Check::new(format!("{} is initial", index.object_name(a)), Verdict::Pass)
            } else if let Some(a) = index.terminal_object() {
                Check::new(format!("{} is terminal", index.object_name(a)), Verdict::Pass)
            } else {
                let h = homology_groups(&index.nerve(2, cfg)?, 1)?;
                let verdict = if h[0].betti != 1 {
                    Verdict::Fail(format!("the nerve has {} components", h[0].betti))
                } else if !h[1].is_zero() {
                    Verdict::Fail(format!("H_1 of the nerve is {}", h[1].group_string()))
                } else {
                    Verdict::Inconclusive("no initial or terminal object, and the nerve has the homology of a point".into())
                };
                Check::new("weak contractibility of the index", verdict)
            }
        }
    };
    Ok(vec![verdict])
}

fn r2<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, cfg: &Config) -> Result<Vec<Check>> {
    let cat = r.category;
    let y = r.target;
    let mut checks = Vec::new();
    for (i, &yi) in r.diagram.objects().iter().enumerate() {
        let name = format!("Y → Y_{i} ({} → {}) is a homotopy equivalence", cat.object_name(y), cat.object_name(yi));
        let c = &r.cone[i];
        let verdict = if let Some(w) = &r.witnesses[i] {
            verify_equivalence(cat, y, yi, c, w)
        } else if let Some(cert) = obstruct(r, y, yi)? {
            Verdict::Fail(cert)
        } else {
            match is_homotopy_equivalence_enriched(cat, y, yi, c, r.bound, cfg) {
                Ok(e) => e.verdict(),
                Err(e @ Error::Resource { .. }) => Verdict::Inconclusive(e.to_string()),
                Err(e) => return Err(e),
            }
        };
        checks.push(Check::new(name, verdict));
    }
    Ok(checks)
}

/// A resource error while looking for an obstruction means none was found.
fn obstruct<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, a: usize, b: usize) -> Result<Option<String>> {
    match r.obstruction.as_ref().map(|o| o(a, b)) {
        None | Some(Ok(None)) | Some(Err(Error::Resource { .. })) => Ok(None),
        Some(other) => other,
    }
}

fn r3<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, cfg: &Config) -> Result<Vec<Check>> {
    if r.tests.is_empty() {
        return Ok(vec![Check::new(
            "colimit presheaf inverts W",
            Verdict::Inconclusive("no W-morphisms supplied".into()),
        )]);
    }
    if let Diagram::Cubes { n, .. } = &r.diagram {
        if *n < 2 {
            return Err(Error::Truncation(format!(
                "H_1 of the diagonal needs □^op_≤2, the index stops at {n}"
            )));
        }
    }
    let cat = r.category;
    let mut checks = Vec::new();
    for t in &r.tests {
        let label = format!(
            "f: {} → {}",
            cat.object_name(t.source),
            cat.object_name(t.target)
        );
        let w = (r.weak_equivalences.contains)(t.source, t.target, &t.map);
        if !w.is_pass() {
            checks.push(Check::new(
                format!("{label} lies in W ({})", r.weak_equivalences.name),
                Verdict::Inconclusive(format!("not certified: {w}")),
            ));
            continue;
        }
        let (pi0, h1) = match &r.diagram {
            Diagram::Cubes { .. } => cubical_shadow(r, t, cfg)?,
            Diagram::Finite { .. } => elements_shadow(r, t, cfg)?,
        };
        checks.push(Check::new(format!("{label}: f^* bijective on π₀ of the colimit (π₀/H₁ shadow)"), pi0));
        checks.push(Check::new(format!("{label}: f^* an isomorphism on H₁ within truncation (π₀/H₁ shadow)"), h1));
    }
    Ok(checks)
}

/// `B_{m,n} = C(X, Y_m)_0`, discrete in `n`.
struct ColimitLevels<'r, 'a, C: CubicalCategory> {
    r: &'r ResolutionCandidate<'a, C>,
    x: usize,
    cfg: &'r Config,
}

impl<C: CubicalCategory> ColimitLevels<'_, '_, C> {
    fn level(&self, m: usize) -> usize {
        self.r.diagram.objects()[m]
    }
}

impl<C: CubicalCategory> BicubicalModel for ColimitLevels<'_, '_, C> {
    type Cell = C::Cube;

    fn cells(&self, m: usize, _n: usize) -> Result<Vec<C::Cube>> {
        self.r.category.cubes(self.x, self.level(m), 0, self.cfg)
    }

    fn h_act(&self, m: usize, _n: usize, c: &C::Cube, g: Generator) -> C::Cube {
        let Diagram::Cubes { maps, .. } = &self.r.diagram else { unreachable!() };
        let m2 = g.source_dim(m).expect("generator applies");
        let yg = &maps[&BoxMorphism::generator(g, m2).expect("generator")];
        then(self.r.category, self.x, self.level(m), self.level(m2), yg, c)
    }

    fn v_act(&self, _m: usize, _n: usize, c: &C::Cube, _g: Generator) -> C::Cube {
        c.clone()
    }
}

fn pi0_bijection(a: &[usize], b: &[usize], f: impl Fn(usize) -> usize) -> Verdict {
    let na = a.iter().max().map_or(0, |m| m + 1);
    let nb = b.iter().max().map_or(0, |m| m + 1);
    let mut image = vec![usize::MAX; na];
    for (v, &c) in a.iter().enumerate() {
        image[c] = b[f(v)];
    }
    let mut hit = vec![false; nb];
    let injective = image.iter().all(|&c| !std::mem::replace(&mut hit[c], true));
    Verdict::from_bool(injective && na == nb, || format!("π₀: {na} components → {nb} components is not a bijection"))
}

fn h1_verdict(ha: &HomologyGroup, hb: &HomologyGroup, cone: Verdict) -> Verdict {
    match cone {
        Verdict::Pass => Verdict::Pass,
        Verdict::Fail(c) => Verdict::Fail(format!("H_1 {} → {}: {c}", ha.group_string(), hb.group_string())),
        other => other,
    }
}

fn cubical_shadow<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, t: &WTest<C::Cube>, cfg: &Config) -> Result<(Verdict, Verdict)> {
    let Diagram::Cubes { n, objects, .. } = &r.diagram else { unreachable!() };
    let cat = r.category;
    let (kx, cx) = diagonal_of(&ColimitLevels { r, x: t.target, cfg }, *n, cfg)?;
    let (kx2, cx2) = diagonal_of(&ColimitLevels { r, x: t.source, cfg }, *n, cfg)?;
    let mut images = Vec::with_capacity(n + 1);
    for k in 0..=*n {
        let index: HashMap<&C::Cube, u32> = cx2[k].iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
        let row = cx[k]
            .iter()
            .map(|c| {
                let img = then(cat, t.source, t.target, objects[k], c, &t.map);
                index.get(&img).copied().ok_or_else(|| Error::Domain("f^* leaves the source set".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        images.push(row);
    }
    let fstar = CubicalMap { images };
    let pi0 = pi0_bijection(&kx.pi0(), &kx2.pi0(), |v| fstar.at(0, v as u32) as usize);
    let ha = cubical_chains(&kx, 2, cfg)?.homology();
    let hb = cubical_chains(&kx2, 2, cfg)?.homology();
    Ok((pi0, h1_verdict(&ha[1], &hb[1], cubical_iso_low(&kx, &kx2, &fstar, cfg)?)))
}

/// The category of elements of `i ↦ C(X, Y_i)_0` as a complex through
/// degree 2: objects, non-identity arrows, and composable pairs of them.
struct Elements<X> {
    objects: Vec<(usize, X)>,
    object_index: HashMap<(usize, X), u32>,
    /// `(u, source, target)` for each non-identity index arrow `u`.
    edges: Vec<(u32, u32, u32)>,
    edge_index: HashMap<(u32, u32), u32>,
    chains: ChainComplex,
}

fn elements<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, x: usize, cfg: &Config) -> Result<Elements<C::Cube>> {
    let Diagram::Finite { index, objects: ys, arrows } = &r.diagram else { unreachable!() };
    let cat = r.category;
    let mut objects = Vec::new();
    for (i, &yi) in ys.iter().enumerate() {
        for c in cat.cubes(x, yi, 0, cfg)? {
            objects.push((i, c));
        }
    }
    cfg.check("elements", objects.len())?;
    let object_index: HashMap<(usize, C::Cube), u32> =
        objects.iter().cloned().enumerate().map(|(p, o)| (o, p as u32)).collect();
    let is_id = |u: u32| {
        let a = index.arrow(u);
        a.src == a.dst && index.identity(a.src as usize) == u
    };
    let apply = |u: u32, e: u32| -> u32 {
        let a = index.arrow(u);
        let (i, c) = &objects[e as usize];
        let img = then(cat, x, ys[*i], ys[a.dst as usize], &arrows[u as usize], c);
        object_index[&(a.dst as usize, img)]
    };
    let mut edges = Vec::new();
    for u in 0..index.arrows().len() as u32 {
        if is_id(u) {
            continue;
        }
        let src = index.arrow(u).src as usize;
        for (e, (i, _)) in objects.iter().enumerate() {
            if *i == src {
                edges.push((u, e as u32, apply(u, e as u32)));
            }
        }
    }
    let edge_index: HashMap<(u32, u32), u32> =
        edges.iter().enumerate().map(|(p, &(u, e, _))| ((u, e), p as u32)).collect();
    let mut d1 = SparseMatrix::new(objects.len());
    for &(_, e, t) in &edges {
        d1.push_col(vec![(t, 1), (e, -1)]);
    }
    let mut d2 = SparseMatrix::new(edges.len());
    let mut tris = 0;
    for &(u, e, mid) in &edges {
        for v in 0..index.arrows().len() as u32 {
            if index.arrow(v).src != index.arrow(u).dst || is_id(v) {
                continue;
            }
            let vu = index.compose(v, u).expect("composable");
            let mut col = vec![(edge_index[&(v, mid)], 1), (edge_index[&(u, e)], 1)];
            if !is_id(vu) {
                col.push((edge_index[&(vu, e)], -1));
            }
            d2.push_col(col);
            tris += 1;
        }
    }
    cfg.check("elements", objects.len() + edges.len() + tris)?;
    let ranks = vec![objects.len(), edges.len(), tris];
    let chains = ChainComplex {
        basis: ranks.iter().map(|&r| (0..r as u32).collect()).collect(),
        position: ranks.iter().map(|&r| (0..r as u32).collect()).collect(),
        ranks,
        boundaries: vec![SparseMatrix::new(0), d1, d2],
    };
    Ok(Elements { objects, object_index, edges, edge_index, chains })
}

fn elements_shadow<C: CubicalCategory>(r: &ResolutionCandidate<'_, C>, t: &WTest<C::Cube>, cfg: &Config) -> Result<(Verdict, Verdict)> {
    let Diagram::Finite { objects: ys, .. } = &r.diagram else { unreachable!() };
    let cat = r.category;
    let a = elements(r, t.target, cfg)?;
    let b = elements(r, t.source, cfg)?;
    let obj: Vec<u32> = a
        .objects
        .iter()
        .map(|(i, c)| b.object_index[&(*i, then(cat, t.source, t.target, ys[*i], c, &t.map))])
        .collect();
    let mut m0 = SparseMatrix::new(b.objects.len());
    for &o in &obj {
        m0.push_col(vec![(o, 1)]);
    }
    let mut m1 = SparseMatrix::new(b.edges.len());
    for &(u, e, _) in &a.edges {
        m1.push_col(vec![(b.edge_index[&(u, obj[e as usize])], 1)]);
    }
    let fm = ChainMap { matrices: vec![m0, m1] };
    let labels = |e: &Elements<C::Cube>| {
        let mut uf = UnionFind::new(e.objects.len());
        for &(_, s, t) in &e.edges {
            uf.union(s as usize, t as usize);
        }
        uf.labels()
    };
    let pi0 = pi0_bijection(&labels(&a), &labels(&b), |v| obj[v] as usize);
    let (ha, hb) = (a.chains.homology(), b.chains.homology());
    let cone = cone_iso_low(&a.chains, &b.chains, &fm);
    Ok((pi0, h1_verdict(&ha[1], &hb[1], cone)))
}

/// `Y_i = Y` and `Y(u) = id` over `index`, with the identity cone.
pub fn constant_cubes<C: CubicalCategory>(cat: &C, y: usize, n: usize) -> (Diagram<C::Cube>, Vec<C::Cube>) {
    (Diagram::cubes(n, vec![y; n + 1], |_| cat.identity(y)), vec![cat.identity(y); n + 1])
}

pub fn constant_finite<C: CubicalCategory>(cat: &C, y: usize, index: FiniteCategory) -> (Diagram<C::Cube>, Vec<C::Cube>) {
    let k = index.object_count();
    let arrows = vec![cat.identity(y); index.arrows().len()];
    (Diagram::Finite { index, objects: vec![y; k], arrows }, vec![cat.identity(y); k])
}
