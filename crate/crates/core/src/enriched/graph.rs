use super::ho::{verify_equivalence, EquivalenceWitness, ZigZag};
use super::CubicalCategory;
use crate::cube::{self, BoxMorphism};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::graphs::nerve::{digits, undigits};
use crate::graphs::{box_product, graph_maps, grid, hom_graph, map_name, Graph, HomGraph};
use crate::report::{Check, Verdict};

/// `Graph^m` on a finite list of graphs: `Graph^m(X, Y) = N^G_m hom(X, Y)`.
/// A `k`-cube of `Graph^m(X, Y)` is a map `I_m^{□k} □ X → Y`, stored as the
/// table indexed by `u·|X| + x` for a grid vertex `u`.
#[derive(Clone, Debug)]
pub struct GraphCategory {
    graphs: Vec<Graph>,
    names: Vec<String>,
    m: usize,
    d: usize,
    /// `boxes[a][k] = I_m^{□k} □ X_a` for `k ≤ d + 1`.
    boxes: Vec<Vec<Graph>>,
}

pub fn graph_cubical_category(objects: Vec<(String, Graph)>, m: usize, d: usize) -> Result<GraphCategory> {
    GraphCategory::new(objects, m, d)
}

impl GraphCategory {
    pub fn new(objects: Vec<(String, Graph)>, m: usize, d: usize) -> Result<Self> {
        if m == 0 {
            return domain("Graph^m needs m ≥ 1");
        }
        let grids: Vec<Graph> = (0..=d + 1).map(|k| grid(m, k)).collect();
        let (names, graphs): (Vec<String>, Vec<Graph>) = objects.into_iter().unzip();
        let boxes = graphs.iter().map(|x| grids.iter().map(|g| box_product(g, x)).collect()).collect();
        Ok(GraphCategory {
            graphs,
            names,
            m,
            d,
            boxes,
        })
    }

    pub fn graph(&self, a: usize) -> &Graph {
        &self.graphs[a]
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn side(&self) -> usize {
        self.m + 1
    }

    /// The cube `(u, x) ↦ c(ρ(u), x)` for a grid reindexing `ρ`.
    fn pull(&self, a: usize, c: &[u32], k_out: usize, rho: impl Fn(&mut Vec<usize>)) -> Vec<u32> {
        let n = self.graphs[a].order();
        let side = self.side();
        let mut out = Vec::with_capacity(side.pow(k_out as u32) * n);
        for v in 0..side.pow(k_out as u32) {
            let mut u = digits(v, side, k_out);
            rho(&mut u);
            let base = undigits(&u, side) * n;
            out.extend_from_slice(&c[base..base + n]);
        }
        out
    }

    /// A 0-cube from a vertex map `X_a → X_b`.
    pub fn morphism(&self, a: usize, b: usize, f: &[u32]) -> Option<Vec<u32>> {
        (f.len() == self.graphs[a].order() && self.graphs[a].is_map_to(&self.graphs[b], f)).then(|| f.to_vec())
    }
}

impl CubicalCategory for GraphCategory {
    type Cube = Vec<u32>;

    fn object_count(&self) -> usize {
        self.graphs.len()
    }

    fn object_name(&self, a: usize) -> String {
        self.names[a].clone()
    }

    fn truncation(&self) -> usize {
        self.d
    }

    fn cubes(&self, a: usize, b: usize, k: usize, cfg: &Config) -> Result<Vec<Vec<u32>>> {
        if k > self.d {
            return Ok(Vec::new());
        }
        graph_maps(&self.boxes[a][k], &self.graphs[b], cfg)
    }

    fn contains(&self, a: usize, b: usize, k: usize, c: &Vec<u32>) -> bool {
        k <= self.d && {
            let bx = &self.boxes[a][k];
            c.len() == bx.order() && bx.is_map_to(&self.graphs[b], c)
        }
    }

    fn face(&self, a: usize, _b: usize, k: usize, c: &Vec<u32>, i: usize, eps: u8) -> Vec<u32> {
        let end = if eps == 0 { 0 } else { self.m };
        self.pull(a, c, k - 1, |u| u.insert(i - 1, end))
    }

    fn degen(&self, a: usize, _b: usize, k: usize, c: &Vec<u32>, i: usize) -> Vec<u32> {
        self.pull(a, c, k + 1, |u| {
            u.remove(i - 1);
        })
    }

    fn conn(&self, a: usize, _b: usize, k: usize, c: &Vec<u32>, i: usize, eps: u8) -> Vec<u32> {
        self.pull(a, c, k + 1, |u| {
            let (p, q) = (u[i - 1], u.remove(i));
            u[i - 1] = if eps == 0 { p.max(q) } else { p.min(q) };
        })
    }

    fn identity(&self, a: usize) -> Vec<u32> {
        (0..self.graphs[a].order() as u32).collect()
    }

    fn compose(&self, a: usize, b: usize, _c: usize, j: usize, g: &Vec<u32>, k: usize, f: &Vec<u32>) -> Vec<u32> {
        let (na, nb) = (self.graphs[a].order(), self.graphs[b].order());
        let side = self.side();
        let (pj, pk) = (side.pow(j as u32), side.pow(k as u32));
        let mut out = vec![0; pj * pk * na];
        for v in 0..pk {
            for u in 0..pj {
                let w = u + v * pj;
                for x in 0..na {
                    out[w * na + x] = g[u * nb + f[v * na + x] as usize];
                }
            }
        }
        out
    }

    fn cube_name(&self, a: usize, b: usize, k: usize, c: &Vec<u32>) -> String {
        if k == 0 {
            return map_name(&self.graphs[b], c);
        }
        let n = self.graphs[a].order();
        let parts: Vec<String> = c.chunks(n).map(|f| map_name(&self.graphs[b], f)).collect();
        parts.join("")
    }
}

/// The cotensors `T_k = hom(I₁^{□k}, Y)` of a graph by `□^k`, `k ≤ n`.
/// A box morphism `μ: [1]^a → [1]^b` acts by `T_b → T_a`, `φ ↦ φ∘μ`.
#[derive(Clone, Debug)]
pub struct CotensorTower {
    pub y: Graph,
    pub levels: Vec<HomGraph>,
}

impl CotensorTower {
    pub fn new(y: &Graph, n: usize, cfg: &Config) -> Result<Self> {
        let levels = (0..=n).map(|k| hom_graph(&grid(1, k), y, cfg)).collect::<Result<Vec<_>>>()?;
        Ok(CotensorTower { y: y.clone(), levels })
    }

    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Graph {
        &self.levels[k].graph
    }

    /// `μ^*: T_b → T_a` as a vertex map.
    pub fn structure(&self, mu: &BoxMorphism) -> Vec<u32> {
        let (a, b) = (mu.src(), mu.dst());
        let (src, dst) = (&self.levels[b], &self.levels[a]);
        src.maps
            .iter()
            .map(|phi| {
                let psi: Vec<u32> = (0..1u32 << a).map(|v| phi[mu.apply(v) as usize]).collect();
                dst.index_of(&psi).expect("precomposition with a box map is a graph map")
            })
            .collect()
    }

    /// The cone `Y → T_k`, `y ↦ const_y`.
    pub fn cone(&self, k: usize) -> Vec<u32> {
        let t = &self.levels[k];
        (0..self.y.order() as u32)
            .map(|y| t.index_of(&vec![y; 1 << k]).expect("constant maps"))
            .collect()
    }

    /// Evaluation `T_k → Y` at the top vertex.
    pub fn top_evaluation(&self, k: usize) -> Vec<u32> {
        let top = (1usize << k) - 1;
        self.levels[k].maps.iter().map(|phi| phi[top]).collect()
    }

    /// The tower as objects `T_0, …, T_n` of `Graph¹`, next to `extra`.
    pub fn category(&self, extra: &[(String, Graph)], d: usize) -> Result<GraphCategory> {
        let mut objects: Vec<(String, Graph)> = (0..self.levels.len())
            .map(|k| (format!("T{k}"), self.levels[k].graph.clone()))
            .collect();
        objects.extend(extra.iter().cloned());
        GraphCategory::new(objects, 1, d)
    }

    /// `(νμ)^* = μ^* ν^*` and `id^* = id` over all box morphisms between
    /// the levels, each `μ^*` a graph map.
    pub fn verify_functorial(&self) -> Check {
        let n = self.height();
        let mut failures = Vec::new();
        let mut checked = 0;
        for a in 0..=n {
            let id = BoxMorphism::identity(a);
            checked += 1;
            if self.structure(&id) != (0..self.levels[a].maps.len() as u32).collect::<Vec<_>>() {
                failures.push(format!("id^* ≠ id on T{a}"));
            }
            for b in 0..=n {
                for mu in cube::all_morphisms(a, b) {
                    let ms = self.structure(&mu);
                    checked += 1;
                    if !self.level(b).is_map_to(self.level(a), &ms) {
                        failures.push(format!("{mu}^* is not a graph map"));
                    }
                    for c in 0..=n {
                        for nu in cube::all_morphisms(b, c) {
                            let nm = nu.compose(&mu).unwrap();
                            let ns = self.structure(&nu);
                            let lhs = self.structure(&nm);
                            let rhs: Vec<u32> = ns.iter().map(|&v| ms[v as usize]).collect();
                            checked += 1;
                            if lhs != rhs {
                                failures.push(format!("({nu} ∘ {mu})^* ≠ {mu}^* ∘ {nu}^*"));
                            }
                        }
                    }
                }
            }
        }
        Check::new(
            format!("cotensor tower functorial ({checked} identities)"),
            Verdict::from_bool(failures.is_empty(), || failures.join("; ")),
        )
    }
}

/// One step `T_k → T_{k+1}` of the tower: `s = σ₁^*`, its section
/// `r = ∂_{1,1}^*`, and the 1-cube `H` induced by `γ_{1,0}` from `id` to
/// `s∘r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionStep {
    pub level: usize,
    pub s: Vec<u32>,
    pub r: Vec<u32>,
    pub homotopy: Vec<u32>,
}

fn compose0(g: &[u32], f: &[u32]) -> Vec<u32> {
    f.iter().map(|&v| g[v as usize]).collect()
}

/// Check, inside `cat` whose objects `0..=n` are the tower levels, that
/// each step has its section and connection homotopy, and assemble the
/// resulting witness that the cone `Y → T_n` is a homotopy equivalence.
pub fn connection_homotopy_check(
    cat: &GraphCategory,
    tower: &CotensorTower,
    n: usize,
) -> Result<(Vec<Check>, Vec<ConnectionStep>, EquivalenceWitness<Vec<u32>>)> {
    if n > tower.height() || n >= cat.object_count() || (cat.truncation() < 1 && n > 0) {
        return domain(format!("the tower does not reach □^{n} ⋔ Y within the category"));
    }
    for k in 0..=n {
        if cat.graph(k) != tower.level(k) {
            return domain(format!("object {k} is not the cotensor by □^{k}"));
        }
    }
    let mut checks = Vec::new();
    let mut steps = Vec::new();
    for k in 0..n {
        let s = tower.structure(&BoxMorphism::generator(cube::degen(1), k + 1)?);
        let r = tower.structure(&BoxMorphism::generator(cube::face(1, 1), k)?);
        let gamma = BoxMorphism::generator(cube::conn(1, 0), k + 2)?;
        // H(t, ψ) = ψ∘γ_{1,0}(t, -)
        let t = tower.level(k + 1).order();
        let mut h = vec![0u32; 2 * t];
        for (p, psi) in tower.levels[k + 1].maps.iter().enumerate() {
            for tt in 0..2u32 {
                let img: Vec<u32> = (0..1u32 << (k + 1)).map(|u| psi[gamma.apply(tt | (u << 1)) as usize]).collect();
                h[tt as usize * t + p] = tower.levels[k + 1].index_of(&img).expect("graph map");
            }
        }
        let (tk, tk1) = (k, k + 1);
        let rs = cat.compose(tk, tk1, tk, 0, &r, 0, &s);
        let sr = cat.compose(tk1, tk, tk1, 0, &s, 0, &r);
        let ok = cat.contains(tk, tk1, 0, &s)
            && cat.contains(tk1, tk, 0, &r)
            && rs == cat.identity(tk)
            && cat.contains(tk1, tk1, 1, &h)
            && cat.face(tk1, tk1, 1, &h, 1, 0) == cat.identity(tk1)
            && cat.face(tk1, tk1, 1, &h, 1, 1) == sr;
        checks.push(Check::new(
            format!("level {k}: r∘s = id and γ₁₀ gives a 1-cube id ⇝ s∘r on T{}", k + 1),
            Verdict::from_bool(ok, || format!("step {k} fails its endpoint identities")),
        ));
        steps.push(ConnectionStep {
            level: k,
            s,
            r,
            homotopy: h,
        });
    }
    // c = s_{n-1}⋯s_0, e = r_0⋯r_{n-1}
    let mut c: Vec<u32> = cat.identity(0);
    let mut e: Vec<u32> = cat.identity(0);
    for st in &steps {
        c = compose0(&st.s, &c);
        e = compose0(&e, &st.r);
    }
    checks.push(Check::new(
        format!("composite of the steps is the cone Y → T{n} with section the top evaluation"),
        Verdict::from_bool(c == tower.cone(n) && e == tower.top_evaluation(n), || {
            "composites do not match the cone and evaluation".into()
        }),
    ));
    // whisker each H_i into C(T_n, T_n)
    let mut back = Vec::new();
    for i in (0..n).rev() {
        let mut prefix = cat.identity(i + 1);
        let mut suffix = cat.identity(i + 1);
        for st in &steps[i + 1..] {
            prefix = compose0(&st.s, &prefix);
            suffix = compose0(&suffix, &st.r);
        }
        let hs = cat.compose(n, i + 1, i + 1, 1, &steps[i].homotopy, 0, &suffix);
        let w = cat.compose(n, i + 1, n, 0, &prefix, 1, &hs);
        back.push((w, false));
    }
    back.reverse();
    let fg = ZigZag {
        start: compose0(&c, &e),
        steps: back,
    };
    let witness = EquivalenceWitness {
        inverse: e,
        gf: ZigZag::constant(cat.identity(0)),
        fg,
    };
    checks.push(Check::new(
        format!("cone Y → T{n} is a homotopy equivalence via the connection zig-zag"),
        verify_equivalence(cat, 0, n, &c, &witness),
    ));
    Ok((checks, steps, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::{check_axioms, ho};
    use crate::graphs::homotopy_classes;
    use crate::report::overall;

    fn named(s: &str) -> (String, Graph) {
        (s.to_string(), Graph::builtin(s).unwrap())
    }

    #[test]
    fn point_category_is_terminal() {
        let cfg = Config::default();
        let c = GraphCategory::new(vec![named("I0")], 1, 2).unwrap();
        for k in 0..=2 {
            assert_eq!(c.cubes(0, 0, k, &cfg).unwrap().len(), 1);
        }
        assert!(check_axioms(&c, &cfg).unwrap().failures.is_empty());
    }

    #[test]
    fn axioms_on_interval_and_square() {
        let cfg = Config::default();
        let c = GraphCategory::new(vec![named("I1"), named("C4")], 1, 1).unwrap();
        let r = check_axioms(&c, &cfg).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert!(r.checked > 1000);
    }

    #[test]
    fn ho_matches_homotopy_classes() {
        let cfg = Config::default();
        let (c4, i0) = (Graph::builtin("C4").unwrap(), Graph::builtin("I0").unwrap());
        let c = GraphCategory::new(vec![("C4".into(), c4.clone()), ("I0".into(), i0.clone())], 1, 1).unwrap();
        let h = ho(&c, &cfg).unwrap();
        let gs = [&c4, &i0];
        for a in 0..2 {
            for b in 0..2 {
                let classes = homotopy_classes(gs[a], gs[b], &cfg).unwrap().count();
                assert_eq!(h.category.hom(a, b).len(), classes);
            }
        }
    }

    #[test]
    fn tower_steps_for_c5() {
        let cfg = Config::default();
        let y = Graph::builtin("C5").unwrap();
        let tower = CotensorTower::new(&y, 2, &cfg).unwrap();
        assert_eq!(tower.level(1).order(), 15);
        assert!(tower.verify_functorial().verdict.is_pass());
        let cat = tower.category(&[], 1).unwrap();
        let (checks, steps, _) = connection_homotopy_check(&cat, &tower, 2).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(overall(&checks).is_pass(), "{checks:?}");
    }

    #[test]
    fn level_zero_is_trivial() {
        let cfg = Config::default();
        let tower = CotensorTower::new(&Graph::builtin("C4").unwrap(), 0, &cfg).unwrap();
        let cat = tower.category(&[], 1).unwrap();
        let (checks, steps, w) = connection_homotopy_check(&cat, &tower, 0).unwrap();
        assert!(steps.is_empty() && w.fg.is_empty());
        assert!(overall(&checks).is_pass());
    }
}
