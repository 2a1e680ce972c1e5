//! The acceptance suite: one line per criterion, non-zero exit on failure.

use cubix::coherent::{coherent_nerve, counit_functor, ho_nerve_iso_check, rigidification, Rigidification};
use cubix::cset::{enumerate_maps, find_isomorphism, standard_cell, CellKind, CubicalMap, CubicalSet};
use cubix::cube::cubical_identities;
use cubix::dmsl::{diagonal_identity_check, graph_localization_shadow, graph_resolution, GraphDiagram, GraphTest, ResolutionReport};
use cubix::enriched::{
    connection_homotopy_check, mapping_space, sk0, suspension, verify_equivalence, verify_functor, CotensorTower,
    CubicalCategory, FiniteCategory, GraphCategory,
};
use cubix::geom::{associator, curry, internal_hom, representable_product_map, tensor, triangulate_with};
use cubix::graphs::{box_product, find_graph_isomorphism, graph_nerve, is_homotopy_equivalence, Equivalence, Graph};
use cubix::homology::{cubical_chains, cubical_homology, minor_gcd, smith_normal_form, ChainComplex, IntegerMatrix};
use cubix::report::overall;
use cubix::simplicial::{boundary_delta, delta, product, SimplicialMap};
use cubix::Config;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cell(kind: CellKind, n: usize, d: usize) -> Result<CubicalSet, String> {
    Ok(e(standard_cell(kind, n, d, &Config::default()))?.set)
}

fn graph(name: &str) -> Graph {
    Graph::builtin(name).expect("builtin graph")
}

fn cubical_identity_table() -> Outcome {
    let ids = cubical_identities(5);
    let bad: Vec<_> = ids.iter().filter(|i| !i.holds()).collect();
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0].label))?;
    ensure(ids.iter().all(|i| i.ambient().is_some_and(|a| a <= 5)), || "identity outside ambient dimension 5".into())?;
    Ok(format!("{} identity instances, 0 violations", ids.len()))
}

fn geometric_product() -> Outcome {
    let cfg = Config::default();
    let i = e(standard_cell(CellKind::Cube, 1, 3, &cfg))?;
    let sq = e(standard_cell(CellKind::Cube, 2, 3, &cfg))?;
    let ii = e(tensor(&i.set, &i.set, &cfg))?;
    let f = e(representable_product_map(&i, &i, &ii, &sq))?;
    ensure(f.check_natural(&ii.set, &sq.set).is_ok() && f.is_bijective(&ii.set, &sq.set), || "□¹ ⊗ □¹ ≇ □²".into())?;
    // associativity on representables of total dimension ≤ 4
    let mut triples = 0;
    for p in 0..=4 {
        for q in 0..=4 - p {
            for r in 0..=4 - p - q {
                let d = p + q + r;
                let (x, y, z) = (cell(CellKind::Cube, p, d)?, cell(CellKind::Cube, q, d)?, cell(CellKind::Cube, r, d)?);
                let xy = e(tensor(&x, &y, &cfg))?;
                let xy_z = e(tensor(&xy.set, &z, &cfg))?;
                let yz = e(tensor(&y, &z, &cfg))?;
                let x_yz = e(tensor(&x, &yz.set, &cfg))?;
                let a = e(associator(&x, &y, &z, &xy, &xy_z, &yz, &x_yz))?;
                ensure(a.check_natural(&xy_z.set, &x_yz.set).is_ok() && a.is_bijective(&xy_z.set, &x_yz.set), || {
                    format!("associator not an isomorphism for (□^{p} ⊗ □^{q}) ⊗ □^{r}")
                })?;
                triples += 1;
            }
        }
    }
    // currying Z ⊗ X → Y against Z → hom(X, Y)
    let d = 2;
    let p = cell(CellKind::Cube, 0, d)?;
    let iv = cell(CellKind::Cube, 1, d)?;
    let b1 = cell(CellKind::Boundary, 1, d)?;
    let b2 = cell(CellKind::Boundary, 2, d)?;
    let bx = cell(CellKind::OpenBox { i: 1, eps: 0 }, 2, d)?;
    let s2 = cell(CellKind::Cube, 2, d)?;
    let corpus: [(&CubicalSet, &CubicalSet, &CubicalSet); 10] = [
        (&p, &iv, &iv),
        (&iv, &p, &b2),
        (&iv, &iv, &iv),
        (&iv, &iv, &s2),
        (&b1, &iv, &b2),
        (&iv, &b1, &bx),
        (&p, &b2, &s2),
        (&iv, &iv, &b2),
        (&b1, &b1, &iv),
        (&iv, &bx, &s2),
    ];
    let mut maps = 0;
    for (t, (z, x, y)) in corpus.iter().enumerate() {
        let zx = e(tensor(z, x, &cfg))?;
        let hom = e(internal_hom(x, y, d, &cfg))?;
        let left = e(enumerate_maps(&zx.set, y, &cfg))?;
        let right = e(enumerate_maps(z, &hom.set, &cfg))?;
        let mut images: Vec<CubicalMap> = Vec::with_capacity(left.len());
        for f in &left {
            let g = e(curry(z, x, &zx, f, &hom))?;
            ensure(g.check_natural(z, &hom.set).is_ok(), || format!("triple {t}: curried map is not natural"))?;
            images.push(g);
        }
        images.sort_by(|a, b| a.images.cmp(&b.images));
        images.dedup();
        ensure(images.len() == left.len() && left.len() == right.len(), || {
            format!("triple {t}: {} maps Z ⊗ X → Y, {} distinct curried, {} maps Z → hom(X, Y)", left.len(), images.len(), right.len())
        })?;
        maps += left.len();
    }
    Ok(format!("□¹ ⊗ □¹ ≅ □², {triples} associators, currying bijective on 10 triples ({maps} maps)"))
}

/// `T(X ⊗ Y) → TX × TY` from splitting chains of `[1]^{m+n}`.
fn triangulation_comparison(x: &CubicalSet, y: &CubicalSet, d: usize, cfg: &Config) -> Result<(), String> {
    let xy = e(tensor(x, y, cfg))?;
    let txy = e(triangulate_with(&xy.set, d, cfg))?;
    let (tx, ty) = (e(triangulate_with(x, d, cfg))?, e(triangulate_with(y, d, cfg))?);
    let prod = e(product(&tx.set, &ty.set, cfg))?;
    let mut images = Vec::new();
    for k in 0..=d {
        let mut row = Vec::with_capacity(txy.set.count(k));
        for s in &txy.simplices[k] {
            let c = xy.cube(s.n as usize, s.x);
            let (m, n) = (c.m as usize, s.n as usize - c.m as usize);
            let mask = (1u32 << m) - 1;
            let lo: Vec<u32> = s.chain.iter().map(|&v| v & mask).collect();
            let hi: Vec<u32> = s.chain.iter().map(|&v| v >> m).collect();
            let a = tx.locate(x, m, c.x, &lo).ok_or("left simplex missing")?;
            let b = ty.locate(y, n, c.y, &hi).ok_or("right simplex missing")?;
            row.push(a * ty.set.count(k) as u32 + b);
        }
        images.push(row);
    }
    let f = SimplicialMap { images };
    e(f.check_natural(&txy.set, &prod))?;
    ensure(f.is_bijective(&txy.set, &prod), || "comparison is not bijective".into())
}

fn triangulation() -> Outcome {
    let cfg = Config::default();
    let mut counts = Vec::new();
    for n in 0..=4 {
        let t = e(triangulate_with(&cell(CellKind::Cube, n, n)?, n, &cfg))?;
        let top = t.set.nondegenerate(n).len();
        let fact: usize = (1..=n).product();
        ensure(top == fact, || format!("T(□^{n}) has {top} nondegenerate {n}-simplices, expected {fact}"))?;
        counts.push(top.to_string());
    }
    // simplices of T(X ⊗ Y) sit in nondegenerate cubes of dimension up to 4
    let (d, full) = (3, 4);
    let corpus = [
        cell(CellKind::Cube, 1, full)?,
        cell(CellKind::Boundary, 1, full)?,
        cell(CellKind::Boundary, 2, full)?,
        cell(CellKind::OpenBox { i: 1, eps: 0 }, 2, full)?,
        cell(CellKind::Cube, 2, full)?,
    ];
    let mut pairs = 0;
    for x in &corpus {
        for y in &corpus {
            triangulation_comparison(x, y, d, &cfg)?;
            pairs += 1;
        }
    }
    Ok(format!("n! counts {}, T(X ⊗ Y) ≅ TX × TY on {pairs} pairs", counts.join(",")))
}

fn graph_facts() -> Outcome {
    let cfg = Config::default();
    let sq = box_product(&graph("I1"), &graph("I1"));
    ensure(e(find_graph_isomorphism(&sq, &graph("C4"), &cfg))?.is_some(), || "I₁ □ I₁ ≇ C₄".into())?;
    for c in ["C3", "C4"] {
        let x = graph(c);
        let f = vec![0; x.order()];
        match e(is_homotopy_equivalence(&x, &graph("I0"), &f, 4, &cfg))? {
            Equivalence::Yes { inverse, gf, fg } => {
                let ok = gf.verify(&x, &x)
                    && fg.verify(&graph("I0"), &graph("I0"))
                    && gf.target() == (0..x.order() as u32).collect::<Vec<_>>()
                    && gf.source().iter().all(|&v| v == inverse[0])
                    && fg.target() == [0];
                ensure(ok, || format!("{c} → I₀ witness does not verify"))?;
            }
            other => return Err(format!("{c} → I₀: {:?}", other.verdict())),
        }
    }
    let c5 = graph("C5");
    let h = |g: &Graph| -> Result<String, String> {
        let n = e(graph_nerve(g, 1, 2, &cfg))?;
        Ok(e(cubical_homology(&n.set, 1, &cfg))?[1].group_string())
    };
    let (h5, h0) = (h(&c5)?, h(&graph("I0"))?);
    ensure(h5 == "Z" && h0 == "0", || format!("H₁(N^G_1 C₅) = {h5}, H₁(N^G_1 I₀) = {h0}"))?;
    match e(is_homotopy_equivalence(&c5, &graph("I0"), &[0; 5], 4, &cfg))? {
        Equivalence::No(c) if c.invariant == "H1" => {}
        other => return Err(format!("C₅ → I₀ not certified No by H₁: {:?}", other.verdict())),
    }
    Ok("I₁ □ I₁ ≅ C₄, C₃ and C₄ ≃ I₀ with witnesses, C₅ → I₀ No by H₁ = Z vs 0".into())
}

fn localization_shadow() -> Outcome {
    // level 2 of hom(C5, C3) has about 14M grid maps
    let cfg = Config { max_cells: 32_000_000, ..Config::default() };
    let names = ["I0", "I1", "I2", "C3", "C4", "C5", "K2"];
    let mut pairs = 0;
    for x in names {
        for y in names {
            let r = e(graph_localization_shadow(&graph(x), &graph(y), 1, &cfg))?;
            ensure(r.verdict().is_pass(), || format!("({x}, {y}): {}", r.verdict()))?;
            pairs += 1;
        }
    }
    Ok(format!("π₀ N^G_1 hom(X, Y) ↔ [X, Y] on {pairs} ordered pairs, stable under l*, r*"))
}

fn collapse_c4() -> Vec<GraphTest> {
    vec![GraphTest::collapse("C4").expect("builtin")]
}

fn verdicts(r: &ResolutionReport) -> [bool; 3] {
    ["R1", "R2", "R3"].map(|c| r.verdict(c).is_some_and(|v| v.is_pass()))
}

fn resolution_conditions() -> Outcome {
    let cfg = Config::default();
    for y in ["I0", "C4", "C5"] {
        let r = e(graph_resolution(&(y.into(), graph(y)), &GraphDiagram::Tower { n: 2 }, &collapse_c4(), 4, &cfg))?;
        ensure(r.is_well_formed() && verdicts(&r) == [true; 3], || format!("tower of {y}: {}", r.overall()))?;
    }
    let under = GraphDiagram::TowerUnder {
        n: 2,
        z: ("I0".into(), graph("I0")),
        map: vec![0],
    };
    let negatives = [
        ("discrete index at I0", "I0", GraphDiagram::Finite(FiniteCategory::discrete(2)), [false, true, true], "R1"),
        ("C₅ tower under I0", "C5", under, [true, false, true], "R2"),
        ("constant at C4", "C4", GraphDiagram::Constant { n: 2 }, [true, true, false], "R3"),
    ];
    for (name, y, diagram, expect, failing) in negatives {
        let r = e(graph_resolution(&(y.into(), graph(y)), &diagram, &collapse_c4(), 4, &cfg))?;
        ensure(r.is_well_formed() && verdicts(&r) == expect, || format!("{name}: {:?}", verdicts(&r)))?;
        ensure(r.verdict(failing).is_some_and(|v| v.is_fail()), || format!("{name}: {failing} is not a Fail"))?;
    }
    Ok("towers of I₀, C₄, C₅ pass R1-R3; discrete, under-I₀ and constant controls fail R1, R2, R3 only".into())
}

fn connection_witness() -> Outcome {
    let cfg = Config::default();
    let mut cubes = 0;
    for y in ["I0", "I1", "C4", "C5"] {
        let tower = e(CotensorTower::new(&graph(y), 2, &cfg))?;
        let cat = e(tower.category(&[], 1))?;
        for n in 0..=2 {
            let (checks, steps, w) = e(connection_homotopy_check(&cat, &tower, n))?;
            ensure(overall(&checks).is_pass(), || format!("{y}, n = {n}: {}", overall(&checks)))?;
            ensure(steps.len() == n, || format!("{y}, n = {n}: {} steps", steps.len()))?;
            for s in &steps {
                let (k, h) = (s.level, &s.homotopy);
                ensure(cat.contains(k + 1, k + 1, 1, h), || format!("{y}: step {k} is not a 1-cube"))?;
                let sr = cat.compose(k + 1, k, k + 1, 0, &s.s, 0, &s.r);
                let ends = (cat.face(k + 1, k + 1, 1, h, 1, 0), cat.face(k + 1, k + 1, 1, h, 1, 1));
                ensure(ends == (cat.identity(k + 1), sr.clone()) || ends == (sr, cat.identity(k + 1)), || {
                    format!("{y}: step {k} does not join id and s∘r")
                })?;
                cubes += 1;
            }
            let cone = tower.cone(n);
            let v = verify_equivalence(&cat, 0, n, &cone, &w);
            ensure(v.is_pass(), || format!("{y}, n = {n}: witness {v}"))?;
        }
    }
    Ok(format!("{cubes} connection 1-cubes with verified endpoints, witnesses verified for n ≤ 2"))
}

fn ho_categories() -> Outcome {
    let cfg = Config::default();
    let mut names = Vec::new();
    for (name, c) in [
        ("Sk₀ [2]", FiniteCategory::chain(2)),
        ("Sk₀ parallel pair", FiniteCategory::parallel_pair()),
        ("Sk₀ Z/2", FiniteCategory::cyclic_group(2)),
    ] {
        let s = e(sk0(&c, 1, &cfg))?;
        let checks = e(ho_nerve_iso_check(&s, &cfg))?;
        ensure(overall(&checks).is_pass(), || format!("{name}: {}", overall(&checks)))?;
        names.push(name);
    }
    let sigma = e(suspension(&cell(CellKind::Cube, 1, 1)?, &cfg))?;
    let checks = e(ho_nerve_iso_check(&sigma, &cfg))?;
    ensure(overall(&checks).is_pass(), || format!("Σ□¹: {}", overall(&checks)))?;
    let g = e(GraphCategory::new(vec![("C4".into(), graph("C4")), ("I0".into(), graph("I0"))], 1, 1))?;
    let checks = e(ho_nerve_iso_check(&g, &cfg))?;
    ensure(overall(&checks).is_pass(), || format!("Graph¹ on C₄, I₀: {}", overall(&checks)))?;
    Ok(format!("Ho C ≅ Ho N_□C for {}, Σ□¹ and Graph¹ on {{C₄, I₀}}", names.join(", ")))
}

fn rigidification_facts() -> Outcome {
    let cfg = Config::default();
    for n in 1..=3 {
        let r = e(rigidification(&e(delta(n, 4, &cfg))?, 3, &cfg))?;
        let hom = e(mapping_space(&r, 0, n, 3, &cfg))?;
        let target = cell(CellKind::Cube, n - 1, 3)?;
        ensure(e(find_isomorphism(&hom.set, &target, &cfg))?.is_some(), || format!("𝔠(Δ^{n})(0,{n}) ≇ □^{}", n - 1))?;
    }
    let bd = e(rigidification(&e(boundary_delta(2, 3, &cfg))?, 2, &cfg))?;
    let h = e(mapping_space(&bd, 0, 2, 2, &cfg))?;
    let nondeg: usize = (0..=2).map(|k| h.set.nondegenerate(k).len()).sum();
    ensure(nondeg == 2, || format!("𝔠(∂Δ²)(0,2) has {nondeg} nondegenerate cubes"))?;
    let mut checked = 0;
    let sigma = e(suspension(&cell(CellKind::Cube, 1, 1)?, &cfg))?;
    let chain = e(sk0(&FiniteCategory::chain(2), 2, &cfg))?;
    let chain3 = e(sk0(&FiniteCategory::chain(3), 1, &cfg))?;
    checked += counit_functoriality(&sigma, 1, &cfg)?;
    checked += counit_functoriality(&chain, 2, &cfg)?;
    checked += counit_functoriality(&chain3, 1, &cfg)?;
    Ok(format!("𝔠(Δⁿ)(0,n) ≅ □^(n-1) for n ≤ 3, 𝔠(∂Δ²)(0,2) has 2 cubes, counit functorial ({checked} instances)"))
}

fn counit_functoriality<C: CubicalCategory>(cat: &C, d: usize, cfg: &Config) -> Result<usize, String> {
    let n = e(coherent_nerve(cat, d + 1, cfg))?;
    let r = e(Rigidification::new(n.set.clone(), d, cfg))?;
    let rep = e(verify_functor(&r, &n.category, &counit_functor(&n), cfg))?;
    ensure(rep.failures.is_empty() && rep.checked > 0, || format!("counit: {:?}", rep.failures.first()))?;
    Ok(rep.checked)
}

fn diagonal_identity() -> Outcome {
    let cfg = Config::default();
    let corpus = [
        ("□¹", cell(CellKind::Cube, 1, 2)?),
        ("∂□²", cell(CellKind::Boundary, 2, 2)?),
        ("⊓²_{1,0}", cell(CellKind::OpenBox { i: 1, eps: 0 }, 2, 2)?),
        ("N^G_1 C₄", e(graph_nerve(&graph("C4"), 1, 2, &cfg))?.set),
    ];
    for (name, x) in &corpus {
        let checks = e(diagonal_identity_check(x, &cfg))?;
        ensure(overall(&checks).is_pass(), || format!("{name}: {}", overall(&checks)))?;
    }
    Ok("diag ≅ X for □¹, ∂□², ⊓²_{1,0}, N^G_1 C₄".into())
}

fn homology_engine() -> Outcome {
    let cfg = Config::default();
    let mut complexes = 0;
    let mut sets = vec![
        cell(CellKind::Cube, 3, 3)?,
        cell(CellKind::Boundary, 3, 3)?,
        cell(CellKind::OpenBox { i: 2, eps: 1 }, 3, 3)?,
    ];
    for g in ["I0", "I2", "C3", "C4", "C5", "K2"] {
        sets.push(e(graph_nerve(&graph(g), 1, 3, &cfg))?.set);
    }
    for x in &sets {
        let c = e(cubical_chains(x, 3, &cfg))?;
        let t = e(triangulate_with(x, 3, &cfg))?;
        let s = ChainComplex::of(&t.set, 3);
        ensure(c.boundary_squares_to_zero() && s.boundary_squares_to_zero(), || "∂∂ ≠ 0".into())?;
        complexes += 2;
    }
    for n in 0..=3 {
        for s in [e(delta(n, 3, &cfg))?, e(boundary_delta(n.max(1), 3, &cfg))?] {
            ensure(ChainComplex::of(&s, 3).boundary_squares_to_zero(), || "∂∂ ≠ 0 on a simplex".into())?;
            complexes += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in 0..100 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntegerMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        let f = &snf.invariant_factors;
        ensure(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || format!("matrix {t}: divisibility fails"))?;
        ensure(f.iter().all(|d| d > &BigInt::zero()) && f.len() == snf.rank, || format!("matrix {t}: factors not positive"))?;
        let mut prefix = BigInt::one();
        for k in 1..=r.min(c) {
            let expect = if k <= f.len() {
                prefix *= &f[k - 1];
                prefix.clone()
            } else {
                BigInt::zero()
            };
            ensure(minor_gcd(&m, k) == expect && minor_gcd(&snf.diagonal, k) == expect, || {
                format!("matrix {t}: gcd of {k}-minors is not d₁⋯d_{k}")
            })?;
        }
    }
    Ok(format!("∂∂ = 0 on {complexes} complexes, SNF divisibility and minor gcds on 100 random matrices"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("cubical identities", Duration::from_secs(10), cubical_identity_table),
        ("geometric product", Duration::from_secs(30), geometric_product),
        ("triangulation", Duration::from_secs(30), triangulation),
        ("graph facts", Duration::from_secs(120), graph_facts),
        ("localization shadow", Duration::from_secs(300), localization_shadow),
        ("resolution conditions", Duration::from_secs(300), resolution_conditions),
        ("connection homotopy witness", Duration::from_secs(60), connection_witness),
        ("Ho C ≅ Ho N_□C", Duration::from_secs(120), ho_categories),
        ("rigidification", Duration::from_secs(60), rigidification_facts),
        ("diagonal identity", Duration::from_secs(30), diagonal_identity),
        ("homology engine", Duration::from_secs(30), homology_engine),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took > *budget {
                Err(format!("took {:.1}s, budget {}s", took.as_secs_f64(), budget.as_secs()))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS {name} ({:.1}s): {msg}", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({:.1}s): {msg}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
