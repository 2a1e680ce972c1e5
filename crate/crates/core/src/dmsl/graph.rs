use super::resolution::{
    check_resolution, constant_cubes, constant_finite, Diagram, Obstruction, ResolutionCandidate, ResolutionReport,
    WTest, WeakEquivalences,
};
use crate::cube::BoxMorphism;
use crate::enriched::{connection_homotopy_check, CotensorTower, CubicalCategory, FiniteCategory, GraphCategory};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::graphs::{graph_nerve, is_homotopy_equivalence, Graph};
use crate::homology::cubical_homology_direct;
use crate::report::Verdict;

/// A graph map `f: X′ → X` to test against the colimit presheaf.
#[derive(Clone, Debug)]
pub struct GraphTest {
    pub source: (String, Graph),
    pub target: (String, Graph),
    pub map: Vec<u32>,
}

impl GraphTest {
    /// The collapse `X → I₀`.
    pub fn collapse(name: &str) -> Result<GraphTest> {
        let x = Graph::builtin(name)?;
        Ok(GraphTest {
            map: vec![0; x.order()],
            source: (name.into(), x),
            target: ("I0".into(), Graph::builtin("I0")?),
        })
    }

    /// The inclusion of a vertex `I₀ → X`.
    pub fn point(name: &str, v: u32) -> Result<GraphTest> {
        Ok(GraphTest {
            source: ("I0".into(), Graph::builtin("I0")?),
            target: (name.into(), Graph::builtin(name)?),
            map: vec![v],
        })
    }
}

/// Shape of the diagram under `Y` in `Graph¹`.
#[derive(Clone, Debug)]
pub enum GraphDiagram {
    /// `T_k = hom(I₁^{□k}, Y)` over `□^op_≤n`, with connection witnesses.
    Tower { n: usize },
    /// The tower of `Y`, under another graph `Z` through a map `Z → Y`.
    TowerUnder { n: usize, z: (String, Graph), map: Vec<u32> },
    /// `Y` at every index of `□^op_≤n`.
    Constant { n: usize },
    /// `Y` at every object of a finite index category.
    Finite(FiniteCategory),
}

/// Homotopy equivalences of graphs, decided by [`is_homotopy_equivalence`].
pub fn graph_homotopy_equivalences<'a>(
    cat: &'a GraphCategory,
    bound: usize,
    cfg: &'a Config,
) -> WeakEquivalences<'a, Vec<u32>> {
    WeakEquivalences {
        name: "graph homotopy equivalences".into(),
        contains: Box::new(move |a, b, f| match is_homotopy_equivalence(cat.graph(a), cat.graph(b), f, bound, cfg) {
            Ok(e) => e.verdict(),
            Err(e) => Verdict::Inconclusive(e.to_string()),
        }),
    }
}

/// π₀ and `H_1(N^G_1 -)` disagreeing on two objects.
pub fn graph_obstruction<'a>(cat: &'a GraphCategory, cfg: &'a Config) -> Obstruction<'a> {
    Box::new(move |a, b| {
        let (x, y) = (cat.graph(a), cat.graph(b));
        if x.component_count() != y.component_count() {
            return Ok(Some(format!(
                "pi0: {} has {} components, {} has {}",
                cat.object_name(a),
                x.component_count(),
                cat.object_name(b),
                y.component_count()
            )));
        }
        let hx = cubical_homology_direct(&graph_nerve(x, 1, 2, cfg)?.set, 1, cfg)?;
        let hy = cubical_homology_direct(&graph_nerve(y, 1, 2, cfg)?.set, 1, cfg)?;
        Ok((hx[1] != hy[1]).then(|| {
            format!(
                "H1: H_1(N^G_1 {}) = {} but H_1(N^G_1 {}) = {}",
                cat.object_name(a),
                hx[1].group_string(),
                cat.object_name(b),
                hy[1].group_string()
            )
        }))
    })
}

/// Build the diagram in `Graph¹` (mapping spaces truncated at 1) and run
/// [`check_resolution`]. Test graphs are appended as extra objects.
pub fn graph_resolution(
    y: &(String, Graph),
    diagram: &GraphDiagram,
    tests: &[GraphTest],
    bound: usize,
    cfg: &Config,
) -> Result<ResolutionReport> {
    let extra: Vec<(String, Graph)> = tests.iter().flat_map(|t| [t.source.clone(), t.target.clone()]).collect();
    let (cat, target, tower) = match diagram {
        GraphDiagram::Tower { n } | GraphDiagram::TowerUnder { n, .. } => {
            let tower = CotensorTower::new(&y.1, *n, cfg)?;
            let mut extra_all = Vec::new();
            if let GraphDiagram::TowerUnder { z, .. } = diagram {
                extra_all.push(z.clone());
            }
            extra_all.extend(extra.iter().cloned());
            let cat = tower.category(&extra_all, 1)?;
            let target = if matches!(diagram, GraphDiagram::TowerUnder { .. }) { n + 1 } else { 0 };
            (cat, target, Some(tower))
        }
        GraphDiagram::Constant { .. } | GraphDiagram::Finite(_) => {
            let mut objects = vec![y.clone()];
            objects.extend(extra.iter().cloned());
            (GraphCategory::new(objects, 1, 1)?, 0, None)
        }
    };
    let test_base = cat.object_count() - extra.len();
    let mut wtests = Vec::new();
    for (k, t) in tests.iter().enumerate() {
        let (s, d) = (test_base + 2 * k, test_base + 2 * k + 1);
        let Some(map) = cat.morphism(s, d, &t.map) else {
            return domain(format!("test map {} → {} is not a graph map", t.source.0, t.target.0));
        };
        wtests.push(WTest { source: s, target: d, map });
    }
    let (diag, cone, witnesses) = match (diagram, &tower) {
        (GraphDiagram::Tower { n }, Some(tower)) => {
            let n = *n;
            let d = Diagram::cubes(n, (0..=n).collect(), |mu| tower.structure(mu));
            let cone: Vec<Vec<u32>> = (0..=n).map(|k| tower.structure(&to_point(k))).collect();
            let mut witnesses = Vec::new();
            for k in 0..=n {
                witnesses.push(Some(connection_homotopy_check(&cat, tower, k)?.2));
            }
            (d, cone, witnesses)
        }
        (GraphDiagram::TowerUnder { n, map, .. }, Some(tower)) => {
            let n = *n;
            let d = Diagram::cubes(n, (0..=n).collect(), |mu| tower.structure(mu));
            let cone = (0..=n)
                .map(|k| {
                    let c = tower.cone(k);
                    map.iter().map(|&v| c[v as usize]).collect()
                })
                .collect();
            (d, cone, vec![None; n + 1])
        }
        (GraphDiagram::Constant { n }, _) => {
            let (d, cone) = constant_cubes(&cat, 0, *n);
            (d, cone, vec![None; n + 1])
        }
        (GraphDiagram::Finite(index), _) => {
            let k = index.object_count();
            let (d, cone) = constant_finite(&cat, 0, index.clone());
            (d, cone, vec![None; k])
        }
        _ => unreachable!(),
    };
    let candidate = ResolutionCandidate {
        category: &cat,
        target,
        diagram: diag,
        cone,
        weak_equivalences: graph_homotopy_equivalences(&cat, bound, cfg),
        tests: wtests,
        witnesses,
        obstruction: Some(graph_obstruction(&cat, cfg)),
        bound,
    };
    check_resolution(&candidate, cfg)
}

/// The unique box map `[1]^k → [1]^0`.
fn to_point(k: usize) -> BoxMorphism {
    crate::cube::all_morphisms(k, 0).remove(0)
}
