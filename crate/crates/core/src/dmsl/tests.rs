use super::*;
use crate::cset::{standard_cell, CellKind};
use crate::enriched::FiniteCategory;
use crate::exec::Config;
use crate::graphs::{graph_nerve, Graph};
use crate::report::{overall, Verdict};

fn named(s: &str) -> (String, Graph) {
    (s.to_string(), Graph::builtin(s).unwrap())
}

fn verdicts(r: &ResolutionReport) -> [bool; 3] {
    ["R1", "R2", "R3"].map(|c| r.verdict(c).unwrap().is_pass())
}

#[test]
fn diagonal_identity_on_corpus() {
    let cfg = Config::default();
    let cells = [
        standard_cell(CellKind::Cube, 1, 2, &cfg).unwrap().set,
        standard_cell(CellKind::Boundary, 2, 2, &cfg).unwrap().set,
        standard_cell(CellKind::OpenBox { i: 1, eps: 0 }, 2, 2, &cfg).unwrap().set,
        graph_nerve(&Graph::builtin("C4").unwrap(), 1, 2, &cfg).unwrap().set,
    ];
    for x in &cells {
        let checks = diagonal_identity_check(x, &cfg).unwrap();
        assert!(overall(&checks).is_pass(), "{checks:?}");
    }
}

#[test]
fn shadow_examples() {
    let cfg = Config::default();
    let g = |s: &str| Graph::builtin(s).unwrap();
    let r = graph_localization_shadow(&g("C4"), &g("I0"), 1, &cfg).unwrap();
    assert_eq!((r.components, r.classes), (1, 1));
    let r = graph_localization_shadow(&g("I0"), &g("C5"), 1, &cfg).unwrap();
    assert_eq!((r.components, r.classes), (1, 1));
    let r = graph_localization_shadow(&g("C5"), &g("C5"), 1, &cfg).unwrap();
    assert!(r.verdict().is_pass());
    assert!(r.components >= 2 && r.components == r.classes);
}

#[test]
fn tower_of_a_point_and_an_edge() {
    let cfg = Config::default();
    let tests = [GraphTest::collapse("C4").unwrap()];
    for y in ["I0", "I1"] {
        let r = graph_resolution(&named(y), &GraphDiagram::Tower { n: 2 }, &tests, 4, &cfg).unwrap();
        assert!(r.is_well_formed(), "{:?}", r.diagram);
        assert_eq!(verdicts(&r), [true; 3], "{r:#?}");
    }
}

#[test]
fn tower_cone_is_the_constant_map() {
    let cfg = Config::default();
    let y = Graph::builtin("C5").unwrap();
    let t = crate::enriched::CotensorTower::new(&y, 2, &cfg).unwrap();
    for k in 0..=2 {
        let mu = crate::cube::all_morphisms(k, 0).remove(0);
        assert_eq!(t.structure(&mu), t.cone(k));
    }
}

#[test]
fn discrete_index_fails_only_r1() {
    let cfg = Config::default();
    let tests = [GraphTest::collapse("C4").unwrap()];
    let r = graph_resolution(&named("I0"), &GraphDiagram::Finite(FiniteCategory::discrete(2)), &tests, 4, &cfg).unwrap();
    assert!(r.verdict("R1").unwrap().is_fail());
    assert_eq!(verdicts(&r), [false, true, true], "{r:#?}");
}

#[test]
fn parallel_pair_index_certifies_h1() {
    let cfg = Config::default();
    let r = graph_resolution(&named("I0"), &GraphDiagram::Finite(FiniteCategory::parallel_pair()), &[], 4, &cfg).unwrap();
    match r.verdict("R1").unwrap() {
        Verdict::Fail(c) => assert!(c.contains("H_1"), "{c}"),
        v => panic!("{v:?}"),
    }
}

#[test]
fn chain_index_has_a_contractible_colimit() {
    let cfg = Config::default();
    let tests = [GraphTest::collapse("I2").unwrap()];
    let r = graph_resolution(&named("I1"), &GraphDiagram::Finite(FiniteCategory::chain(2)), &tests, 4, &cfg).unwrap();
    assert!(r.verdict("R1").unwrap().is_pass());
    // the colimit of a constant diagram over a contractible index is C_0(X, Y)
    assert!(r.verdict("R3").unwrap().is_fail(), "{r:#?}");
}

#[test]
fn constant_diagram_fails_only_r3() {
    let cfg = Config::default();
    let tests = [GraphTest::collapse("C4").unwrap()];
    let r = graph_resolution(&named("C4"), &GraphDiagram::Constant { n: 2 }, &tests, 4, &cfg).unwrap();
    assert!(r.is_well_formed());
    assert_eq!(verdicts(&r), [true, true, false], "{r:#?}");
    let r = graph_resolution(&named("I0"), &GraphDiagram::Constant { n: 2 }, &tests, 4, &cfg).unwrap();
    assert_eq!(verdicts(&r), [true; 3]);
}

#[test]
fn tower_under_a_point_fails_only_r2() {
    let cfg = Config::default();
    let tests = [GraphTest::collapse("C4").unwrap()];
    let d = GraphDiagram::TowerUnder { n: 2, z: named("I0"), map: vec![0] };
    let r = graph_resolution(&named("C5"), &d, &tests, 4, &cfg).unwrap();
    assert!(r.is_well_formed());
    assert_eq!(verdicts(&r), [true, false, true], "{r:#?}");
    match r.verdict("R2").unwrap() {
        Verdict::Fail(c) => assert!(c.starts_with("H1"), "{c}"),
        v => panic!("{v:?}"),
    }
}

#[test]
fn non_equivalences_are_not_tested() {
    let cfg = Config::default();
    let tests = [GraphTest::point("C5", 0).unwrap()];
    let r = graph_resolution(&named("I0"), &GraphDiagram::Tower { n: 2 }, &tests, 4, &cfg).unwrap();
    assert!(matches!(r.verdict("R3").unwrap(), Verdict::Inconclusive(_)));
}

#[test]
fn short_index_is_a_truncation_error() {
    let cfg = Config::default();
    let tests = [GraphTest::collapse("C4").unwrap()];
    let r = graph_resolution(&named("I0"), &GraphDiagram::Tower { n: 1 }, &tests, 4, &cfg).unwrap();
    let c = r.conditions.iter().find(|c| c.condition == "R3").unwrap();
    assert!(c.error.as_deref().unwrap().contains("truncation"));
    assert!(r.verdict("R1").unwrap().is_pass());
}
