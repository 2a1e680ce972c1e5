use super::*;
use crate::cset::{standard_cell, CellKind};
use crate::graphs::Graph;
use crate::report::overall;

fn named(s: &str) -> (String, Graph) {
    (s.to_string(), Graph::builtin(s).unwrap())
}

#[test]
fn sk0_of_a_chain_satisfies_the_axioms() {
    let cfg = Config::default();
    let c = sk0(&FiniteCategory::chain(2), 2, &cfg).unwrap();
    let r = check_axioms(&c, &cfg).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert_eq!(c.hom(0, 2).count(2), 1);
    assert_eq!(c.hom(2, 0).count(0), 0);
}

#[test]
fn suspension_of_a_square_satisfies_the_axioms() {
    let cfg = Config::default();
    let x = standard_cell(CellKind::Cube, 2, 2, &cfg).unwrap();
    let s = suspension(&x.set, &cfg).unwrap();
    let r = check_axioms(&s, &cfg).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    let h = ho(&s, &cfg).unwrap();
    assert_eq!(h.category.hom(0, 1).len(), 1);
    assert!(h.category.hom(1, 0).is_empty());
}

#[test]
fn materialized_agrees_with_its_source() {
    let cfg = Config::default();
    let c = GraphCategory::new(vec![named("I1"), named("I0")], 1, 1).unwrap();
    let m = Materialized::new(&c, 1, &cfg).unwrap();
    let r = check_axioms(&m, &cfg).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    for a in 0..2 {
        for b in 0..2 {
            for k in 0..=1 {
                assert_eq!(m.cubes(a, b, k, &cfg).unwrap().len(), c.cubes(a, b, k, &cfg).unwrap().len());
            }
        }
    }
}

#[test]
fn identity_transformation_is_natural() {
    let cfg = Config::default();
    let c = GraphCategory::new(vec![named("I0"), named("I1")], 1, 1).unwrap();
    let id = CubicalFunctor::identity(2);
    let alpha = NaturalTransformation {
        components: vec![c.identity(0), c.identity(1)],
    };
    let checks = verify_natural_transformation(&c, &c, &id, &id, &alpha, &cfg).unwrap();
    assert!(overall(&checks).is_pass(), "{checks:?}");
}

#[test]
fn corrupted_component_is_rejected() {
    let cfg = Config::default();
    let c = GraphCategory::new(vec![named("I0"), named("I1")], 1, 1).unwrap();
    let id = CubicalFunctor::identity(2);
    let alpha = NaturalTransformation {
        components: vec![c.identity(0), vec![0, 0]],
    };
    let checks = verify_natural_transformation(&c, &c, &id, &id, &alpha, &cfg).unwrap();
    assert!(!overall(&checks).is_pass());
}

#[test]
fn whiskering_a_path_gives_homotopies() {
    let cfg = Config::default();
    let c = GraphCategory::new(vec![named("I1"), named("I0")], 1, 1).unwrap();
    let h = vec![0, 1];
    assert!(c.contains(1, 0, 1, &h));
    let post = postcomposition_homotopy(&c, 0, 1, 0, &h, &cfg).unwrap();
    assert!(overall(&post).is_pass(), "{post:?}");
    let pre = precomposition_homotopy(&c, 0, 1, 0, &h, &cfg).unwrap();
    assert!(overall(&pre).is_pass(), "{pre:?}");
}

#[test]
fn tower_level_is_a_cotensor() {
    let cfg = Config::default();
    let tower = CotensorTower::new(&Graph::builtin("C4").unwrap(), 1, &cfg).unwrap();
    let cat = tower.category(&[named("I0"), named("I1")], 2).unwrap();
    let w = GraphCotensor::tower_witness(&cat, &tower, 0, 1, 1, &[2, 3], &cfg).unwrap();
    let checks = verify_cotensor(&cat, &w, &cfg).unwrap();
    assert!(overall(&checks).is_pass(), "{checks:?}");
}

#[test]
fn the_base_is_not_a_cotensor_by_an_interval() {
    let cfg = Config::default();
    let tower = CotensorTower::new(&Graph::builtin("C5").unwrap(), 1, &cfg).unwrap();
    let cat = tower.category(&[named("I0")], 1).unwrap();
    let w = GraphCotensor::bare(&cat, 0, 0, 1, &[2], &cfg).unwrap();
    let checks = verify_cotensor(&cat, &w, &cfg).unwrap();
    assert!(checks.iter().any(|c| matches!(c.verdict, Verdict::Fail(_))));
}
