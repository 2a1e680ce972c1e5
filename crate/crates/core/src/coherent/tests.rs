use super::*;
use crate::cset::{find_isomorphism, standard_cell, CellKind};
use crate::cube::{all_morphisms, normal_form, Membership};
use crate::enriched::{mapping_space, sk0, suspension, verify_functor, CubicalFunctor, GraphCategory};
use crate::graphs::Graph;
use crate::report::overall;
use crate::simplicial::{boundary_delta, delta, spine};

#[test]
fn rigid_maps_are_box_maps() {
    for theta in [vec![0, 1, 1, 2], vec![0, 0, 1, 2], vec![0, 2, 3], vec![0, 1, 3, 4], vec![0, 1, 1, 1, 2]] {
        let n = theta.len() - 1;
        for a in 0..n {
            for b in a + 1..=n {
                let m = rigid_map(&theta, a, b);
                assert!(matches!(normal_form(m.src(), m.dst(), m.table()).unwrap(), Membership::InBox(..)));
            }
        }
    }
}

#[test]
fn rigid_simplex_axioms() {
    let cfg = Config::default();
    for n in 0..=4 {
        rigid_simplex(n, 2, &cfg).unwrap();
    }
    let c = RigidSimplex::new(3, 2);
    assert_eq!(c.cubes(0, 3, 0, &cfg).unwrap().len(), 4);
    let g = c.cubes(2, 3, 0, &cfg).unwrap().remove(0);
    let f = all_morphisms(0, 1).into_iter().next().unwrap();
    let h = c.compose(0, 2, 3, 0, &g, 0, &f);
    assert_eq!(h.constant_coord(1), Some(1));
}

#[test]
fn delta_rigidifies_to_cubes() {
    let cfg = Config::default();
    for n in 1..=3 {
        let r = rigidification(&delta(n, 4, &cfg).unwrap(), 3, &cfg).unwrap();
        let hom = mapping_space(&r, 0, n, 3, &cfg).unwrap();
        let cell = standard_cell(CellKind::Cube, n - 1, 3, &cfg).unwrap();
        assert_eq!(hom.set.counts(), cell.set.counts(), "n = {n}");
        assert!(find_isomorphism(&hom.set, &cell.set, &cfg).unwrap().is_some());
    }
}

#[test]
fn rigid_simplex_matches_rigidification() {
    let cfg = Config::default();
    let n = 3;
    let x = delta(n, 3, &cfg).unwrap();
    let r = rigidification(&x, 2, &cfg).unwrap();
    let c = RigidSimplex::new(n, 2);
    let ops = r.ops();
    let simplex = |a: usize, b: usize| {
        let verts: Vec<usize> = (a..=b).collect();
        (0..x.count(b - a) as u32).find(|&s| x.vertices(b - a, s) == verts.iter().map(|&v| v as u32).collect::<Vec<_>>()).unwrap()
    };
    let vertex = |a: usize| simplex(a, a) as usize;
    let objects = (0..=n).map(vertex).collect();
    let f = CubicalFunctor::new(objects, |a, b, k, m: &crate::cube::BoxMorphism| {
        if a == b {
            return RigidTuple::empty(k);
        }
        ops.reduce(RigidTuple {
            k: k as u8,
            pairs: vec![RigidPair { m: (b - a) as u8, s: simplex(a, b), f: m.clone() }],
        })
    });
    let rep = verify_functor(&c, &r, &f, &cfg).unwrap();
    assert!(rep.failures.is_empty(), "{:?}", rep.failures);
    for a in 0..=n {
        for b in a..=n {
            for k in 0..=2 {
                let mut imgs: Vec<RigidTuple> =
                    c.cubes(a, b, k, &cfg).unwrap().iter().map(|m| f.apply(a, b, k, m)).collect();
                imgs.sort();
                imgs.dedup();
                assert_eq!(imgs.len(), r.cubes(vertex(a), vertex(b), k, &cfg).unwrap().len());
            }
        }
    }
}

#[test]
fn rigidification_axioms_on_delta3() {
    let cfg = Config::default();
    let r = rigidification(&delta(3, 3, &cfg).unwrap(), 2, &cfg).unwrap();
    let rep = crate::enriched::check_axioms(&r, &cfg).unwrap();
    assert!(rep.failures.is_empty(), "{:?}", rep.failures);
}

#[test]
fn spine_and_boundary() {
    let cfg = Config::default();
    let sp = rigidification(&spine(2, 3, &cfg).unwrap(), 2, &cfg).unwrap();
    let h = mapping_space(&sp, 0, 2, 2, &cfg).unwrap();
    assert_eq!(h.set.count(0), 1);
    assert!(h.set.nondegenerate(1).is_empty());
    let bd = rigidification(&boundary_delta(2, 3, &cfg).unwrap(), 2, &cfg).unwrap();
    let h = mapping_space(&bd, 0, 2, 2, &cfg).unwrap();
    let nondeg: usize = (0..=2).map(|k| h.set.nondegenerate(k).len()).sum();
    assert_eq!(nondeg, 2);
    assert_eq!(h.set.count(0), 2);
}

#[test]
fn cycles_are_rejected() {
    let cfg = Config::default();
    let nerve = crate::enriched::FiniteCategory::cyclic_group(2).nerve(3, &cfg).unwrap();
    assert!(rigidification(&nerve, 2, &cfg).is_err());
}

#[test]
fn reduction_is_confluent() {
    let cfg = Config::default();
    for x in [delta(2, 3, &cfg).unwrap(), delta(3, 3, &cfg).unwrap(), boundary_delta(3, 3, &cfg).unwrap()] {
        let ops = TupleOps::new(&x);
        let mut tested = 0;
        for m in 1..=3 {
            for s in 0..x.count(m) as u32 {
                for k in 0..=2 {
                    for f in all_morphisms(k, m - 1) {
                        let t = RigidTuple { k: k as u8, pairs: vec![RigidPair { m: m as u8, s, f }] };
                        let l = ops.reduce_with(t.clone(), ReductionOrder::LeftFirst);
                        let r = ops.reduce_with(t, ReductionOrder::RightFirst);
                        assert_eq!(l, r);
                        tested += 1;
                    }
                }
            }
        }
        assert!(tested > 50);
    }
}

#[test]
fn reduction_of_two_pair_tuples_is_confluent() {
    let cfg = Config::default();
    let x = delta(3, 3, &cfg).unwrap();
    let ops = TupleOps::new(&x);
    let mut tested = 0;
    for m1 in 1..=3 {
        for s1 in 0..x.count(m1) as u32 {
            for m2 in 1..=3 {
                for s2 in 0..x.count(m2) as u32 {
                    if x.restrict(m1, s1, &[m1]) != x.restrict(m2, s2, &[0]) {
                        continue;
                    }
                    for k1 in 0..=2 {
                        for k2 in 0..=2 - k1 {
                            for f1 in all_morphisms(k1, m1 - 1) {
                                for f2 in all_morphisms(k2, m2 - 1) {
                                    let t = RigidTuple {
                                        k: (k1 + k2) as u8,
                                        pairs: vec![
                                            RigidPair { m: m2 as u8, s: s2, f: f2.clone() },
                                            RigidPair { m: m1 as u8, s: s1, f: f1.clone() },
                                        ],
                                    };
                                    let l = ops.reduce_with(t.clone(), ReductionOrder::LeftFirst);
                                    assert_eq!(l, ops.reduce_with(t, ReductionOrder::RightFirst));
                                    assert_eq!(ops.reduce(l.clone()), l);
                                    tested += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(tested > 1000, "{tested}");
}

#[test]
fn sk0_nerve_is_the_nerve() {
    let cfg = Config::default();
    for c in [
        crate::enriched::FiniteCategory::chain(2),
        crate::enriched::FiniteCategory::parallel_pair(),
        crate::enriched::FiniteCategory::cyclic_group(3),
    ] {
        let s = sk0(&c, 2, &cfg).unwrap();
        let n = coherent_nerve(&s, 3, &cfg).unwrap();
        assert_eq!(n.set.counts(), c.nerve(3, &cfg).unwrap().counts());
    }
}

#[test]
fn suspension_two_simplices_are_one_cubes() {
    let cfg = Config::default();
    let x = standard_cell(CellKind::Cube, 1, 1, &cfg).unwrap();
    let s = suspension(&x.set, &cfg).unwrap();
    let n = coherent_nerve(&s, 2, &cfg).unwrap();
    let over = n.simplices[2].iter().filter(|t| t.objects == [0, 0, 1]).count();
    assert_eq!(over, x.set.count(1));
}

#[test]
fn ho_iso_on_corpus() {
    let cfg = Config::default();
    let x = standard_cell(CellKind::Cube, 1, 1, &cfg).unwrap();
    let s = suspension(&x.set, &cfg).unwrap();
    assert!(overall(&ho_nerve_iso_check(&s, &cfg).unwrap()).is_pass());
    for c in [
        crate::enriched::FiniteCategory::chain(2),
        crate::enriched::FiniteCategory::parallel_pair(),
        crate::enriched::FiniteCategory::cyclic_group(3),
    ] {
        let s = sk0(&c, 1, &cfg).unwrap();
        let checks = ho_nerve_iso_check(&s, &cfg).unwrap();
        assert!(overall(&checks).is_pass(), "{checks:?}");
    }
}

#[test]
fn ho_iso_on_graphs() {
    let cfg = Config::default();
    let g = GraphCategory::new(
        vec![("C4".into(), Graph::builtin("C4").unwrap()), ("I0".into(), Graph::builtin("I0").unwrap())],
        1,
        1,
    )
    .unwrap();
    let checks = ho_nerve_iso_check(&g, &cfg).unwrap();
    assert!(overall(&checks).is_pass(), "{checks:?}");
}

#[test]
fn counit_is_a_functor() {
    let cfg = Config::default();
    let x = standard_cell(CellKind::Cube, 1, 1, &cfg).unwrap();
    let s = suspension(&x.set, &cfg).unwrap();
    let chain = sk0(&crate::enriched::FiniteCategory::chain(2), 2, &cfg).unwrap();
    for (cat, d) in [(&s, 1), (&chain, 2)] {
        let n = coherent_nerve(cat, d + 1, &cfg).unwrap();
        let r = Rigidification::new(n.set.clone(), d, &cfg).unwrap();
        let eps = counit_functor(&n);
        let rep = verify_functor(&r, &n.category, &eps, &cfg).unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(rep.checked > 0);
    }
}

#[test]
fn counit_on_edges_composes() {
    let cfg = Config::default();
    let chain = sk0(&crate::enriched::FiniteCategory::chain(2), 1, &cfg).unwrap();
    let n = coherent_nerve(&chain, 2, &cfg).unwrap();
    let edge = |a: u16, b: u16| n.simplices[1].iter().position(|s| s.objects == [a, b]).unwrap() as u32;
    let pair = |s: u32| RigidPair { m: 1, s, f: crate::cube::BoxMorphism::identity(0) };
    let vert = |a: u16| n.simplices[0].iter().position(|s| s.objects[0] == a).unwrap();
    let t = RigidTuple { k: 0, pairs: vec![pair(edge(1, 2)), pair(edge(0, 1))] };
    let direct = n.simplices[1][edge(0, 2) as usize].top(0, 1);
    assert_eq!(counit_eval(&n, vert(0), &t), direct);
    assert_eq!(counit_eval(&n, vert(1), &RigidTuple::empty(0)), n.category.identity(1));
}

