use cubix::cset::{enumerate_maps, standard_cell, CellKind};
use cubix::cube::{self, normal_form, BoxMorphism, Generator, Membership};
use cubix::graphs::{
    box_product, find_graph_isomorphism, graph_maps, graph_nerve, hom_graph, homotopy_classes, nerve_homology, Graph,
};
use cubix::homology::{cubical_homology_direct, minor_gcd, smith_normal_form, IntegerMatrix};
use cubix::{Config, Exec};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

const MAX_DIM: usize = 4;

/// Generators applicable to `[1]^dim` without leaving dimensions `≤ MAX_DIM`.
fn applicable(dim: usize) -> Vec<Generator> {
    let mut gens = Vec::new();
    if dim < MAX_DIM {
        for i in 1..=dim + 1 {
            gens.extend([cube::face(i, 0), cube::face(i, 1)]);
        }
    }
    gens.extend((1..=dim).map(cube::degen));
    for i in 1..dim {
        gens.extend([cube::conn(i, 0), cube::conn(i, 1)]);
    }
    gens
}

/// A source dimension and generators in the order they are applied.
fn applied_word() -> impl Strategy<Value = (usize, Vec<Generator>)> {
    (0..=MAX_DIM, proptest::collection::vec(any::<prop::sample::Index>(), 0..=4)).prop_map(|(src, picks)| {
        let mut dim = src;
        let mut word = Vec::new();
        for p in picks {
            let gens = applicable(dim);
            let g = gens[p.index(gens.len())];
            dim = g.target_dim(dim).unwrap();
            word.push(g);
        }
        (src, word)
    })
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=4, any::<u8>()).prop_map(|(n, mask)| {
        let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
        let edges: Vec<(u32, u32)> = pairs.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
        Graph::new((0..n).map(|v| format!("v{v}")).collect(), &edges).unwrap()
    })
}

fn small_graph() -> impl Strategy<Value = Graph> {
    graph().prop_filter("at most 3 vertices", |g| g.order() <= 3)
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn words_compose_as_vertex_functions((src, applied) in applied_word(), cut in any::<prop::sample::Index>()) {
        let word: Vec<Generator> = applied.iter().rev().copied().collect();
        let whole = BoxMorphism::from_word(src, &word).unwrap();
        let k = cut.index(applied.len() + 1);
        let first: Vec<Generator> = applied[..k].iter().rev().copied().collect();
        let then: Vec<Generator> = applied[k..].iter().rev().copied().collect();
        let f = BoxMorphism::from_word(src, &first).unwrap();
        let g = BoxMorphism::from_word(f.dst(), &then).unwrap();
        prop_assert_eq!(g.compose(&f).unwrap(), whole);
    }

    #[test]
    fn normal_form_round_trips((src, applied) in applied_word()) {
        let word: Vec<Generator> = applied.iter().rev().copied().collect();
        let m = BoxMorphism::from_word(src, &word).unwrap();
        match normal_form(m.src(), m.dst(), m.table()).unwrap() {
            Membership::InBox(n, canonical) => {
                prop_assert_eq!(&n, &m);
                prop_assert_eq!(BoxMorphism::from_word(src, &canonical).unwrap(), m);
            }
            Membership::NotInBox => prop_assert!(false, "a composite of generators is not in the box category"),
        }
    }

    #[test]
    fn smith_form_invariants(rows in matrix()) {
        let m = IntegerMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert!(snf.diagonal.is_diagonal());
        prop_assert_eq!(snf.rank, snf.invariant_factors.len());
        let mut product = BigInt::one();
        for (k, d) in snf.invariant_factors.iter().enumerate() {
            prop_assert!(*d > BigInt::zero());
            if k > 0 {
                prop_assert!((d % &snf.invariant_factors[k - 1]).is_zero());
            }
            product *= d;
            prop_assert_eq!(minor_gcd(&m, k + 1), product.clone());
        }
        prop_assert!(minor_gcd(&m, snf.rank + 1).is_zero());
    }

    #[test]
    fn box_product_is_symmetric(x in graph(), y in graph()) {
        let cfg = Config::default();
        prop_assert!(find_graph_isomorphism(&box_product(&x, &y), &box_product(&y, &x), &cfg).unwrap().is_some());
    }

    #[test]
    fn box_hom_adjunction(x in small_graph(), y in small_graph(), z in small_graph()) {
        let cfg = Config::default();
        let left = graph_maps(&box_product(&x, &y), &z, &cfg).unwrap().len();
        let right = graph_maps(&x, &hom_graph(&y, &z, &cfg).unwrap().graph, &cfg).unwrap().len();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn nerve_components_are_homotopy_classes(x in small_graph(), y in graph()) {
        let cfg = Config::default();
        let hom = hom_graph(&x, &y, &cfg).unwrap();
        let nerve = graph_nerve(&hom.graph, 1, 1, &cfg).unwrap();
        prop_assert_eq!(nerve.set.pi0_count(), homotopy_classes(&x, &y, &cfg).unwrap().count());
    }

    #[test]
    fn h0_counts_components(x in graph()) {
        let h = nerve_homology(&x, 0, &Config::default()).unwrap();
        prop_assert_eq!(h[0].betti, x.component_count());
        prop_assert!(h[0].torsion.is_empty());
    }

    #[test]
    fn low_invariants_ignore_higher_cubes(x in graph()) {
        let cfg = Config::default();
        let (n2, n3) = (graph_nerve(&x, 1, 2, &cfg).unwrap(), graph_nerve(&x, 1, 3, &cfg).unwrap());
        prop_assert_eq!(n2.set.pi0_count(), graph_nerve(&x, 1, 1, &cfg).unwrap().set.pi0_count());
        prop_assert_eq!(n2.set.pi0_count(), n3.set.pi0_count());
        prop_assert_eq!(cubical_homology_direct(&n2.set, 1, &cfg).unwrap(), cubical_homology_direct(&n3.set, 1, &cfg).unwrap());
    }

    #[test]
    fn sequential_matches_parallel(x in graph(), y in graph()) {
        let (seq, par) = (Config::sequential(), Config::default().with_exec(Exec::Parallel));
        prop_assert_eq!(graph_maps(&x, &y, &seq).unwrap(), graph_maps(&x, &y, &par).unwrap());
        let (nx, ny) = (graph_nerve(&x, 1, 1, &seq).unwrap(), graph_nerve(&y, 1, 1, &seq).unwrap());
        prop_assert_eq!(enumerate_maps(&nx.set, &ny.set, &seq).unwrap(), enumerate_maps(&nx.set, &ny.set, &par).unwrap());
    }

    #[test]
    fn maps_from_cubes_are_cubes(n in 0usize..=2, x in graph()) {
        let cfg = Config::default();
        let nerve = graph_nerve(&x, 1, 2, &cfg).unwrap();
        let cell = standard_cell(CellKind::Cube, n, 2, &cfg).unwrap();
        prop_assert_eq!(enumerate_maps(&cell.set, &nerve.set, &cfg).unwrap().len(), nerve.set.count(n));
    }
}
