use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubix::cset::{enumerate_maps, standard_cell, CellKind};
use cubix::dmsl::graph_localization_shadow;
use cubix::graphs::{graph_maps, graph_nerve, grid, hom_graph, Graph};
use cubix::homology::cubical_homology_direct;
use cubix::{Config, Exec};

fn modes() -> [(&'static str, Config); 2] {
    [
        ("sequential", Config::sequential()),
        ("parallel", Config::default().with_exec(Exec::Parallel)),
    ]
}

fn bench(c: &mut Criterion) {
    let c5 = Graph::builtin("C5").unwrap();
    let c4 = Graph::builtin("C4").unwrap();
    let grid = grid(2, 2);
    let hom = hom_graph(&c4, &c5, &Config::default()).unwrap().graph;
    let nerve = graph_nerve(&c5, 1, 3, &Config::default()).unwrap().set;
    let boundary = standard_cell(CellKind::Boundary, 3, 2, &Config::default()).unwrap().set;
    let square = standard_cell(CellKind::Cube, 2, 2, &Config::default()).unwrap().set;

    let mut group = c.benchmark_group("exec");
    group.sample_size(10);
    for (name, cfg) in modes() {
        group.bench_with_input(BenchmarkId::new("graph_maps", name), &cfg, |b, cfg| {
            b.iter(|| graph_maps(&grid, &c5, cfg).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("graph_nerve", name), &cfg, |b, cfg| {
            b.iter(|| graph_nerve(&hom, 1, 1, cfg).unwrap().set.count(1))
        });
        group.bench_with_input(BenchmarkId::new("cubical_homology", name), &cfg, |b, cfg| {
            b.iter(|| cubical_homology_direct(&nerve, 2, cfg).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("enumerate_maps", name), &cfg, |b, cfg| {
            b.iter(|| enumerate_maps(&boundary, &square, cfg).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("localization_shadow", name), &cfg, |b, cfg| {
            b.iter(|| graph_localization_shadow(&c4, &c5, 1, cfg).unwrap().components)
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
