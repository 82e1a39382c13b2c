use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwalk_core::enumerate::enumerate_labeled_graphs;
use qwalk_core::graph::{cartesian_power, hypercube, path};
use qwalk_core::periodicity::WalkAnalysis;
use qwalk_core::spectral::{char_poly, decompose, walk_module_dimension};
use qwalk_core::{Graph, Hamiltonian, HamiltonianKind, Tolerances};

fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("p3^2", cartesian_power(&path(3).unwrap(), 2).unwrap()),
        ("p3^3", cartesian_power(&path(3).unwrap(), 3).unwrap()),
        ("q5", hypercube(5).unwrap()),
    ]
}

fn charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for (name, g) in fixtures() {
        let h = Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| {
            b.iter(|| char_poly(black_box(h.entries())))
        });
    }
    group.finish();
}

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for (name, g) in fixtures() {
        let h = Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| {
            b.iter(|| decompose(black_box(h), 1e-9).unwrap())
        });
    }
    group.finish();
}

fn periodicity(c: &mut Criterion) {
    let mut group = c.benchmark_group("periodicity_all_vertices");
    for (name, g) in fixtures() {
        let h = Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| {
            b.iter(|| {
                let w = WalkAnalysis::new(h, Tolerances::default()).unwrap();
                (0..h.dim())
                    .filter(|&a| w.periodicity(a).unwrap().certificate().is_some())
                    .count()
            })
        });
    }
    group.finish();
}

fn krylov(c: &mut Criterion) {
    let g = cartesian_power(&path(3).unwrap(), 3).unwrap();
    let h = Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap();
    c.bench_function("walk_module_dimension/p3^3", |b| {
        b.iter(|| walk_module_dimension(black_box(&h), 0))
    });
}

fn scan(c: &mut Criterion) {
    let graphs: Vec<Graph> = enumerate_labeled_graphs(5, true).unwrap().collect();
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("connected_n5_adjacency", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| {
                    let h = Hamiltonian::build(g, HamiltonianKind::Adjacency).unwrap();
                    let w = WalkAnalysis::new(&h, Tolerances::default()).unwrap();
                    (0..g.order())
                        .filter(|&a| w.periodicity(a).unwrap().certificate().is_some())
                        .count()
                })
                .sum::<usize>()
        })
    });
    group.finish();
}

criterion_group!(benches, charpoly, spectral, periodicity, krylov, scan);
criterion_main!(benches);
