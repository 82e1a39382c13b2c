#![allow(dead_code)]

use proptest::prelude::*;
use qwalk_core::graph::{cartesian_power, complete, cycle, hypercube, path, star};
use qwalk_core::Graph;
use rand::Rng;

/// Random connected graph: a random spanning tree (each vertex `i > 0`
/// attached to an earlier one) plus each remaining pair with probability
/// `density`.
pub fn random_connected(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Arbitrary simple graph on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(mask)
                .filter(|(_, keep)| *keep)
                .map(|(e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Connected graph on `2..=max_n` vertices, parent-attachment tree plus
/// extra edges.
pub fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        let pairs = n * (n - 1) / 2;
        (
            parents,
            proptest::collection::vec(proptest::bool::weighted(0.3), pairs),
        )
            .prop_map(move |(parents, mask)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| (p, i + 1))
                    .collect();
                let extra = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .zip(mask)
                    .filter(|(e, keep)| *keep && !edges.contains(e))
                    .map(|(e, _)| e)
                    .collect::<Vec<_>>();
                edges.extend(extra);
                Graph::new(n, edges).unwrap()
            })
    })
}

pub fn named_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("P1", path(1).unwrap()),
        ("P2", path(2).unwrap()),
        ("P3", path(3).unwrap()),
        ("P4", path(4).unwrap()),
        ("P5", path(5).unwrap()),
        ("C4", cycle(4).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("C6", cycle(6).unwrap()),
        ("K4", complete(4).unwrap()),
        ("K_{1,3}", star(3).unwrap()),
        ("K_{1,4}", star(4).unwrap()),
        ("Q3", hypercube(3).unwrap()),
        ("P3^2", cartesian_power(&path(3).unwrap(), 2).unwrap()),
    ]
}
