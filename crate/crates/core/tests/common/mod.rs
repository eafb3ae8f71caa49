#![allow(dead_code)]

use qlan_core::{InterQlanGraph, Qlan, Vertex};
use rand::Rng;

/// Every client-only Inter-QLAN on `n1 + n2` clients, by edge bitmask.
pub fn all_bipartite(n1: usize, n2: usize) -> impl Iterator<Item = InterQlanGraph> {
    let pairs: Vec<(usize, usize)> = (1..=n1).flat_map(|i| (1..=n2).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let links: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        InterQlanGraph::from_inter_links(n1, n2, &links).unwrap()
    })
}

pub fn random_bipartite<R: Rng>(rng: &mut R, n1: usize, n2: usize) -> InterQlanGraph {
    let mut links = Vec::new();
    for i in 1..=n1 {
        for j in 1..=n2 {
            if rng.random_bool(0.5) {
                links.push((i, j));
            }
        }
    }
    InterQlanGraph::from_inter_links(n1, n2, &links).unwrap()
}

/// Arbitrary simple graph on `n` vertices split between the QLANs,
/// including intra-QLAN edges.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> InterQlanGraph {
    let n1 = rng.random_range(0..=n);
    let mut g = InterQlanGraph::with_clients(n1, n - n1);
    let vs: Vec<Vertex> = g.vertices().collect();
    for (k, &a) in vs.iter().enumerate() {
        for &b in &vs[k + 1..] {
            if rng.random_bool(0.5) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

pub fn clients(g: &InterQlanGraph, qlan: Qlan) -> Vec<Vertex> {
    g.clients(qlan).collect()
}
