//! Brute-force oracles and instance fuzzing shared by the integration tests.
#![allow(dead_code)]

use pairspan::graph::{EdgeSet, Graph};
use pairspan::harness::generate::{generate_graph, GenSpec, Model};
use pairspan::harness::rng::SplitMix;

pub const INF: u32 = u32::MAX;

/// All-pairs hop distances over the edges of `h` by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph, h: &EdgeSet) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in h.edges(g) {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Single-source hop distances by repeated relaxation over an explicit edge
/// list (Bellman–Ford style; no queue, no adjacency arrays).
pub fn relax_distances(n: usize, edges: &[(usize, usize)], source: usize) -> Vec<u32> {
    let mut d = vec![INF; n];
    d[source] = 0;
    loop {
        let mut changed = false;
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if d[a] != INF && d[a] + 1 < d[b] {
                    d[b] = d[a] + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

/// True iff `h` contains no cycle of length ≤ `len`: every kept edge's
/// endpoints are more than `len - 1` apart once the edge itself is removed.
pub fn no_short_cycle(g: &Graph, h: &EdgeSet, len: usize) -> bool {
    let kept: Vec<(usize, usize)> = h.edges(g).collect();
    (0..kept.len()).all(|i| {
        let (u, v) = kept[i];
        let rest: Vec<_> = kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        let d = relax_distances(g.n(), &rest, u)[v];
        d == INF || d as usize + 1 > len
    })
}

/// A random graph from a random model, sized `1..=max_n`.
pub fn fuzz_graph(rng: &mut SplitMix, max_n: usize) -> Graph {
    let seed = rng.next_u64();
    let model = match rng.below(6) {
        0 => Model::Grid { rows: 1 + rng.below(12), cols: 1 + rng.below(max_n / 12 + 1) },
        1 => Model::Tree { n: 1 + rng.below(max_n) },
        2 => Model::Cycle { n: 3 + rng.below(max_n.saturating_sub(2).max(1)) },
        _ => Model::Gnp { n: 1 + rng.below(max_n), p: [0.02, 0.05, 0.1, 0.2, 0.5][rng.below(5)] },
    };
    generate_graph(&GenSpec { model, seed }).unwrap()
}

/// A random subset of the edges, each kept with probability `keep`.
pub fn random_subset(g: &Graph, keep: f64, rng: &mut SplitMix) -> EdgeSet {
    let mut h = EdgeSet::empty(g);
    for id in 0..g.m() {
        if rng.unit() < keep {
            h.insert_id(id);
        }
    }
    h
}
