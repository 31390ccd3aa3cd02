//! Greedy multiplicative spanners.
//!
//! Edges are scanned in lexicographic order and kept only when the spanner
//! built so far has no path of at most `2k-1` hops between their endpoints.
//! Every edge of G is then stretched by at most `2k-1`, and the result has
//! girth above `2k`, which caps its size at `O(n^{1+1/k})`.

use std::collections::VecDeque;

use crate::error::{parameter, Result};
use crate::graph::{EdgeSet, Graph, Node};

/// Greedy `(2k-1)`-spanner of `g`.
pub fn greedy_mult_spanner(g: &Graph, k: usize) -> Result<EdgeSet> {
    if k < 1 {
        return parameter("multiplicative spanner needs k >= 1");
    }
    let limit = 2 * k as u32 - 1;
    let n = g.n();
    let mut h = EdgeSet::empty(g);
    let mut adj: Vec<Vec<Node>> = vec![Vec::new(); n];
    let mut stamp = vec![0u32; n];
    let mut depth = vec![0u32; n];
    let mut epoch = 0u32;
    let mut queue = VecDeque::new();

    for (id, &(u, v)) in g.edges().iter().enumerate() {
        epoch += 1;
        queue.clear();
        stamp[u] = epoch;
        depth[u] = 0;
        queue.push_back(u);
        let mut close = false;
        'bfs: while let Some(x) = queue.pop_front() {
            if depth[x] == limit {
                continue;
            }
            for &y in &adj[x] {
                if stamp[y] != epoch {
                    if y == v {
                        close = true;
                        break 'bfs;
                    }
                    stamp[y] = epoch;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if !close {
            h.insert_id(id);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Ok(h)
}

/// `⌈log₂ n⌉` for `n ≥ 2`, else 1.
pub fn log_stretch_k(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Greedy spanner with `k = ⌈log₂ n⌉`: stretch `2⌈log₂ n⌉-1` and `O(n)` edges.
pub fn log_stretch_spanner(g: &Graph) -> EdgeSet {
    greedy_mult_spanner(g, log_stretch_k(g.n())).expect("k >= 1")
}
