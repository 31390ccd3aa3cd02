//! `(1,2)` spanners for all pairs inside a node set S.
//!
//! After clustering, the shortest path of every pair of S is examined once,
//! in lexicographic pair order. A path is bought when the number of edges it
//! would add is at most twice its value: the count of (endpoint, cluster)
//! pairs whose current distance the path strictly improves.

use crate::buying::{
    clamp_unit, normalize_nodes, resolve_beta, BuyLedger, Contribution, ConstructionKind, Current,
    PathRecord, Spanner,
};
use crate::clustering::{build_clustering, Clustering};
use crate::error::{input, Result};
use crate::graph::{bfs_distances, path_cost, DistanceRow, EdgeSet, Graph, Node, Path};

#[derive(Clone, Debug)]
pub struct SubsetwiseParams {
    pub sources: Vec<Node>,
    /// `None` picks `n^β = √|S|`.
    pub beta: Option<f64>,
}

impl SubsetwiseParams {
    pub fn new(sources: Vec<Node>) -> Self {
        SubsetwiseParams { sources, beta: None }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }
}

/// β with `n^β = √|S|`, clamped to `[0,1]`.
pub fn default_beta(n: usize, s: usize) -> f64 {
    if n <= 1 || s == 0 {
        return 1.0;
    }
    clamp_unit(0.5 * (s as f64).ln() / (n as f64).ln())
}

/// Value contributions of `p` (oriented from `endpoints.0`), given distance
/// rows over the current spanner from both endpoints.
fn contributions(
    p: &Path,
    cl: &Clustering,
    from_u: &DistanceRow,
    from_v: &DistanceRow,
) -> Vec<Contribution> {
    let (u, v) = (p.first(), p.last());
    let len = p.len();
    let mut out = Vec::new();
    for c in cl.touching(p) {
        let on: Vec<usize> = p
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(_, &x)| cl.cluster_of(x) == Some(c))
            .map(|(i, _)| i)
            .collect();
        let members = &cl.cluster(c).members;
        let along_u = on[0] as u32;
        let along_v = (len - on[on.len() - 1]) as u32;
        if from_u.min_over(members).is_none_or(|d| d > along_u) {
            out.push(Contribution::Endpoint { node: u, cluster: c });
        }
        if from_v.min_over(members).is_none_or(|d| d > along_v) {
            out.push(Contribution::Endpoint { node: v, cluster: c });
        }
    }
    out
}

/// Number of (endpoint, cluster) pairs `(x, C)` with C touching `p` and
/// `δ_current(x, C) > δ_p(x, C)`.
pub fn value_subsetwise(
    g: &Graph,
    p: &Path,
    endpoints: (Node, Node),
    cl: &Clustering,
    current: &EdgeSet,
) -> Result<usize> {
    let p = if p.first() == endpoints.0 && p.last() == endpoints.1 {
        p.clone()
    } else if p.first() == endpoints.1 && p.last() == endpoints.0 {
        p.reversed()
    } else {
        return input("path does not join the given endpoints");
    };
    let from_u = bfs_distances(g, current, endpoints.0)?;
    let from_v = bfs_distances(g, current, endpoints.1)?;
    Ok(contributions(&p, cl, &from_u, &from_v).len())
}

pub fn build_subsetwise(g: &Graph, params: &SubsetwiseParams) -> Result<(Spanner, BuyLedger)> {
    let sources = normalize_nodes(g, &params.sources)?;
    let beta = resolve_beta(params.beta, || default_beta(g.n(), sources.len()))?;
    let (cl, cg) = build_clustering(g, beta)?;
    let mut ledger = BuyLedger::new(
        ConstructionKind::Subsetwise,
        g.n(),
        beta,
        cl.len(),
        cl.size_threshold(),
        cg.edges.len(),
    );
    let full = EdgeSet::full(g);
    let mut current = Current::new(cg.edges.clone());

    for (i, &u) in sources.iter().enumerate() {
        let in_g = bfs_distances(g, &full, u)?;
        for &v in &sources[i + 1..] {
            let pair_index = ledger.pair_count;
            ledger.pair_count += 1;
            let Some(p) = in_g.path_to(g, &full, v) else {
                ledger.unreachable_pairs += 1;
                continue;
            };
            let cost = path_cost(g, &p, &current.edges);
            let contrib = if cost == 0 {
                Vec::new()
            } else {
                let from_u = current.row(g, u)?.clone();
                let from_v = current.row(g, v)?;
                contributions(&p, &cl, &from_u, from_v)
            };
            let value = contrib.len();
            let bought = cost <= 2 * value;
            if bought {
                current.buy(g, &p);
            }
            ledger.records.push(PathRecord {
                pair_index,
                pair: (u, v),
                rung: 0,
                length: p.len(),
                cost,
                value,
                bought,
                contributions: if bought { contrib } else { Vec::new() },
            });
        }
    }

    let edges_bought = ledger.bought_cost();
    Ok((
        Spanner {
            edges_clustering: cg.edges.len(),
            edges_bought,
            edges_phase3: 0,
            edges: current.edges,
        },
        ledger,
    ))
}
