//! `(1+ε, 4)` spanners for an arbitrary pair list.
//!
//! Three phases: clustering; one pass over the shortest paths of the pairs
//! buying `ρ` when `cost(ρ) ≤ (12 log₂ n / ε)·√value(ρ)`, where value
//! counts cluster pairs the path brings strictly closer; and finally the
//! union with a `(2⌈log₂ n⌉-1)`-stretch greedy spanner.

use crate::buying::{
    clamp_unit, log_n, resolve_beta, BuyLedger, Contribution, ConstructionKind, Current,
    PathRecord, Spanner,
};
use crate::clustering::{build_clustering, ClusterId, Clustering};
use crate::error::{parameter, Result};
use crate::graph::{bfs_distances, multi_source_bfs, path_cost, EdgeSet, Graph, Node, Path};
use crate::mult_spanner::log_stretch_spanner;

/// How cluster pairs are counted in a path's value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairConvention {
    /// Each unordered pair `{C₁, C₂}`, `C₁ ≠ C₂`, counts once.
    #[default]
    Unordered,
    /// `(C₁, C₂)` and `(C₂, C₁)` count separately.
    Ordered,
}

#[derive(Clone, Debug)]
pub struct NearAdditiveParams {
    pub pairs: Vec<(Node, Node)>,
    pub epsilon: f64,
    /// `None` picks `n^{2β} = √N·log₂ n / ε`.
    pub beta: Option<f64>,
    pub convention: PairConvention,
}

impl NearAdditiveParams {
    pub fn new(pairs: Vec<(Node, Node)>, epsilon: f64) -> Self {
        NearAdditiveParams {
            pairs,
            epsilon,
            beta: None,
            convention: PairConvention::Unordered,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }
}

pub fn default_beta(n: usize, pairs: usize, epsilon: f64) -> f64 {
    if n <= 2 {
        return 1.0;
    }
    let target = (pairs as f64).sqrt() * log_n(n) / epsilon;
    if target <= 1.0 {
        return 0.0;
    }
    clamp_unit(target.ln() / (2.0 * (n as f64).ln()))
}

/// The buy threshold `(12 log₂ n / ε)·√value`.
pub fn near_threshold(n: usize, epsilon: f64, value: usize) -> f64 {
    12.0 * log_n(n) / epsilon * (value as f64).sqrt()
}

/// Distances between the clusters touching one path: along the path and in
/// the current spanner.
pub(crate) struct ClusterPairTable {
    /// Touching clusters, in order of first appearance on the path.
    pub touching: Vec<ClusterId>,
    along: Vec<Vec<usize>>,
    current: Vec<Vec<Option<u32>>>,
}

impl ClusterPairTable {
    pub fn new(g: &Graph, p: &Path, cl: &Clustering, current: &EdgeSet) -> Result<Self> {
        let touching = cl.touching(p);
        let t = touching.len();
        let slot = |c: ClusterId| touching.iter().position(|&x| x == c).unwrap();
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); t];
        for (i, &v) in p.vertices().iter().enumerate() {
            if let Some(c) = cl.cluster_of(v) {
                positions[slot(c)].push(i);
            }
        }
        let mut along = vec![vec![0usize; t]; t];
        for a in 0..t {
            for b in a + 1..t {
                let d = positions[a]
                    .iter()
                    .flat_map(|&i| positions[b].iter().map(move |&j| i.abs_diff(j)))
                    .min()
                    .unwrap();
                along[a][b] = d;
                along[b][a] = d;
            }
        }
        let mut cur = vec![vec![None; t]; t];
        for a in 0..t {
            let row = multi_source_bfs(g, current, &cl.cluster(touching[a]).members)?;
            for b in 0..t {
                cur[a][b] = row.min_over(&cl.cluster(touching[b]).members);
            }
        }
        Ok(ClusterPairTable {
            touching,
            along,
            current: cur,
        })
    }

    pub fn slot(&self, c: ClusterId) -> usize {
        self.touching.iter().position(|&x| x == c).unwrap()
    }

    /// `δ_p(C₁,C₂) < δ_current(C₁,C₂)`.
    pub fn improved(&self, a: usize, b: usize) -> bool {
        self.current[a][b].is_none_or(|d| (self.along[a][b] as u64) < d as u64)
    }

    /// `δ_p(C₁,C₂) ≥ δ_current(C₁,C₂)`.
    pub fn settled(&self, a: usize, b: usize) -> bool {
        !self.improved(a, b)
    }

    pub fn contributions(&self) -> Vec<Contribution> {
        let t = self.touching.len();
        let mut out = Vec::new();
        for a in 0..t {
            for b in a + 1..t {
                if self.improved(a, b) {
                    let (x, y) = (self.touching[a], self.touching[b]);
                    out.push(Contribution::ClusterPair {
                        lo: x.min(y),
                        hi: x.max(y),
                    });
                }
            }
        }
        out
    }

    pub fn value(&self, convention: PairConvention) -> usize {
        let unordered = self.contributions().len();
        match convention {
            PairConvention::Unordered => unordered,
            PairConvention::Ordered => 2 * unordered,
        }
    }
}

/// Number of unordered cluster pairs, both touching `p`, that `p` brings
/// strictly closer than the current spanner does.
pub fn value_cluster_pairs(
    g: &Graph,
    p: &Path,
    cl: &Clustering,
    current: &EdgeSet,
) -> Result<usize> {
    Ok(ClusterPairTable::new(g, p, cl, current)?.value(PairConvention::Unordered))
}

pub fn build_pairwise_near(g: &Graph, params: &NearAdditiveParams) -> Result<(Spanner, BuyLedger)> {
    if !params.epsilon.is_finite() || params.epsilon <= 0.0 {
        return parameter(format!("epsilon must be positive, got {}", params.epsilon));
    }
    for &(s, t) in &params.pairs {
        g.check_node(s)?;
        g.check_node(t)?;
    }
    let n = g.n();
    let beta = resolve_beta(params.beta, || default_beta(n, params.pairs.len(), params.epsilon))?;
    let full = EdgeSet::full(g);

    if n <= 2 {
        // log₂ n ≤ 1 degenerates the buy rule; a graph this small is its own spanner.
        let mut ledger = BuyLedger::new(ConstructionKind::PairwiseNear, n, beta, 0, 1, g.m());
        ledger.pair_count = params.pairs.len();
        return Ok((
            Spanner {
                edges: full,
                edges_clustering: g.m(),
                edges_bought: 0,
                edges_phase3: 0,
            },
            ledger,
        ));
    }

    let (cl, cg) = build_clustering(g, beta)?;
    let mut ledger = BuyLedger::new(
        ConstructionKind::PairwiseNear,
        n,
        beta,
        cl.len(),
        cl.size_threshold(),
        cg.edges.len(),
    );
    let mut current = Current::new(cg.edges.clone());

    for (pair_index, &(s, t)) in params.pairs.iter().enumerate() {
        ledger.pair_count += 1;
        let Some(p) = bfs_distances(g, &full, s)?.path_to(g, &full, t) else {
            ledger.unreachable_pairs += 1;
            continue;
        };
        let cost = path_cost(g, &p, &current.edges);
        let (value, contrib) = if cost == 0 {
            (0, Vec::new())
        } else {
            let table = ClusterPairTable::new(g, &p, &cl, &current.edges)?;
            (table.value(params.convention), table.contributions())
        };
        let bought = cost as f64 <= near_threshold(n, params.epsilon, value);
        if bought {
            current.buy(g, &p);
        }
        ledger.records.push(PathRecord {
            pair_index,
            pair: (s, t),
            rung: 0,
            length: p.len(),
            cost,
            value,
            bought,
            contributions: if bought { contrib } else { Vec::new() },
        });
    }

    let edges_bought = ledger.bought_cost();
    let mut edges = current.edges;
    let edges_phase3 = edges.union_with(&log_stretch_spanner(g));
    Ok((
        Spanner {
            edges,
            edges_clustering: cg.edges.len(),
            edges_bought,
            edges_phase3,
        },
        ledger,
    ))
}
