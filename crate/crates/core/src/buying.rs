//! Types shared by the path-buying constructions: the resulting spanner,
//! the per-path buy ledger, and parameter helpers.

use std::collections::HashMap;

use crate::clustering::ClusterId;
use crate::error::{parameter, Result};
use crate::graph::{bfs_distances, DistanceRow, EdgeSet, Graph, Node};

/// Logarithms written `log n` in the size and stretch formulas are base 2.
pub const LOG_BASE: f64 = 2.0;

pub fn log_n(n: usize) -> f64 {
    (n as f64).log(LOG_BASE)
}

/// A spanner with per-phase edge provenance.
#[derive(Clone, Debug)]
pub struct Spanner {
    pub edges: EdgeSet,
    pub edges_clustering: usize,
    pub edges_bought: usize,
    pub edges_phase3: usize,
}

impl Spanner {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionKind {
    Subsetwise,
    Sourcewise,
    PairwiseNear,
    PairwisePure,
}

/// What a single unit of value stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Contribution {
    /// An endpoint (or source) brought closer to a cluster.
    Endpoint { node: Node, cluster: ClusterId },
    /// Two clusters brought closer; stored with `lo < hi`.
    ClusterPair { lo: ClusterId, hi: ClusterId },
}

/// One evaluated candidate path (one ladder rung, for ladder constructions).
#[derive(Clone, Debug)]
pub struct PathRecord {
    /// Index of the pair in processing order.
    pub pair_index: usize,
    pub pair: (Node, Node),
    pub rung: usize,
    pub length: usize,
    pub cost: usize,
    pub value: usize,
    pub bought: bool,
    /// Filled for bought records only.
    pub contributions: Vec<Contribution>,
}

#[derive(Clone, Debug)]
pub struct BuyLedger {
    pub construction: ConstructionKind,
    pub n: usize,
    pub beta: f64,
    pub cluster_count: usize,
    pub size_threshold: usize,
    pub clustering_edges: usize,
    /// Pairs handed to the path-buying loop, reachable or not.
    pub pair_count: usize,
    /// Pairs skipped because their endpoints are disconnected in G.
    pub unreachable_pairs: usize,
    pub records: Vec<PathRecord>,
}

impl BuyLedger {
    pub(crate) fn new(
        construction: ConstructionKind,
        n: usize,
        beta: f64,
        cluster_count: usize,
        size_threshold: usize,
        clustering_edges: usize,
    ) -> Self {
        BuyLedger {
            construction,
            n,
            beta,
            cluster_count,
            size_threshold,
            clustering_edges,
            pair_count: 0,
            unreachable_pairs: 0,
            records: Vec::new(),
        }
    }

    pub fn bought(&self) -> impl Iterator<Item = &PathRecord> {
        self.records.iter().filter(|r| r.bought)
    }

    pub fn bought_cost(&self) -> usize {
        self.bought().map(|r| r.cost).sum()
    }

    pub fn bought_value(&self) -> usize {
        self.bought().map(|r| r.value).sum()
    }
}

pub(crate) fn clamp_unit(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(0.0, 1.0)
    }
}

/// Validates a caller-supplied beta or falls back to `auto`.
pub(crate) fn resolve_beta(given: Option<f64>, auto: impl FnOnce() -> f64) -> Result<f64> {
    match given {
        Some(b) if (0.0..=1.0).contains(&b) => Ok(b),
        Some(b) => parameter(format!("beta must lie in [0,1], got {b}")),
        None => Ok(auto()),
    }
}

/// The ladder's per-rung cost shrink factor, `(3 n^{1-β})^{1/k}`.
pub fn ladder_gamma(n: usize, beta: f64, k: usize) -> f64 {
    (3.0 * crate::clustering::pow_n(n, 1.0 - beta)).powf(1.0 / k as f64)
}

/// Sorted, deduplicated, range-checked node set.
pub(crate) fn normalize_nodes(g: &Graph, nodes: &[Node]) -> Result<Vec<Node>> {
    let mut s = nodes.to_vec();
    for &v in &s {
        g.check_node(v)?;
    }
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// The growing spanner during path buying, with a version stamp bumped on
/// every change so distance rows can be reused between buys.
pub(crate) struct Current {
    pub edges: EdgeSet,
    version: u64,
    rows: HashMap<Node, (u64, DistanceRow)>,
}

impl Current {
    pub fn new(edges: EdgeSet) -> Self {
        Current {
            edges,
            version: 0,
            rows: HashMap::new(),
        }
    }

    pub fn buy(&mut self, g: &Graph, p: &crate::graph::Path) -> usize {
        let added = self.edges.insert_path(g, p);
        if added > 0 {
            self.version += 1;
        }
        added
    }

    /// BFS row from `source` over the current edges, cached until the next buy.
    pub fn row(&mut self, g: &Graph, source: Node) -> Result<&DistanceRow> {
        let stale = self.rows.get(&source).is_none_or(|(v, _)| *v != self.version);
        if stale {
            let row = bfs_distances(g, &self.edges, source)?;
            self.rows.insert(source, (self.version, row));
        }
        Ok(&self.rows[&source].1)
    }
}

/// Relative slack when comparing integral costs against real-valued bounds.
pub(crate) const BOUND_SLACK: f64 = 1e-9;

pub(crate) fn within(observed: f64, allowed: f64) -> bool {
    observed <= allowed * (1.0 + BOUND_SLACK) + BOUND_SLACK
}
