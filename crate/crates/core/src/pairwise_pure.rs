//! `(1,4k)` spanners for an arbitrary pair list.
//!
//! Like the sourcewise ladder, but value counts cluster pairs and a rung is
//! bought when `cost ≤ 6γ√value`. A failed rung is rebuilt as
//! prefix + bridge + suffix: the bridge joins the two clustered vertices
//! farthest apart (in clustered-vertex order) whose clusters the current
//! spanner already connects at least as well as the path does.

use crate::buying::{
    clamp_unit, ladder_gamma, resolve_beta, BuyLedger, ConstructionKind, Current, PathRecord,
    Spanner,
};
use crate::clustering::{
    build_clustering, intra_cluster_link, pow_n, repair_multiplicity, ClusterGraph, Clustering,
};
use crate::error::{input, parameter, Error, Result};
use crate::graph::{bfs_distances, multi_source_bfs, path_cost, splice_simple, EdgeSet, Graph, Node, Path};
use crate::mult_spanner::log_stretch_k;
use crate::pairwise_near::{ClusterPairTable, PairConvention};
use crate::sourcewise::{CandidatePath, LadderBounds};

/// A rung of the pairwise ladder; same shape as the sourcewise one.
pub type PureCandidatePath = CandidatePath;

#[derive(Clone, Debug)]
pub struct PureAdditiveParams {
    pub pairs: Vec<(Node, Node)>,
    pub k: usize,
    /// `None` picks `n^β = (6n^{1/k}√((4k+5)N))^{k/(2k+1)}`.
    pub beta: Option<f64>,
}

impl PureAdditiveParams {
    pub fn new(pairs: Vec<(Node, Node)>, k: usize) -> Self {
        PureAdditiveParams { pairs, k, beta: None }
    }

    /// `k = ⌈log₂ n⌉`, the `(1, 4 log n)` configuration.
    pub fn with_log_k(pairs: Vec<(Node, Node)>, n: usize) -> Self {
        Self::new(pairs, log_stretch_k(n))
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }
}

pub fn default_beta(n: usize, pairs: usize, k: usize) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    if pairs == 0 {
        return 0.0;
    }
    let (ln_n, kf) = ((n as f64).ln(), k as f64);
    let inner = 6f64.ln() + ln_n / kf + 0.5 * ((4.0 * kf + 5.0) * pairs as f64).ln();
    clamp_unit(kf / (2.0 * kf + 1.0) * inner / ln_n)
}

fn clustered_positions(p: &Path, cl: &Clustering) -> Vec<usize> {
    p.vertices()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| cl.is_clustered(v))
        .map(|(i, _)| i)
        .collect()
}

fn max_span(p: &Path, cl: &Clustering, table: &ClusterPairTable, idx: &[usize]) -> (usize, usize) {
    let slot = |i: usize| table.slot(cl.cluster_of(p.vertices()[idx[i]]).unwrap());
    let w = idx.len() - 1;
    for span in (0..=w).rev() {
        for a in 0..=w - span {
            if table.settled(slot(a), slot(a + span)) {
                return (a, a + span);
            }
        }
    }
    unreachable!("(a, a) always qualifies")
}

/// Indices `a ≤ b` into the clustered-vertex sequence of `p` maximizing
/// `b - a` subject to `δ_p(C₁,C₂) ≥ δ_current(C₁,C₂)` for their clusters.
/// Ties go to the smallest `a`.
pub fn find_max_span_pair(
    g: &Graph,
    p: &Path,
    cl: &Clustering,
    current: &EdgeSet,
) -> Result<(usize, usize)> {
    let idx = clustered_positions(p, cl);
    if idx.len() < 2 {
        return input("need at least two clustered vertices on the path");
    }
    let table = ClusterPairTable::new(g, p, cl, current)?;
    Ok(max_span(p, cl, &table, &idx))
}

/// Builds the next rung from a rung whose buy test failed.
pub fn refine_pure(
    g: &Graph,
    cp: &PureCandidatePath,
    endpoints: (Node, Node),
    cl: &Clustering,
    cg: &ClusterGraph,
    current: &EdgeSet,
    bounds: &LadderBounds,
) -> Result<PureCandidatePath> {
    let table = ClusterPairTable::new(g, &cp.path, cl, current)?;
    refine_with_table(g, cp, endpoints, cl, cg, current, &table, bounds)
}

#[allow(clippy::too_many_arguments)]
fn refine_with_table(
    g: &Graph,
    cp: &PureCandidatePath,
    endpoints: (Node, Node),
    cl: &Clustering,
    cg: &ClusterGraph,
    current: &EdgeSet,
    table: &ClusterPairTable,
    bounds: &LadderBounds,
) -> Result<PureCandidatePath> {
    let p = &cp.path;
    if (p.first(), p.last()) != endpoints {
        return input("rung does not join the pair in order");
    }
    let cost = path_cost(g, p, current);
    if cost == 0 {
        return input("a zero-cost rung is always bought and never refined");
    }
    let idx = clustered_positions(p, cl);
    if idx.len() < 2 {
        return Err(Error::Invariant(
            "a rung with fewer than two clustered vertices has positive cost".into(),
        ));
    }
    let (a, b) = max_span(p, cl, table, &idx);
    let w = idx.len() - 1;
    let x = a + (w - b);
    if !crate::buying::within(x as f64, cost as f64 / bounds.gamma) {
        return Err(Error::Invariant(format!(
            "outer clustered count {x} exceeds cost/γ = {:.6}",
            cost as f64 / bounds.gamma
        )));
    }

    let vs = p.vertices();
    let (from, to) = (vs[idx[a]], vs[idx[b]]);
    let c1 = cl.cluster_of(from).unwrap();
    let c2 = cl.cluster_of(to).unwrap();
    let mut walk: Vec<Node> = vs[..=idx[a]].to_vec();
    if c1 == c2 {
        walk.extend(intra_cluster_link(g, cl, cg, from, to)?);
    } else {
        let row = multi_source_bfs(g, current, &cl.cluster(c1).members)?;
        let landing = row
            .nearest_in(&cl.cluster(c2).members)
            .ok_or_else(|| Error::Invariant("settled cluster pair is disconnected".into()))?;
        let bridge = row.path_to(g, current, landing).unwrap();
        walk.extend(intra_cluster_link(g, cl, cg, from, bridge.first())?);
        walk.extend_from_slice(&bridge.vertices()[1..]);
        walk.extend(intra_cluster_link(g, cl, cg, landing, to)?);
    }
    walk.extend_from_slice(&vs[idx[b] + 1..]);
    let spliced = splice_simple(g, &walk)?;
    let path = repair_multiplicity(g, &spliced, cl, cg, current)?;
    if (path.first(), path.last()) != endpoints {
        return Err(Error::Invariant("refinement moved an endpoint".into()));
    }
    let next = CandidatePath {
        cost: path_cost(g, &path, current),
        path,
        rung: cp.rung + 1,
    };
    if next.cost > x {
        return Err(Error::Invariant(format!(
            "refined rung costs {} > a + (w - b) = {x}",
            next.cost
        )));
    }
    bounds.check(cl, &next)?;
    Ok(next)
}

pub fn build_pairwise_pure(g: &Graph, params: &PureAdditiveParams) -> Result<(Spanner, BuyLedger)> {
    if params.k < 1 {
        return parameter("purely additive spanner needs k >= 1");
    }
    for &(s, t) in &params.pairs {
        g.check_node(s)?;
        g.check_node(t)?;
    }
    let (n, k) = (g.n(), params.k);
    let beta = resolve_beta(params.beta, || default_beta(n, params.pairs.len(), k))?;
    let gamma = ladder_gamma(n, beta, k);
    let cluster_bound = pow_n(n, 1.0 - beta);
    let (cl, cg) = build_clustering(g, beta)?;
    let mut ledger = BuyLedger::new(
        ConstructionKind::PairwisePure,
        n,
        beta,
        cl.len(),
        cl.size_threshold(),
        cg.edges.len(),
    );
    let full = EdgeSet::full(g);
    let mut current = Current::new(cg.edges.clone());

    for (pair_index, &(s, t)) in params.pairs.iter().enumerate() {
        ledger.pair_count += 1;
        let Some(shortest) = bfs_distances(g, &full, s)?.path_to(g, &full, t) else {
            ledger.unreachable_pairs += 1;
            continue;
        };
        let bounds = LadderBounds {
            distance: shortest.len(),
            slack_per_rung: 4,
            gamma,
            cluster_bound,
        };
        let mut cp = CandidatePath {
            cost: path_cost(g, &shortest, &current.edges),
            path: shortest,
            rung: 0,
        };
        bounds.check(&cl, &cp)?;
        loop {
            let table = if cp.cost == 0 {
                None
            } else {
                Some(ClusterPairTable::new(g, &cp.path, &cl, &current.edges)?)
            };
            let value = table
                .as_ref()
                .map_or(0, |t| t.value(PairConvention::Unordered));
            let bought = cp.cost as f64 <= 6.0 * gamma * (value as f64).sqrt();
            ledger.records.push(PathRecord {
                pair_index,
                pair: (s, t),
                rung: cp.rung,
                length: cp.path.len(),
                cost: cp.cost,
                value,
                bought,
                contributions: match (&table, bought) {
                    (Some(t), true) => t.contributions(),
                    _ => Vec::new(),
                },
            });
            if bought {
                current.buy(g, &cp.path);
                break;
            }
            if cp.rung >= k {
                return Err(Error::Invariant(format!(
                    "pair ({s},{t}) exhausted {k} rungs with cost {}",
                    cp.cost
                )));
            }
            let table = table.expect("positive cost");
            cp = refine_with_table(g, &cp, (s, t), &cl, &cg, &current.edges, &table, &bounds)?;
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
