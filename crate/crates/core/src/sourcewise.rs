//! `(1,2k)` spanners for all pairs in `S × V`.
//!
//! Every pair walks a ladder of candidate paths `ρ⁰ … ρᵏ`. Rung 0 is the
//! shortest path. A rung is bought once its cost is at most `3γ` times its
//! value (clusters it brings strictly closer to the source). Otherwise the
//! next rung reroutes the source through the current spanner to a
//! cluster on the cheap suffix of the path, costing at most two extra hops
//! while dividing the cost by `γ = (3n^{1-β})^{1/k}`. At rung `k` the cost
//! bound drops below one, so some rung is always bought.

use crate::buying::{
    clamp_unit, ladder_gamma, normalize_nodes, resolve_beta, within, BuyLedger, Contribution,
    ConstructionKind, Current, PathRecord, Spanner,
};
use crate::clustering::{
    build_clustering, intra_cluster_link, pow_n, repair_multiplicity, ClusterGraph, Clustering,
};
use crate::error::{input, parameter, Error, Result};
use crate::graph::{bfs_distances, path_cost, splice_simple, DistanceRow, EdgeSet, Graph, Node, Path};

#[derive(Clone, Debug)]
pub struct SourcewiseParams {
    pub sources: Vec<Node>,
    pub k: usize,
    /// `None` picks `n^β = (n^{1/k}(2k+3)|S|)^{k/(2k+1)}`.
    pub beta: Option<f64>,
}

impl SourcewiseParams {
    pub fn new(sources: Vec<Node>, k: usize) -> Self {
        SourcewiseParams { sources, k, beta: None }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }
}

pub fn default_beta(n: usize, s: usize, k: usize) -> f64 {
    if n <= 1 || s == 0 {
        return 1.0;
    }
    let (ln_n, kf) = ((n as f64).ln(), k as f64);
    let ln_target = kf / (2.0 * kf + 1.0) * (ln_n / kf + ((2.0 * kf + 3.0) * s as f64).ln());
    clamp_unit(ln_target / ln_n)
}

/// A rung of the ladder: a path, its index, and its cost against the
/// spanner at the time it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePath {
    pub path: Path,
    pub rung: usize,
    pub cost: usize,
}

/// Bounds every rung of one ladder must respect.
#[derive(Clone, Copy, Debug)]
pub struct LadderBounds {
    /// `δ_G` between the pair.
    pub distance: usize,
    /// Extra hops allowed per rung: 2 here, 4 for the pairwise ladder.
    pub slack_per_rung: usize,
    pub gamma: f64,
    /// `n^{1-β}`.
    pub cluster_bound: f64,
}

impl LadderBounds {
    pub fn max_length(&self, rung: usize) -> usize {
        self.distance + self.slack_per_rung * rung
    }

    pub fn max_cost(&self, rung: usize) -> f64 {
        2.0 * self.cluster_bound / self.gamma.powi(rung as i32)
    }

    /// Checks the three ladder invariants on a rung.
    pub fn check(&self, cl: &Clustering, cp: &CandidatePath) -> Result<()> {
        if cp.path.len() > self.max_length(cp.rung) {
            return Err(Error::Invariant(format!(
                "rung {} has length {} > {}",
                cp.rung,
                cp.path.len(),
                self.max_length(cp.rung)
            )));
        }
        let mult = cl.max_multiplicity(&cp.path);
        if mult > 3 {
            return Err(Error::Invariant(format!(
                "rung {} puts {mult} vertices in one cluster",
                cp.rung
            )));
        }
        if !within(cp.cost as f64, self.max_cost(cp.rung)) {
            return Err(Error::Invariant(format!(
                "rung {} has cost {} > {:.6}",
                cp.rung,
                cp.cost,
                self.max_cost(cp.rung)
            )));
        }
        Ok(())
    }
}

/// Clusters touching `p` whose distance from `p.first()` in the current
/// spanner exceeds their along-path distance.
fn improved_clusters(p: &Path, cl: &Clustering, from_source: &DistanceRow) -> Vec<Contribution> {
    let source = p.first();
    let mut seen = vec![false; cl.len()];
    let mut out = Vec::new();
    for (i, &x) in p.vertices().iter().enumerate() {
        let Some(c) = cl.cluster_of(x) else { continue };
        if std::mem::replace(&mut seen[c], true) {
            continue;
        }
        let here = from_source.min_over(&cl.cluster(c).members);
        if here.is_none_or(|d| d as usize > i) {
            out.push(Contribution::Endpoint { node: source, cluster: c });
        }
    }
    out
}

fn orient(p: &Path, source: Node) -> Result<Path> {
    if p.first() == source {
        Ok(p.clone())
    } else if p.last() == source {
        Ok(p.reversed())
    } else {
        input(format!("source {source} is not an endpoint of the path"))
    }
}

/// Number of clusters C touching `p` with `δ_current(source, C) > δ_p(source, C)`.
pub fn value_sourcewise(
    g: &Graph,
    p: &Path,
    source: Node,
    cl: &Clustering,
    current: &EdgeSet,
) -> Result<usize> {
    let p = orient(p, source)?;
    let row = bfs_distances(g, current, source)?;
    Ok(improved_clusters(&p, cl, &row).len())
}

/// Builds the next rung from a rung whose buy test failed.
pub fn refine_sourcewise(
    g: &Graph,
    cp: &CandidatePath,
    source: Node,
    cl: &Clustering,
    cg: &ClusterGraph,
    current: &EdgeSet,
    bounds: &LadderBounds,
) -> Result<CandidatePath> {
    let row = bfs_distances(g, current, source)?;
    refine_with_row(g, cp, source, cl, cg, current, &row, bounds)
}

#[allow(clippy::too_many_arguments)]
fn refine_with_row(
    g: &Graph,
    cp: &CandidatePath,
    source: Node,
    cl: &Clustering,
    cg: &ClusterGraph,
    current: &EdgeSet,
    from_source: &DistanceRow,
    bounds: &LadderBounds,
) -> Result<CandidatePath> {
    let p = orient(&cp.path, source)?;
    let cost = path_cost(g, &p, current);
    if cost == 0 {
        return input("a zero-cost rung is always bought and never refined");
    }
    let keep = (cost as f64 / bounds.gamma).floor() as usize;

    // R starts right after the (keep+1)-th absent edge counted from the end.
    let absent: Vec<bool> = p.edge_ids(g).map(|id| !current.contains_id(id)).collect();
    let mut seen = 0;
    let mut r_start = None;
    for e in (0..absent.len()).rev() {
        if absent[e] {
            if seen == keep {
                r_start = Some(e + 1);
                break;
            }
            seen += 1;
        }
    }
    let r_start = r_start.ok_or_else(|| Error::Invariant("suffix split found no absent edge".into()))?;

    let vs = p.vertices();
    let (x_pos, c) = (r_start..vs.len())
        .find_map(|i| {
            let c = cl.cluster_of(vs[i])?;
            let d = from_source.min_over(&cl.cluster(c).members)?;
            (d as usize <= i).then_some((i, c))
        })
        .ok_or_else(|| {
            Error::Invariant(format!(
                "no cluster on the suffix from index {r_start} is already close to the source"
            ))
        })?;

    let members = &cl.cluster(c).members;
    let y = from_source.nearest_in(members).expect("cluster reached");
    let prefix = from_source
        .path_to(g, current, y)
        .expect("nearest member reachable");
    let mut walk = prefix.vertices().to_vec();
    walk.extend(intra_cluster_link(g, cl, cg, y, vs[x_pos])?);
    walk.extend_from_slice(&vs[x_pos + 1..]);
    let spliced = splice_simple(g, &walk)?;
    let path = repair_multiplicity(g, &spliced, cl, cg, current)?;
    if path.first() != source || path.last() != p.last() {
        return Err(Error::Invariant("refinement moved an endpoint".into()));
    }
    let next = CandidatePath {
        cost: path_cost(g, &path, current),
        path,
        rung: cp.rung + 1,
    };
    if next.cost > keep {
        return Err(Error::Invariant(format!(
            "refined rung costs {} > ⌊{cost}/γ⌋ = {keep}",
            next.cost
        )));
    }
    bounds.check(cl, &next)?;
    Ok(next)
}

pub fn build_sourcewise(g: &Graph, params: &SourcewiseParams) -> Result<(Spanner, BuyLedger)> {
    if params.k < 1 {
        return parameter("sourcewise spanner needs k >= 1");
    }
    let k = params.k;
    let sources = normalize_nodes(g, &params.sources)?;
    if sources.is_empty() {
        return input("sourcewise spanner needs a nonempty source set");
    }
    let n = g.n();
    let beta = resolve_beta(params.beta, || default_beta(n, sources.len(), k))?;
    let gamma = ladder_gamma(n, beta, k);
    let cluster_bound = pow_n(n, 1.0 - beta);
    let (cl, cg) = build_clustering(g, beta)?;
    let mut ledger = BuyLedger::new(
        ConstructionKind::Sourcewise,
        n,
        beta,
        cl.len(),
        cl.size_threshold(),
        cg.edges.len(),
    );
    let full = EdgeSet::full(g);
    let mut current = Current::new(cg.edges.clone());

    for &u in &sources {
        let in_g = bfs_distances(g, &full, u)?;
        for v in (0..n).filter(|&v| v != u) {
            let pair_index = ledger.pair_count;
            ledger.pair_count += 1;
            let Some(shortest) = in_g.path_to(g, &full, v) else {
                ledger.unreachable_pairs += 1;
                continue;
            };
            let bounds = LadderBounds {
                distance: shortest.len(),
                slack_per_rung: 2,
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
                let contrib = if cp.cost == 0 {
                    Vec::new()
                } else {
                    improved_clusters(&cp.path, &cl, current.row(g, u)?)
                };
                let value = contrib.len();
                let bought = cp.cost as f64 <= 3.0 * gamma * value as f64;
                ledger.records.push(PathRecord {
                    pair_index,
                    pair: (u, v),
                    rung: cp.rung,
                    length: cp.path.len(),
                    cost: cp.cost,
                    value,
                    bought,
                    contributions: if bought { contrib } else { Vec::new() },
                });
                if bought {
                    current.buy(g, &cp.path);
                    break;
                }
                if cp.rung >= k {
                    return Err(Error::Invariant(format!(
                        "pair ({u},{v}) exhausted {k} rungs with cost {}",
                        cp.cost
                    )));
                }
                let row = current.row(g, u)?.clone();
                cp = refine_with_row(g, &cp, u, &cl, &cg, &current.edges, &row, &bounds)?;
            }
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
