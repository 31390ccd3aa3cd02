//! Independent checks on construction outputs.
//!
//! Distances here come from a plain BFS written for this module alone, so a
//! bug in the shared BFS machinery cannot hide itself. Stretch bounds are
//! compared in exact rational arithmetic.

use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::buying::{log_n, within, BuyLedger, ConstructionKind, Contribution};
use crate::clustering::{pow_n, ClusterGraph, Clustering};
use crate::error::{input, parameter, Error, Result};
use crate::graph::{shortest_path, EdgeSet, Graph, Node, Path};
use crate::harness::rng::SplitMix;

/// `f(d) = alpha·d + add`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StretchSpec {
    pub alpha: Ratio<i64>,
    pub add: Ratio<i64>,
}

impl StretchSpec {
    pub fn new(alpha: Ratio<i64>, add: Ratio<i64>) -> Result<Self> {
        if alpha < Ratio::from_integer(1) || add < Ratio::from_integer(0) {
            return parameter(format!("stretch needs alpha >= 1 and add >= 0, got ({alpha}, {add})"));
        }
        Ok(StretchSpec { alpha, add })
    }

    /// `f(d) = d + add`.
    pub fn additive(add: i64) -> Self {
        StretchSpec::new(Ratio::from_integer(1), Ratio::from_integer(add)).expect("add >= 0")
    }

    /// `f(d) = alpha·d`.
    pub fn multiplicative(alpha: i64) -> Self {
        StretchSpec::new(Ratio::from_integer(alpha), Ratio::from_integer(0)).expect("alpha >= 1")
    }

    /// `f(d) = (1+ε)·d + 4` with ε given in decimal.
    pub fn near_additive(epsilon: &str) -> Result<Self> {
        let eps = parse_decimal(epsilon)?;
        if eps <= Ratio::from_integer(0) {
            return parameter(format!("epsilon must be positive, got {epsilon}"));
        }
        StretchSpec::new(eps + 1, Ratio::from_integer(4))
    }

    pub fn bound(&self, d: u32) -> Ratio<i64> {
        self.alpha * i64::from(d) + self.add
    }
}

/// Parses a plain decimal such as `0.25`, `3`, or `-1.5` exactly.
pub fn parse_decimal(s: &str) -> Result<Ratio<i64>> {
    let bad = || Error::Parameter(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let denom = 10i64.pow(frac.len() as u32);
    let r = Ratio::new(numer, denom);
    Ok(if neg { -r } else { r })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub pair: (Node, Node),
    pub d_g: Option<u32>,
    pub d_h: Option<u32>,
    /// `None` when the pair is disconnected in G.
    pub bound: Option<Ratio<i64>>,
    pub ok: bool,
}

impl PairCheck {
    /// `d_H − f(d_G)`; `None` if unreachable in either graph.
    pub fn excess(&self) -> Option<Ratio<i64>> {
        Some(Ratio::from_integer(i64::from(self.d_h?)) - self.bound?)
    }
}

#[derive(Clone, Debug)]
pub struct StretchReport {
    pub checks: Vec<PairCheck>,
    /// Largest `d_H − f(d_G)` over pairs; infinite if some pair lost
    /// connectivity, zero when no pair is reachable.
    pub worst_excess: f64,
    pub pass: bool,
}

impl StretchReport {
    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

/// Hop distances from `source` over the edges of `h`.
fn plain_bfs(g: &Graph, h: &EdgeSet, source: Node) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        for (&y, &id) in g.neighbors(x).iter().zip(g.incident_edge_ids(x)) {
            if h.contains_id(id) && dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

type DistanceVec = Vec<Option<u32>>;

/// Checks `δ_H(s,t) ≤ f(δ_G(s,t))` for every pair.
pub fn verify_stretch(
    g: &Graph,
    h: &EdgeSet,
    pairs: &[(Node, Node)],
    spec: StretchSpec,
) -> Result<StretchReport> {
    if h.universe() != g.m() {
        return input("spanner edge set does not belong to this graph");
    }
    for &(s, t) in pairs {
        g.check_node(s)?;
        g.check_node(t)?;
    }
    let mut sources: Vec<Node> = pairs.iter().map(|p| p.0).collect();
    sources.sort_unstable();
    sources.dedup();
    let full = EdgeSet::full(g);
    let rows: HashMap<Node, (DistanceVec, DistanceVec)> = sources
        .par_iter()
        .map(|&s| (s, (plain_bfs(g, &full, s), plain_bfs(g, h, s))))
        .collect();

    let checks: Vec<PairCheck> = pairs
        .iter()
        .map(|&(s, t)| {
            let (in_g, in_h) = &rows[&s];
            let (d_g, d_h) = (in_g[t], in_h[t]);
            let bound = d_g.map(|d| spec.bound(d));
            let ok = match (bound, d_h) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(b), Some(d)) => Ratio::from_integer(i64::from(d)) <= b,
            };
            PairCheck { pair: (s, t), d_g, d_h, bound, ok }
        })
        .collect();
    let pass = checks.iter().all(|c| c.ok);
    let mut worst: Option<Ratio<i64>> = None;
    let mut disconnected = false;
    for c in &checks {
        match (c.d_g, c.excess()) {
            (Some(_), None) => disconnected = true,
            (_, Some(e)) => worst = Some(worst.map_or(e, |w| w.max(e))),
            _ => {}
        }
    }
    let worst_excess = if disconnected {
        f64::INFINITY
    } else {
        worst.map_or(0.0, |w| *w.numer() as f64 / *w.denom() as f64)
    };
    Ok(StretchReport { checks, worst_excess, pass })
}

/// One explicit-constant bound: `observed ≤ allowed`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub name: &'static str,
    pub observed: f64,
    pub allowed: f64,
    pub ok: bool,
}

impl BoundRow {
    fn new(name: &'static str, observed: f64, allowed: f64) -> Self {
        BoundRow { name, observed, allowed, ok: within(observed, allowed) }
    }

    fn exact(name: &'static str, observed: usize, allowed: usize) -> Self {
        BoundRow { name, observed: observed as f64, allowed: allowed as f64, ok: observed <= allowed }
    }
}

#[derive(Clone, Debug)]
pub struct SizeReport {
    pub edges_clustering: usize,
    pub edges_bought: usize,
    pub rows: Vec<BoundRow>,
}

impl SizeReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.ok)
    }
}

/// What a ledger's construction was run with.
#[derive(Clone, Debug)]
pub enum AuditParams {
    Subsetwise { sources: usize },
    Sourcewise { sources: usize, k: usize },
    PairwiseNear { pairs: usize, epsilon: f64 },
    PairwisePure { pairs: usize, k: usize },
}

impl AuditParams {
    fn kind(&self) -> ConstructionKind {
        match self {
            AuditParams::Subsetwise { .. } => ConstructionKind::Subsetwise,
            AuditParams::Sourcewise { .. } => ConstructionKind::Sourcewise,
            AuditParams::PairwiseNear { .. } => ConstructionKind::PairwiseNear,
            AuditParams::PairwisePure { .. } => ConstructionKind::PairwisePure,
        }
    }
}

fn max_contribution_count(ledger: &BuyLedger, key: impl Fn(&Contribution) -> Contribution) -> usize {
    let mut counts: HashMap<Contribution, usize> = HashMap::new();
    for c in ledger.bought().flat_map(|r| &r.contributions) {
        *counts.entry(key(c)).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

fn cluster_of_contribution(c: &Contribution) -> Contribution {
    match *c {
        Contribution::Endpoint { cluster, .. } => Contribution::Endpoint { node: 0, cluster },
        pair => pair,
    }
}

/// Buy-rule consistency, ladder shape, and the explicit-constant budgets.
pub fn audit_sizes(ledger: &BuyLedger, params: &AuditParams) -> Result<SizeReport> {
    if ledger.construction != params.kind() {
        return Err(Error::Mismatch(format!(
            "ledger from {:?} audited as {:?}",
            ledger.construction,
            params.kind()
        )));
    }
    let n = ledger.n;
    let spread = pow_n(n, 1.0 - ledger.beta);
    let t = ledger.size_threshold;
    let gamma = |k: usize| crate::buying::ladder_gamma(n, ledger.beta, k);
    let bought_cost = ledger.bought_cost() as f64;
    let mut rows = vec![
        BoundRow::exact("cluster_count", ledger.cluster_count, spread.floor() as usize),
        BoundRow::exact(
            "clustering_edges",
            ledger.clustering_edges,
            ledger.cluster_count * (t + 1) * (t + 1) + n * t,
        ),
    ];
    let value_matches = ledger
        .bought()
        .filter(|r| r.contributions.len() != r.value)
        .count();
    rows.push(BoundRow::exact("value_matches_contributions", value_matches, 0));

    let rule_breaks = |rule: &dyn Fn(f64, f64) -> bool| {
        ledger
            .records
            .iter()
            .filter(|r| rule(r.cost as f64, r.value as f64) != r.bought)
            .count()
    };

    match *params {
        AuditParams::Subsetwise { sources } => {
            rows.push(BoundRow::exact("buy_rule", rule_breaks(&|c, v| c <= 2.0 * v), 0));
            rows.push(BoundRow::exact("endpoint_cluster_cap", max_contribution_count(ledger, |c| *c), 3));
            rows.push(BoundRow::new("bought_cost", bought_cost, 6.0 * sources as f64 * spread));
        }
        AuditParams::Sourcewise { sources, k } => {
            let g = gamma(k);
            rows.push(BoundRow::exact("buy_rule", rule_breaks(&|c, v| c <= 3.0 * g * v), 0));
            rows.push(BoundRow::exact("source_cluster_cap", max_contribution_count(ledger, |c| *c), 2 * k + 3));
            rows.push(BoundRow::exact(
                "cluster_cap",
                max_contribution_count(ledger, cluster_of_contribution),
                (2 * k + 3) * sources,
            ));
            rows.push(BoundRow::new(
                "bought_cost",
                bought_cost,
                3.0 * g * (2 * k + 3) as f64 * sources as f64 * spread,
            ));
            rows.extend(ladder_rows(ledger, k));
        }
        AuditParams::PairwiseNear { pairs, epsilon } => {
            let scale = if n <= 2 { 0.0 } else { 12.0 * log_n(n) / epsilon };
            rows.push(BoundRow::exact("buy_rule", rule_breaks(&|c, v| c <= scale * v.sqrt()), 0));
            rows.push(BoundRow::exact("cluster_pair_cap", max_contribution_count(ledger, |c| *c), 5));
            rows.push(BoundRow::new("bought_value", ledger.bought_value() as f64, 5.0 * spread * spread));
            rows.push(BoundRow::new(
                "bought_cost",
                bought_cost,
                scale * (5.0 * pairs as f64).sqrt() * spread,
            ));
        }
        AuditParams::PairwisePure { pairs, k } => {
            let g = gamma(k);
            rows.push(BoundRow::exact("buy_rule", rule_breaks(&|c, v| c <= 6.0 * g * v.sqrt()), 0));
            rows.push(BoundRow::exact("cluster_pair_cap", max_contribution_count(ledger, |c| *c), 4 * k + 5));
            rows.push(BoundRow::new(
                "bought_cost",
                bought_cost,
                6.0 * g * ((4 * k + 5) as f64).sqrt() * spread * (pairs as f64).sqrt(),
            ));
            rows.extend(ladder_rows(ledger, k));
        }
    }
    Ok(SizeReport {
        edges_clustering: ledger.clustering_edges,
        edges_bought: ledger.bought_cost(),
        rows,
    })
}

/// Ladder shape: per reachable pair the rungs run 0, 1, ... and exactly the
/// last one is bought, at rung ≤ k; a rung-k record has cost 0.
fn ladder_rows(ledger: &BuyLedger, k: usize) -> Vec<BoundRow> {
    let reachable = ledger.pair_count - ledger.unreachable_pairs;
    let mut malformed = 0;
    let mut ladders = 0usize;
    let mut i = 0;
    let recs = &ledger.records;
    while i < recs.len() {
        let mut j = i;
        while j < recs.len() && recs[j].pair_index == recs[i].pair_index {
            j += 1;
        }
        let ladder = &recs[i..j];
        ladders += 1;
        let shape_ok = ladder.iter().enumerate().all(|(r, rec)| rec.rung == r)
            && ladder.iter().rev().skip(1).all(|r| !r.bought)
            && ladder.last().unwrap().bought;
        if !shape_ok {
            malformed += 1;
        }
        i = j;
    }
    let max_rung = recs.iter().map(|r| r.rung).max().unwrap_or(0);
    let final_cost: usize = recs.iter().filter(|r| r.rung == k).map(|r| r.cost).sum();
    vec![
        BoundRow::exact("malformed_ladders", malformed, 0),
        BoundRow::exact("ladders_minus_reachable_pairs", ladders.abs_diff(reachable), 0),
        BoundRow::exact("max_rung", max_rung, k),
        BoundRow::exact("last_rung_cost", final_cost, 0),
    ]
}

/// The structural guarantees of the clustering and its retained subgraph.
pub fn audit_clustering(g: &Graph, cl: &Clustering, cg: &ClusterGraph) -> Vec<BoundRow> {
    let n = g.n();
    let t = cl.size_threshold();
    let mut owner = vec![None; n];
    let mut overlaps = 0;
    let mut bad_members = 0;
    let mut wrong_size = 0;
    for (id, c) in cl.clusters().iter().enumerate() {
        if c.members.len() != t {
            wrong_size += 1;
        }
        for &v in &c.members {
            if owner[v].replace(id).is_some() {
                overlaps += 1;
            }
            if !g.has_edge(v, c.center) {
                bad_members += 1;
            }
        }
    }
    let missing_edge = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(id, &(u, v))| {
            !cg.edges.contains_id(id)
                && !matches!((owner[u], owner[v]), (Some(a), Some(b)) if a != b)
        })
        .count();
    let mut far_members = 0;
    for c in cl.clusters() {
        for (i, &a) in c.members.iter().enumerate() {
            let dist = plain_bfs(g, &cg.edges, a);
            far_members += c.members[i + 1..]
                .iter()
                .filter(|&&b| dist[b].is_none_or(|d| d > 2))
                .count();
        }
    }
    let spread = pow_n(n, 1.0 - cl.beta());
    vec![
        BoundRow::exact("cluster_overlaps", overlaps, 0),
        BoundRow::exact("members_not_adjacent_to_center", bad_members, 0),
        BoundRow::exact("clusters_of_wrong_size", wrong_size, 0),
        BoundRow::exact("missing_edge_violations", missing_edge, 0),
        BoundRow::exact("cluster_diameter_violations", far_members, 0),
        BoundRow::exact("cluster_count", cl.len(), spread.floor() as usize),
        BoundRow::exact("clustering_edges", cg.edges.len(), cl.len() * (t + 1) * (t + 1) + n * t),
    ]
}

#[derive(Clone, Debug)]
pub struct TouchReport {
    pub trials: usize,
    /// Sampled pairs that were connected in G.
    pub checked: usize,
    /// Shortest paths with fewer than `⌈t/2⌉` touching clusters.
    pub counterexamples: Vec<Path>,
}

impl TouchReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Samples node pairs and checks that a shortest path missing `t` edges of
/// the cluster subgraph touches at least `⌈t/2⌉` clusters.
pub fn audit_path_touching(
    g: &Graph,
    cl: &Clustering,
    cg: &ClusterGraph,
    trials: usize,
    seed: u64,
) -> Result<TouchReport> {
    if trials == 0 {
        return parameter("path-touching audit needs at least one trial");
    }
    let mut report = TouchReport { trials, checked: 0, counterexamples: Vec::new() };
    if g.n() == 0 {
        return Ok(report);
    }
    let full = EdgeSet::full(g);
    let mut rng = SplitMix::new(seed);
    for _ in 0..trials {
        let u = rng.below(g.n());
        let v = rng.below(g.n());
        let Some(p) = shortest_path(g, &full, u, v)? else { continue };
        report.checked += 1;
        let missing = p.edge_ids(g).filter(|&id| !cg.edges.contains_id(id)).count();
        if cl.touching(&p).len() < missing.div_ceil(2) {
            report.counterexamples.push(p);
        }
    }
    Ok(report)
}

/// Length of a shortest cycle in `(V, h)`, or `None` if acyclic.
pub fn girth(g: &Graph, h: &EdgeSet) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(u32::MAX);
        parent_edge.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] as usize + 1 >= b) {
                break;
            }
            for (&y, &id) in g.neighbors(x).iter().zip(g.incident_edge_ids(x)) {
                if !h.contains_id(id) || id == parent_edge[x] {
                    continue;
                }
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = id;
                    queue.push_back(y);
                } else {
                    let cycle = (dist[x] + dist[y] + 1) as usize;
                    best = Some(best.map_or(cycle, |b| b.min(cycle)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_decimal("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_decimal("1").unwrap(), ratio(1, 1));
        assert_eq!(parse_decimal("1.0").unwrap(), ratio(1, 1));
        assert_eq!(parse_decimal(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_decimal("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_decimal("0.1").unwrap(), ratio(1, 10));
        for bad in ["", ".", "1e3", "abc", "1.2.3", "0x1"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn stretch_spec_rejects_contraction() {
        assert!(StretchSpec::new(ratio(1, 2), ratio(0, 1)).is_err());
        assert!(StretchSpec::new(ratio(1, 1), ratio(-1, 1)).is_err());
        assert!(StretchSpec::near_additive("0").is_err());
        assert_eq!(StretchSpec::near_additive("0.5").unwrap().bound(3), ratio(17, 2));
    }

    #[test]
    fn full_subgraph_passes_and_empty_fails() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let pairs = [(0, 3), (1, 2)];
        let r = verify_stretch(&g, &EdgeSet::full(&g), &pairs, StretchSpec::additive(0)).unwrap();
        assert!(r.pass);
        assert!(r.worst_excess <= 0.0);
        let r = verify_stretch(&g, &EdgeSet::empty(&g), &[(0, 1)], StretchSpec::additive(2)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.worst_excess, f64::INFINITY);
    }

    #[test]
    fn rational_boundary_is_inclusive() {
        // δ_G(0,3) = 3; without 0-1 the spanner needs 0-4-5-6-1-2-3 = 6.
        // (5/3)·3 + 1 = 6 passes, 1.66·3 + 1 = 5.98 and (4/3)·3 + 1 = 5 fail.
        let g = Graph::from_edges(
            7,
            [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 1)],
        )
        .unwrap();
        let mut h = EdgeSet::full(&g);
        h.remove_id(g.edge_id(0, 1).unwrap());
        let exact = StretchSpec::new(ratio(4, 3), ratio(1, 1)).unwrap();
        let r = verify_stretch(&g, &h, &[(0, 3)], exact).unwrap();
        assert_eq!(r.checks[0].d_h, Some(6));
        let tight = StretchSpec::new(ratio(5, 3), ratio(1, 1)).unwrap();
        assert!(verify_stretch(&g, &h, &[(0, 3)], tight).unwrap().pass);
        assert!(!r.pass);
        let just_under = StretchSpec::new(parse_decimal("1.66").unwrap(), ratio(1, 1)).unwrap();
        assert!(!verify_stretch(&g, &h, &[(0, 3)], just_under).unwrap().pass);
    }

    #[test]
    fn disconnected_pairs_are_vacuous() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = verify_stretch(&g, &EdgeSet::empty(&g), &[(0, 2)], StretchSpec::additive(0)).unwrap();
        assert!(r.pass);
        assert_eq!(r.worst_excess, 0.0);
    }

    #[test]
    fn girth_of_small_graphs() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(girth(&c5, &EdgeSet::full(&c5)), Some(5));
        let mut h = EdgeSet::full(&c5);
        h.remove_id(0);
        assert_eq!(girth(&c5, &h), None);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(girth(&k4, &EdgeSet::full(&k4)), Some(3));
        // Two squares sharing an edge: girth 4, not the 6-cycle around.
        let ladder = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(girth(&ladder, &EdgeSet::full(&ladder)), Some(4));
    }

    #[test]
    fn path_touching_trivial_cases() {
        let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        let (cl, cg) = crate::clustering::build_clustering(&k5, 0.5).unwrap();
        let r = audit_path_touching(&k5, &cl, &cg, 50, 1).unwrap();
        assert!(r.pass());
        assert!(audit_path_touching(&k5, &cl, &cg, 0, 1).is_err());
    }
}
