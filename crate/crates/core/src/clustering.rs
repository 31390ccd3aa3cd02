//! Centered clusterings and their cluster subgraph.
//!
//! [`build_clustering`] repeatedly picks a vertex with at least `⌈n^β⌉`
//! still-unclustered neighbors and turns exactly that many of them into a
//! cluster. The retained subgraph keeps every edge inside `C ∪ {center}` for
//! each cluster plus every edge touching a node left unclustered, so:
//!
//! * an edge missing from the subgraph joins two different clusters;
//! * two members of one cluster are within two hops (through the center).

use crate::error::{parameter, Error, Result};
use crate::graph::{splice_simple, path_cost, EdgeSet, Graph, Node, Path};

pub type ClusterId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    /// The vertex the members were drawn from. Not itself a member; it may
    /// be unclustered or belong to a different cluster.
    pub center: Node,
    /// Sorted member ids.
    pub members: Vec<Node>,
}

#[derive(Clone, Debug)]
pub struct Clustering {
    clusters: Vec<Cluster>,
    cluster_of: Vec<Option<ClusterId>>,
    beta: f64,
    size_threshold: usize,
}

/// The retained-edge subgraph that comes with a [`Clustering`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterGraph {
    pub edges: EdgeSet,
}

/// Snaps values within 1e-9 (relative) of an integer onto it, so that
/// `⌈·⌉` and `⌊·⌋` of powers that are integral in exact arithmetic do not
/// flip on pow/exp rounding.
pub(crate) fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}

/// `n^e` with the integral exponents handled exactly.
pub fn pow_n(n: usize, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        n as f64
    } else {
        snap((n as f64).powf(e))
    }
}

/// Cluster size `⌈n^β⌉` (at least 1).
pub fn size_threshold(n: usize, beta: f64) -> usize {
    (pow_n(n, beta).ceil() as usize).max(1)
}

/// Largest cluster count the construction can produce, `⌊n^{1-β}⌋`.
pub fn cluster_count_bound(n: usize, beta: f64) -> usize {
    pow_n(n, 1.0 - beta).floor() as usize
}

impl Clustering {
    /// Assembles a clustering from explicit clusters, checking that they
    /// are disjoint and in range. Adjacency to the center is not checked.
    pub fn from_parts(n: usize, beta: f64, clusters: Vec<Cluster>) -> Result<Self> {
        let mut cluster_of = vec![None; n];
        for (id, c) in clusters.iter().enumerate() {
            if c.center >= n {
                return Err(Error::Input(format!("center {} out of range", c.center)));
            }
            for &v in &c.members {
                if v >= n {
                    return Err(Error::Input(format!("member {v} out of range")));
                }
                if cluster_of[v].replace(id).is_some() {
                    return Err(Error::Input(format!("node {v} is in two clusters")));
                }
            }
        }
        Ok(Clustering {
            clusters,
            cluster_of,
            beta,
            size_threshold: size_threshold(n, beta),
        })
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn cluster(&self, id: ClusterId) -> &Cluster {
        &self.clusters[id]
    }

    pub fn cluster_of(&self, v: Node) -> Option<ClusterId> {
        self.cluster_of[v]
    }

    pub fn is_clustered(&self, v: Node) -> bool {
        self.cluster_of[v].is_some()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn size_threshold(&self) -> usize {
        self.size_threshold
    }

    /// Distinct clusters with a vertex on `p`, in order of first appearance.
    pub fn touching(&self, p: &Path) -> Vec<ClusterId> {
        let mut seen = Vec::new();
        for &v in p.vertices() {
            if let Some(c) = self.cluster_of[v] {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
        }
        seen
    }

    /// Largest number of vertices of `p` falling in a single cluster.
    pub fn max_multiplicity(&self, p: &Path) -> usize {
        let mut counts = vec![0usize; self.clusters.len()];
        for &v in p.vertices() {
            if let Some(c) = self.cluster_of[v] {
                counts[c] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }
}

/// Builds the clustering and its cluster subgraph for `0 ≤ beta ≤ 1`.
///
/// Vertices are scanned in ascending id order and the cluster is formed from
/// the smallest-id unclustered neighbors.
pub fn build_clustering(g: &Graph, beta: f64) -> Result<(Clustering, ClusterGraph)> {
    if !(0.0..=1.0).contains(&beta) {
        return parameter(format!("beta must lie in [0,1], got {beta}"));
    }
    let n = g.n();
    let t = size_threshold(n, beta);
    let mut cluster_of: Vec<Option<ClusterId>> = vec![None; n];
    let mut free_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut clusters = Vec::new();
    let mut edges = EdgeSet::empty(g);
    let mut in_block = vec![false; n];

    // Free degrees only ever shrink, so a vertex that failed the test stays
    // failed; resuming the scan at `v` visits the same vertices a restart
    // from 0 would.
    let mut v = 0;
    while v < n {
        if free_degree[v] < t {
            v += 1;
            continue;
        }
        let id = clusters.len();
        let members: Vec<Node> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| cluster_of[w].is_none())
            .take(t)
            .collect();
        for &w in &members {
            cluster_of[w] = Some(id);
            for &x in g.neighbors(w) {
                free_degree[x] -= 1;
            }
        }
        let block: Vec<Node> = members.iter().copied().chain(std::iter::once(v)).collect();
        for &x in &block {
            in_block[x] = true;
        }
        for &x in &block {
            for (&w, &eid) in g.neighbors(x).iter().zip(g.incident_edge_ids(x)) {
                if in_block[w] {
                    edges.insert_id(eid);
                }
            }
        }
        for &x in &block {
            in_block[x] = false;
        }
        clusters.push(Cluster { center: v, members });
    }

    for (u, owner) in cluster_of.iter().enumerate() {
        if owner.is_none() {
            for &eid in g.incident_edge_ids(u) {
                edges.insert_id(eid);
            }
        }
    }

    Ok((
        Clustering {
            clusters,
            cluster_of,
            beta,
            size_threshold: t,
        },
        ClusterGraph { edges },
    ))
}

/// Vertices to append after `from` to reach `to` inside their shared
/// cluster: nothing, a direct retained edge, or the hop through the center.
pub(crate) fn intra_cluster_link(
    g: &Graph,
    cl: &Clustering,
    cg: &ClusterGraph,
    from: Node,
    to: Node,
) -> Result<Vec<Node>> {
    if from == to {
        return Ok(Vec::new());
    }
    let c = match (cl.cluster_of(from), cl.cluster_of(to)) {
        (Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(Error::Invariant(format!(
                "{from} and {to} do not share a cluster"
            )))
        }
    };
    if cg.edges.contains(g, from, to) {
        return Ok(vec![to]);
    }
    let center = cl.cluster(c).center;
    if cg.edges.contains(g, from, center) && cg.edges.contains(g, center, to) {
        Ok(vec![center, to])
    } else {
        Err(Error::Invariant(format!(
            "cluster {c} lacks a two-hop route {from}-{center}-{to}"
        )))
    }
}

/// Shortcuts `p` until no cluster holds four or more of its vertices.
///
/// Each round takes the lowest-id offending cluster, keeps its on-path
/// vertices nearest either endpoint, and replaces everything between them by
/// the at-most-two-edge route through the cluster subgraph. `have` must
/// contain the cluster subgraph; the absent-edge count against it never grows.
pub fn repair_multiplicity(
    g: &Graph,
    p: &Path,
    cl: &Clustering,
    cg: &ClusterGraph,
    have: &EdgeSet,
) -> Result<Path> {
    let start_cost = path_cost(g, p, have);
    let mut cur = p.clone();
    loop {
        let mut first: Vec<Option<usize>> = vec![None; cl.len()];
        let mut last = vec![0usize; cl.len()];
        let mut count = vec![0usize; cl.len()];
        for (i, &v) in cur.vertices().iter().enumerate() {
            if let Some(c) = cl.cluster_of(v) {
                first[c].get_or_insert(i);
                last[c] = i;
                count[c] += 1;
            }
        }
        let Some(c) = (0..cl.len()).find(|&c| count[c] >= 4) else {
            break;
        };
        let (a, b) = (first[c].unwrap(), last[c]);
        let vs = cur.vertices();
        let mut walk: Vec<Node> = vs[..=a].to_vec();
        walk.extend(intra_cluster_link(g, cl, cg, vs[a], vs[b])?);
        walk.extend_from_slice(&vs[b + 1..]);
        let next = splice_simple(g, &walk)?;
        if next.len() >= cur.len() {
            return Err(Error::Invariant("multiplicity repair did not shorten the path".into()));
        }
        cur = next;
    }
    if path_cost(g, &cur, have) > start_cost {
        return Err(Error::Invariant("multiplicity repair raised the path cost".into()));
    }
    Ok(cur)
}
