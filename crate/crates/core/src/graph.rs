//! Simple undirected unweighted graphs, edge subsets over a host graph,
//! and the BFS machinery every construction is built on.
//!
//! Nodes are dense ids `0..n`. Every edge of a [`Graph`] has a stable id
//! (its rank in lexicographic `(u, v)` order with `u < v`), which lets an
//! [`EdgeSet`] be a flat membership vector instead of a hash set.

use std::collections::VecDeque;

use crate::error::{input, Error, Result};

pub type Node = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<Node>,
    edge_ids: Vec<usize>,
    edges: Vec<(Node, Node)>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges are normalized to `u < v`;
    /// repeated edges collapse into one. Self-loops and out-of-range ids
    /// are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge {{{u},{v}}} out of range for n={n}"));
            }
            if u == v {
                return input(format!("self-loop at node {u}"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &list {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0; 2 * list.len()];
        let mut edge_ids = vec![0; 2 * list.len()];
        // Edges are visited in lexicographic order, so each adjacency run
        // comes out sorted: for node x, smaller neighbors arrive (as the v
        // side) before larger ones (as the u side).
        for (id, &(u, v)) in list.iter().enumerate() {
            neighbors[fill[u]] = v;
            edge_ids[fill[u]] = id;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            edge_ids[fill[v]] = id;
            fill[v] += 1;
        }
        debug_assert!((0..n).all(|x| neighbors[offsets[x]..offsets[x + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        Ok(Graph {
            n,
            offsets,
            neighbors,
            edge_ids,
            edges: list,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: Node) -> &[Node] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    pub fn incident_edge_ids(&self, v: Node) -> &[usize] {
        &self.edge_ids[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Node) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// All edges as `(u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (Node, Node) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: Node, v: Node) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a)
            .binary_search(&b)
            .ok()
            .map(|i| self.incident_edge_ids(a)[i])
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub(crate) fn check_node(&self, v: Node) -> Result<()> {
        if v >= self.n {
            return input(format!("node {v} out of range for n={}", self.n));
        }
        Ok(())
    }
}

/// A subset of the edges of one host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    member: Vec<bool>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(g: &Graph) -> Self {
        EdgeSet {
            member: vec![false; g.m()],
            len: 0,
        }
    }

    pub fn full(g: &Graph) -> Self {
        EdgeSet {
            member: vec![true; g.m()],
            len: g.m(),
        }
    }

    pub fn from_edges<I>(g: &Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut set = EdgeSet::empty(g);
        for (u, v) in edges {
            set.insert(g, u, v)?;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of edges in the host graph this set ranges over.
    pub fn universe(&self) -> usize {
        self.member.len()
    }

    pub fn contains_id(&self, id: usize) -> bool {
        self.member[id]
    }

    pub fn contains(&self, g: &Graph, u: Node, v: Node) -> bool {
        g.edge_id(u, v).is_some_and(|id| self.member[id])
    }

    /// Returns true if the edge was newly added.
    pub fn insert_id(&mut self, id: usize) -> bool {
        if self.member[id] {
            return false;
        }
        self.member[id] = true;
        self.len += 1;
        true
    }

    pub fn insert(&mut self, g: &Graph, u: Node, v: Node) -> Result<bool> {
        match g.edge_id(u, v) {
            Some(id) => Ok(self.insert_id(id)),
            None => input(format!("{{{u},{v}}} is not an edge of the host graph")),
        }
    }

    pub fn remove_id(&mut self, id: usize) -> bool {
        if !self.member[id] {
            return false;
        }
        self.member[id] = false;
        self.len -= 1;
        true
    }

    /// Adds every edge of `p`; returns how many were new.
    pub fn insert_path(&mut self, g: &Graph, p: &Path) -> usize {
        p.edge_ids(g).filter(|&id| self.insert_id(id)).count()
    }

    /// Adds every edge of `other`; returns how many were new.
    pub fn union_with(&mut self, other: &EdgeSet) -> usize {
        debug_assert_eq!(self.universe(), other.universe());
        other.ids().filter(|&id| self.insert_id(id)).count()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.ids().all(|id| other.contains_id(id))
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter_map(|(id, &on)| on.then_some(id))
    }

    pub fn edges<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = (Node, Node)> + 'a {
        self.ids().map(|id| g.edge(id))
    }
}

/// Hop distances from a source node or node set. `None` means unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    sources: Vec<Node>,
    dist: Vec<Option<u32>>,
}

impl DistanceRow {
    pub fn get(&self, v: Node) -> Option<u32> {
        self.dist[v]
    }

    pub fn sources(&self) -> &[Node] {
        &self.sources
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.dist
    }

    /// Distance from the source(s) to the nearest member of `set`.
    pub fn min_over(&self, set: &[Node]) -> Option<u32> {
        set.iter().filter_map(|&v| self.dist[v]).min()
    }

    /// The member of `set` nearest to the source(s), smallest id on ties.
    pub fn nearest_in(&self, set: &[Node]) -> Option<Node> {
        set.iter()
            .filter_map(|&v| self.dist[v].map(|d| (d, v)))
            .min()
            .map(|(_, v)| v)
    }

    /// Traces a shortest path from the source set to `target` within
    /// `restrict`, stepping back each time to the smallest-id neighbor one
    /// level closer. The row must have been computed over `restrict`.
    pub fn path_to(&self, g: &Graph, restrict: &EdgeSet, target: Node) -> Option<Path> {
        let mut d = self.dist[target]?;
        let mut rev = vec![target];
        let mut cur = target;
        while d > 0 {
            let step = g
                .neighbors(cur)
                .iter()
                .zip(g.incident_edge_ids(cur))
                .find(|&(&w, &id)| restrict.contains_id(id) && self.dist[w] == Some(d - 1))
                .map(|(&w, _)| w)
                .expect("distance row inconsistent with restrict");
            rev.push(step);
            cur = step;
            d -= 1;
        }
        rev.reverse();
        Some(Path { vertices: rev })
    }
}

fn bfs_core(g: &Graph, restrict: &EdgeSet, sources: &[Node]) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for (&w, &id) in g.neighbors(v).iter().zip(g.incident_edge_ids(v)) {
            if dist[w].is_none() && restrict.contains_id(id) {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Exact hop distances from `source` in the subgraph `(V, restrict)`.
pub fn bfs_distances(g: &Graph, restrict: &EdgeSet, source: Node) -> Result<DistanceRow> {
    g.check_node(source)?;
    Ok(DistanceRow {
        sources: vec![source],
        dist: bfs_core(g, restrict, &[source]),
    })
}

/// Distance from the nearest member of `sources` to every node.
pub fn multi_source_bfs(g: &Graph, restrict: &EdgeSet, sources: &[Node]) -> Result<DistanceRow> {
    if sources.is_empty() {
        return input("multi-source BFS needs at least one source");
    }
    for &s in sources {
        g.check_node(s)?;
    }
    Ok(DistanceRow {
        sources: sources.to_vec(),
        dist: bfs_core(g, restrict, sources),
    })
}

/// A shortest `u`–`v` path in `(V, restrict)`, or `None` when disconnected.
pub fn shortest_path(g: &Graph, restrict: &EdgeSet, u: Node, v: Node) -> Result<Option<Path>> {
    g.check_node(v)?;
    let row = bfs_distances(g, restrict, u)?;
    Ok(row.path_to(g, restrict, v))
}

/// A simple path `v_0 .. v_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<Node>,
}

impl Path {
    /// Validates adjacency in `g` and simplicity.
    pub fn new(g: &Graph, vertices: Vec<Node>) -> Result<Self> {
        if vertices.is_empty() {
            return input("a path needs at least one vertex");
        }
        for &v in &vertices {
            g.check_node(v)?;
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return input(format!("{} and {} are not adjacent", w[0], w[1]));
            }
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if std::mem::replace(&mut seen[v], true) {
                return input(format!("vertex {v} repeats; path is not simple"));
            }
        }
        Ok(Path { vertices })
    }

    pub fn single(v: Node) -> Self {
        Path { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Node] {
        &self.vertices
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }

    pub fn first(&self) -> Node {
        self.vertices[0]
    }

    pub fn last(&self) -> Node {
        *self.vertices.last().unwrap()
    }

    pub fn position(&self, v: Node) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn edge_ids<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = usize> + 'a {
        self.vertices
            .windows(2)
            .map(|w| g.edge_id(w[0], w[1]).expect("path edge missing from host graph"))
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }
}

/// Number of edges of `p` absent from `have`.
pub fn path_cost(g: &Graph, p: &Path, have: &EdgeSet) -> usize {
    p.edge_ids(g).filter(|&id| !have.contains_id(id)).count()
}

/// Turns a walk into a simple path with the same endpoints by cutting out
/// every cycle between a vertex's first occurrence and its later return.
pub fn splice_simple(g: &Graph, walk: &[Node]) -> Result<Path> {
    let Some(&start) = walk.first() else {
        return input("empty walk");
    };
    g.check_node(start)?;
    let mut pos: Vec<Option<usize>> = vec![None; g.n()];
    let mut out: Vec<Node> = vec![start];
    pos[start] = Some(0);
    for w in walk.windows(2) {
        let (a, b) = (w[0], w[1]);
        g.check_node(b)?;
        if !g.has_edge(a, b) {
            return Err(Error::Input(format!("walk steps between non-adjacent {a} and {b}")));
        }
        match pos[b] {
            Some(i) => {
                for &dropped in &out[i + 1..] {
                    pos[dropped] = None;
                }
                out.truncate(i + 1);
            }
            None => {
                pos[b] = Some(out.len());
                out.push(b);
            }
        }
    }
    Ok(Path { vertices: out })
}
