//! Seeded pair-set generators.

use crate::error::{parameter, Result};
use crate::graph::Node;
use crate::harness::rng::SplitMix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// `count` independent pairs with distinct endpoints.
    RandomPairs,
    /// All pairs inside a random `count`-node set S, as `(s, t)` with `s < t`.
    SubsetCross,
    /// `(s, v)` for every `s` in a random `count`-node set S and every `v ≠ s`.
    SourcewiseCross,
}

impl PairMode {
    pub fn name(self) -> &'static str {
        match self {
            PairMode::RandomPairs => "random-pairs",
            PairMode::SubsetCross => "subset-cross",
            PairMode::SourcewiseCross => "sourcewise-cross",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "random-pairs" => Ok(PairMode::RandomPairs),
            "subset-cross" => Ok(PairMode::SubsetCross),
            "sourcewise-cross" => Ok(PairMode::SourcewiseCross),
            _ => parameter(format!("unknown pair mode {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub mode: PairMode,
    /// Pair count for `RandomPairs`, |S| otherwise.
    pub count: usize,
    pub seed: u64,
}

/// `size` distinct nodes below `n`, ascending. Rejection sampling in draw order.
pub fn sample_nodes(n: usize, size: usize, rng: &mut SplitMix) -> Result<Vec<Node>> {
    if size > n {
        return parameter(format!("cannot pick {size} distinct nodes out of {n}"));
    }
    let mut taken = vec![false; n];
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let v = rng.below(n);
        if !std::mem::replace(&mut taken[v], true) {
            out.push(v);
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn generate_pairs(n: usize, spec: &PairSpec) -> Result<Vec<(Node, Node)>> {
    let mut rng = SplitMix::new(spec.seed);
    match spec.mode {
        PairMode::RandomPairs => {
            if spec.count > 0 && n < 2 {
                return parameter("random pairs need at least two nodes");
            }
            Ok((0..spec.count)
                .map(|_| loop {
                    let (s, t) = (rng.below(n), rng.below(n));
                    if s != t {
                        break (s, t);
                    }
                })
                .collect())
        }
        PairMode::SubsetCross => {
            Ok(within_set(&sample_nodes(n, spec.count, &mut rng)?))
        }
        PairMode::SourcewiseCross => {
            Ok(sources_to_all(&sample_nodes(n, spec.count, &mut rng)?, n))
        }
    }
}

/// Distinct endpoints of all pairs, ascending.
pub fn endpoints(pairs: &[(Node, Node)]) -> Vec<Node> {
    let mut s: Vec<Node> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// Distinct first endpoints, ascending.
pub fn first_endpoints(pairs: &[(Node, Node)]) -> Vec<Node> {
    let mut s: Vec<Node> = pairs.iter().map(|p| p.0).collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// `(s, t)` for `s < t` in `nodes`.
pub fn within_set(nodes: &[Node]) -> Vec<(Node, Node)> {
    nodes
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| nodes[i + 1..].iter().map(move |&b| (a, b)))
        .collect()
}

/// `(s, v)` for every source and every other node.
pub fn sources_to_all(sources: &[Node], n: usize) -> Vec<(Node, Node)> {
    sources
        .iter()
        .flat_map(|&s| (0..n).filter(move |&v| v != s).map(move |v| (s, v)))
        .collect()
}
