//! The trivial exact preserver: one shortest path per pair.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{bfs_distances, EdgeSet, Graph, Node};

/// Union of one deterministic shortest path per reachable pair.
pub fn preserver_baseline(g: &Graph, pairs: &[(Node, Node)]) -> Result<EdgeSet> {
    let mut by_source: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for &(s, t) in pairs {
        g.check_node(t)?;
        by_source.entry(s).or_default().push(t);
    }
    let full = EdgeSet::full(g);
    let mut h = EdgeSet::empty(g);
    for (s, targets) in by_source {
        let row = bfs_distances(g, &full, s)?;
        for t in targets {
            if let Some(p) = row.path_to(g, &full, t) {
                h.insert_path(g, &p);
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_pairs_no_edges() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(preserver_baseline(&g, &[]).unwrap().is_empty());
    }

    #[test]
    fn single_pair_is_one_shortest_path() {
        // Square 0-1-3, 0-2-3: ties go to the smaller parent, so 0-1-3.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let h = preserver_baseline(&g, &[(0, 3)]).unwrap();
        assert_eq!(h.edges(&g).collect::<Vec<_>>(), vec![(0, 1), (1, 3)]);
    }

    #[test]
    fn tree_all_pairs_keeps_everything() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        let pairs: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        assert_eq!(preserver_baseline(&g, &pairs).unwrap(), EdgeSet::full(&g));
    }
}
