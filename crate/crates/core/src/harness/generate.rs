//! Seeded graph generators.

use crate::error::{parameter, Result};
use crate::graph::{Graph, Node};
use crate::harness::rng::SplitMix;

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// Erdős–Rényi: each unordered pair independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// `rows × cols` lattice, node `r·cols + c`.
    Grid { rows: usize, cols: usize },
    /// Random recursive tree: node `v ≥ 1` hangs off a uniform earlier node.
    Tree { n: usize },
    Cycle { n: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub seed: u64,
}

impl GenSpec {
    pub fn gnp(n: usize, p: f64, seed: u64) -> Self {
        GenSpec { model: Model::Gnp { n, p }, seed }
    }

    /// The same model under another seed.
    pub fn reseeded(&self, seed: u64) -> Self {
        GenSpec { model: self.model.clone(), seed }
    }

    pub fn n(&self) -> usize {
        match self.model {
            Model::Gnp { n, .. } | Model::Tree { n } | Model::Cycle { n } => n,
            Model::Grid { rows, cols } => rows * cols,
        }
    }
}

pub fn generate_graph(spec: &GenSpec) -> Result<Graph> {
    let mut rng = SplitMix::new(spec.seed);
    let mut edges: Vec<(Node, Node)> = Vec::new();
    match spec.model {
        Model::Gnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return parameter(format!("gnp needs 0 <= p <= 1, got {p}"));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.unit() < p {
                        edges.push((u, v));
                    }
                }
            }
            return Graph::from_edges(n, edges);
        }
        Model::Grid { rows, cols } => {
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
        }
        Model::Tree { n } => {
            for v in 1..n {
                edges.push((rng.below(v), v));
            }
        }
        Model::Cycle { n } => {
            if n < 3 {
                return parameter(format!("a cycle needs at least 3 nodes, got {n}"));
            }
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        }
    }
    Graph::from_edges(spec.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_shapes() {
        let grid = generate_graph(&GenSpec { model: Model::Grid { rows: 3, cols: 3 }, seed: 0 }).unwrap();
        assert_eq!((grid.n(), grid.m()), (9, 12));
        let cycle = generate_graph(&GenSpec { model: Model::Cycle { n: 6 }, seed: 0 }).unwrap();
        assert_eq!((cycle.n(), cycle.m()), (6, 6));
        let tree = generate_graph(&GenSpec { model: Model::Tree { n: 30 }, seed: 5 }).unwrap();
        assert_eq!(tree.m(), 29);
    }

    #[test]
    fn gnp_is_deterministic() {
        let a = generate_graph(&GenSpec::gnp(100, 0.1, 42)).unwrap();
        let b = generate_graph(&GenSpec::gnp(100, 0.1, 42)).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = generate_graph(&GenSpec::gnp(100, 0.1, 43)).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(generate_graph(&GenSpec::gnp(10, 0.0, 1)).unwrap().m(), 0);
        assert_eq!(generate_graph(&GenSpec::gnp(10, 1.0, 1)).unwrap().m(), 45);
        assert!(generate_graph(&GenSpec::gnp(10, 1.5, 1)).is_err());
    }

    #[test]
    fn gnp_replays_generator_stream() {
        // Pair order (0,1), (0,2), (1,2): one unit draw each.
        let mut r = SplitMix::new(7);
        let keep: Vec<bool> = (0..3).map(|_| r.unit() < 0.5).collect();
        let g = generate_graph(&GenSpec::gnp(3, 0.5, 7)).unwrap();
        let expect: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect();
        assert_eq!(g.edges(), &expect[..]);
    }

    #[test]
    fn tiny_cycle_rejected() {
        assert!(generate_graph(&GenSpec { model: Model::Cycle { n: 2 }, seed: 0 }).is_err());
    }
}
