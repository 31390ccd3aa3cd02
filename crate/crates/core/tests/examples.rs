//! Worked instances checked against brute-force oracles.

mod common;

use pairspan::clustering::build_clustering;
use pairspan::graph::{bfs_distances, multi_source_bfs, shortest_path, EdgeSet, Graph, Path};
use pairspan::harness::bench::{run_benchmark, BenchConfig};
use pairspan::harness::construct::{BuildConfig, Construction, KChoice};
use pairspan::harness::generate::{generate_graph, GenSpec};
use pairspan::harness::pairs::{generate_pairs, sample_nodes, sources_to_all, within_set, PairMode, PairSpec};
use pairspan::harness::rng::SplitMix;
use pairspan::mult_spanner::log_stretch_spanner;
use pairspan::verify::{audit_path_touching, audit_sizes, verify_stretch, AuditParams, StretchSpec};
use pairspan::*;

use common::{floyd_warshall, INF};

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    generate_graph(&GenSpec::gnp(n, p, seed)).unwrap()
}

fn random_sources(n: usize, s: usize, seed: u64) -> Vec<Node> {
    sample_nodes(n, s, &mut SplitMix::new(seed)).unwrap()
}

fn assert_stretch(g: &Graph, h: &EdgeSet, pairs: &[(Node, Node)], slack: u32) {
    // Independent of verify_stretch: Floyd–Warshall over G and H.
    let full = EdgeSet::full(g);
    let dg = floyd_warshall(g, &full);
    let dh = floyd_warshall(g, h);
    for &(s, t) in pairs {
        if dg[s][t] != INF {
            assert!(dh[s][t] != INF && dh[s][t] <= dg[s][t] + slack, "pair ({s},{t}): {} vs {}", dh[s][t], dg[s][t]);
        }
    }
}

#[test]
fn bfs_row_matches_floyd_warshall_on_gnp_50() {
    let g = gnp(50, 0.2, 1);
    let fw = floyd_warshall(&g, &EdgeSet::full(&g));
    let row = bfs_distances(&g, &EdgeSet::full(&g), 0).unwrap();
    for (t, &d) in fw[0].iter().enumerate() {
        assert_eq!(row.get(t).unwrap_or(INF), d);
    }
    let multi = multi_source_bfs(&g, &EdgeSet::full(&g), &[3, 7]).unwrap();
    for (t, (&a, &b)) in fw[3].iter().zip(&fw[7]).enumerate() {
        assert_eq!(multi.get(t).unwrap_or(INF), a.min(b));
    }
}

#[test]
fn bfs_on_small_shapes() {
    let path = Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
    let row = bfs_distances(&path, &EdgeSet::full(&path), 0).unwrap();
    assert_eq!(row.as_slice(), &[Some(0), Some(1), Some(2), Some(3), Some(4)]);
    let mut cut = EdgeSet::full(&path);
    cut.remove_id(path.edge_id(2, 3).unwrap());
    assert_eq!(bfs_distances(&path, &cut, 0).unwrap().get(3), None);

    let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
    let row = multi_source_bfs(&star, &EdgeSet::full(&star), &[1, 2]).unwrap();
    assert_eq!((row.get(0), row.get(3)), (Some(1), Some(2)));
    assert!(multi_source_bfs(&star, &EdgeSet::full(&star), &[]).is_err());

    let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(shortest_path(&k4, &EdgeSet::full(&k4), 0, 3).unwrap().unwrap().len(), 1);
    assert_eq!(shortest_path(&k4, &EdgeSet::full(&k4), 2, 2).unwrap().unwrap().len(), 0);
}

#[test]
fn path_cost_counts_removed_edges() {
    let g = Graph::from_edges(11, (0..10).map(|i| (i, i + 1))).unwrap();
    let p = Path::new(&g, (0..11).collect()).unwrap();
    let mut have = EdgeSet::full(&g);
    for id in [1, 4, 5, 9] {
        have.remove_id(id);
    }
    assert_eq!(graph::path_cost(&g, &p, &have), 4);
}

#[test]
fn subsetwise_on_gnp_200() {
    let g = gnp(200, 0.05, 7);
    let s = random_sources(200, 12, 7);
    let (h, ledger) = build_subsetwise(&g, &SubsetwiseParams::new(s.clone())).unwrap();
    let pairs = within_set(&s);
    assert_eq!(pairs.len(), 66);
    assert_stretch(&g, &h.edges, &pairs, 2);
    assert!(audit_sizes(&ledger, &AuditParams::Subsetwise { sources: 12 }).unwrap().pass());
}

#[test]
fn subsetwise_on_gnp_100_verifies() {
    let g = gnp(100, 0.1, 2);
    let s = random_sources(100, 10, 2);
    let (h, _) = build_subsetwise(&g, &SubsetwiseParams::new(s.clone())).unwrap();
    assert!(verify_stretch(&g, &h.edges, &within_set(&s), StretchSpec::additive(2)).unwrap().pass);
}

#[test]
fn sourcewise_on_gnp_200() {
    let g = gnp(200, 0.05, 7);
    let s = random_sources(200, 5, 7);
    for beta in [None, Some(0.3)] {
        let mut params = SourcewiseParams::new(s.clone(), 2);
        params.beta = beta;
        let (h, ledger) = build_sourcewise(&g, &params).unwrap();
        let pairs = sources_to_all(&s, 200);
        assert_eq!(pairs.len(), 995);
        assert_stretch(&g, &h.edges, &pairs, 4);
        assert!(audit_sizes(&ledger, &AuditParams::Sourcewise { sources: 5, k: 2 }).unwrap().pass());
    }
}

#[test]
fn sourcewise_small_cases() {
    let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
    let (h, _) = build_sourcewise(&k5, &SourcewiseParams::new((0..5).collect(), 1)).unwrap();
    assert_stretch(&k5, &h.edges, &sources_to_all(&[0, 1, 2, 3, 4], 5), 2);

    let tree = generate_graph(&GenSpec { model: harness::generate::Model::Tree { n: 40 }, seed: 3 }).unwrap();
    let (h, _) = build_sourcewise(&tree, &SourcewiseParams::new(vec![0, 17], 2)).unwrap();
    assert_stretch(&tree, &h.edges, &sources_to_all(&[0, 17], 40), 0);
}

#[test]
fn pairwise_near_on_gnp_300() {
    let g = gnp(300, 0.03, 3);
    let pairs = generate_pairs(300, &PairSpec { mode: PairMode::RandomPairs, count: 40, seed: 3 }).unwrap();
    for beta in [None, Some(0.3)] {
        let mut params = NearAdditiveParams::new(pairs.clone(), 0.5);
        params.beta = beta;
        let (h, ledger) = build_pairwise_near(&g, &params).unwrap();
        let r = verify_stretch(&g, &h.edges, &pairs, StretchSpec::near_additive("0.5").unwrap()).unwrap();
        assert!(r.pass, "{:?}", r.failures().next());
        assert!(audit_sizes(&ledger, &AuditParams::PairwiseNear { pairs: 40, epsilon: 0.5 }).unwrap().pass());
    }
}

#[test]
fn pairwise_pure_on_gnp_300() {
    let g = gnp(300, 0.03, 3);
    let pairs = generate_pairs(300, &PairSpec { mode: PairMode::RandomPairs, count: 40, seed: 3 }).unwrap();
    for beta in [None, Some(0.3)] {
        let mut params = PureAdditiveParams::new(pairs.clone(), 1);
        params.beta = beta;
        let (h, ledger) = build_pairwise_pure(&g, &params).unwrap();
        assert_stretch(&g, &h.edges, &pairs, 4);
        assert!(audit_sizes(&ledger, &AuditParams::PairwisePure { pairs: 40, k: 1 }).unwrap().pass());
    }
}

#[test]
fn pure_log_preset_uses_ceil_log_k() {
    let params = PureAdditiveParams::with_log_k(vec![(0, 1)], 300);
    assert_eq!(params.k, 9);
}

#[test]
fn log_stretch_on_hypercube() {
    let g = Graph::from_edges(16, (0..16usize).flat_map(|u| (0..4).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v)).unwrap();
    let h = log_stretch_spanner(&g);
    let dg = floyd_warshall(&g, &EdgeSet::full(&g));
    let dh = floyd_warshall(&g, &h);
    for u in 0..16 {
        for v in 0..16 {
            assert!(dh[u][v] <= 7 * dg[u][v]);
        }
    }
}

#[test]
fn log_stretch_keeps_components_apart() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)]).unwrap();
    let h = log_stretch_spanner(&g);
    assert_eq!(bfs_distances(&g, &h, 0).unwrap().get(4), None);
}

#[test]
fn path_touching_audit_on_gnp_150() {
    let g = gnp(150, 0.08, 5);
    let (cl, cg) = build_clustering(&g, 0.5).unwrap();
    let r = audit_path_touching(&g, &cl, &cg, 500, 5).unwrap();
    assert!(r.pass());
    assert!(r.checked > 450);
}

#[test]
fn bench_subsetwise_row_passes() {
    let config = BenchConfig {
        graph: GenSpec::gnp(200, 0.05, 7),
        pairs: PairSpec { mode: PairMode::SubsetCross, count: 12, seed: 7 },
        instances: 1,
        constructions: vec![Construction::Subsetwise],
        build: BuildConfig { k: KChoice::Fixed(2), epsilon: "0.5".into(), beta: None },
    };
    let out = run_benchmark(&config, std::io::sink()).unwrap();
    assert_eq!(out.rows.len(), 1);
    assert!(out.rows[0].stretch_pass);
    assert_eq!(out.rows[0].n_or_s, 12);
}

#[test]
fn corrupted_ledger_is_flagged() {
    let g = gnp(120, 0.1, 9);
    let s = random_sources(120, 10, 9);
    let (_, mut ledger) = build_subsetwise(&g, &SubsetwiseParams::new(s).with_beta(0.3)).unwrap();
    let params = AuditParams::Subsetwise { sources: 10 };
    assert!(audit_sizes(&ledger, &params).unwrap().pass());
    let rec = ledger.records.iter_mut().find(|r| r.bought && r.cost > 0).unwrap();
    rec.cost += 1000;
    let report = audit_sizes(&ledger, &params).unwrap();
    let failing: Vec<_> = report.failures().map(|r| r.name).collect();
    assert!(failing.contains(&"buy_rule"), "{failing:?}");
    assert!(audit_sizes(&ledger, &AuditParams::PairwisePure { pairs: 1, k: 1 }).is_err());
}

#[test]
fn empty_ledger_passes_audit() {
    let g = Graph::from_edges(3, [(0, 1)]).unwrap();
    let (_, ledger) = build_subsetwise(&g, &SubsetwiseParams::new(vec![0])).unwrap();
    assert!(audit_sizes(&ledger, &AuditParams::Subsetwise { sources: 1 }).unwrap().pass());
}
