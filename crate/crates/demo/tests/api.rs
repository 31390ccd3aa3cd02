use serde_json::Value;

use pairspan_demo::{build_json, clustering_json, generate_json};

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("call succeeds")).expect("valid JSON")
}

#[test]
fn grid_graph_has_lattice_hint() {
    let v = parse(generate_json("grid", 16, 0.0, 1));
    assert_eq!(v["n"], 16);
    assert_eq!(v["edges"].as_array().unwrap().len(), 24);
    assert_eq!(v["grid_cols"], 4);
    let v = parse(generate_json("gnp", 30, 0.2, 1));
    assert!(v["grid_cols"].is_null());
}

#[test]
fn clustering_covers_members_once() {
    let v = parse(clustering_json("gnp", 80, 0.1, 3, 0.5));
    assert_eq!(v["threshold"], 9);
    let mut seen = std::collections::HashSet::new();
    for c in v["clusters"].as_array().unwrap() {
        let members = c["members"].as_array().unwrap();
        assert_eq!(members.len(), 9);
        for m in members {
            assert!(seen.insert(m.as_u64().unwrap()));
        }
    }
    assert!(!v["kept"].as_array().unwrap().is_empty());
}

#[test]
fn every_construction_reports_a_passing_spanner() {
    for c in ["subsetwise", "sourcewise", "pairwise-near", "pairwise-pure", "mult", "preserver"] {
        for beta in [-1.0, 0.3] {
            let v = parse(build_json("gnp", 90, 0.08, 4, c, 6, 2, "0.5", beta));
            assert_eq!(v["stretch_pass"], true, "{c}");
            assert_eq!(v["audit_pass"], true, "{c}");
            let kept = v["kept"].as_array().unwrap().len() as u64;
            let parts = ["edges_clustering", "edges_bought", "edges_phase3"].map(|k| v[k].as_u64().unwrap());
            assert!(kept <= parts.iter().sum::<u64>(), "{c}");
        }
    }
}

#[test]
fn large_pair_sets_send_terminals_only() {
    let v = parse(build_json("gnp", 200, 0.05, 2, "sourcewise", 5, 2, "0.5", -1.0));
    assert_eq!(v["terminals"].as_array().unwrap().len(), 5);
    assert!(v["pairs"].as_array().unwrap().is_empty());
    assert_eq!(v["target_pairs"], 5 * 199);
}

#[test]
fn bad_input_is_an_error_not_a_panic() {
    assert!(generate_json("torus", 10, 0.1, 1).is_err());
    assert!(generate_json("gnp", 10, 1.5, 1).is_err());
    assert!(build_json("gnp", 10, 0.3, 1, "greedy", 3, 2, "0.5", -1.0).is_err());
    assert!(build_json("gnp", 10, 0.3, 1, "pairwise-near", 3, 2, "abc", -1.0).is_err());
}
