//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every entry point regenerates its graph from the same seeded parameters,
//! so the page keeps no Rust-side state. Results cross the boundary as JSON.
//! The `*_json` functions are the native core and are what the tests call;
//! the wasm wrappers take 32-bit seeds so JavaScript can pass plain numbers.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use pairspan::clustering::build_clustering;
use pairspan::harness::construct::{build, check, BuildConfig, Construction, KChoice};
use pairspan::harness::generate::{generate_graph, GenSpec, Model};
use pairspan::harness::pairs::{endpoints, first_endpoints, generate_pairs, PairMode, PairSpec};
use pairspan::{Graph, Node};

/// Above this many pairs only the terminals are sent to the page.
const MAX_DRAWN_PAIRS: usize = 400;

#[derive(Serialize)]
struct GraphView {
    n: usize,
    edges: Vec<(Node, Node)>,
    /// Column count when the graph is a grid, for a lattice layout.
    grid_cols: Option<usize>,
}

#[derive(Serialize)]
struct ClusterView {
    center: Node,
    members: Vec<Node>,
}

#[derive(Serialize)]
struct ClusteringView {
    beta: f64,
    threshold: usize,
    clusters: Vec<ClusterView>,
    /// Edge ids kept by the clustering subgraph.
    kept: Vec<usize>,
}

#[derive(Serialize)]
struct SpannerView {
    construction: String,
    terminals: Vec<Node>,
    pairs: Vec<(Node, Node)>,
    /// Edge ids of the spanner.
    kept: Vec<usize>,
    edges_clustering: usize,
    edges_bought: usize,
    edges_phase3: usize,
    beta: Option<f64>,
    target_pairs: usize,
    stretch_pass: bool,
    audit_pass: bool,
    /// `null` when some pair lost connectivity.
    worst_excess: Option<f64>,
}

fn graph_spec(model: &str, size: usize, p: f64, seed: u64) -> Result<GenSpec, String> {
    let model = match model {
        "gnp" => Model::Gnp { n: size, p },
        "grid" => {
            let side = (size as f64).sqrt().round().max(1.0) as usize;
            Model::Grid { rows: side, cols: side }
        }
        "tree" => Model::Tree { n: size },
        "cycle" => Model::Cycle { n: size },
        other => return Err(format!("unknown model {other:?}")),
    };
    Ok(GenSpec { model, seed })
}

fn make_graph(model: &str, size: usize, p: f64, seed: u64) -> Result<(Graph, Option<usize>), String> {
    let spec = graph_spec(model, size, p, seed)?;
    let cols = match spec.model {
        Model::Grid { cols, .. } => Some(cols),
        _ => None,
    };
    Ok((generate_graph(&spec).map_err(|e| e.to_string())?, cols))
}

/// Negative `beta` means the construction's default.
fn beta_option(beta: f64) -> Option<f64> {
    (beta >= 0.0).then_some(beta)
}

fn to_json(value: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn generate_json(model: &str, size: usize, p: f64, seed: u64) -> Result<String, String> {
    let (g, grid_cols) = make_graph(model, size, p, seed)?;
    to_json(&GraphView { n: g.n(), edges: g.edges().to_vec(), grid_cols })
}

pub fn clustering_json(model: &str, size: usize, p: f64, seed: u64, beta: f64) -> Result<String, String> {
    let (g, _) = make_graph(model, size, p, seed)?;
    let (cl, cg) = build_clustering(&g, beta).map_err(|e| e.to_string())?;
    let clusters = cl.clusters().iter().map(|c| ClusterView { center: c.center, members: c.members.clone() }).collect();
    to_json(&ClusteringView { beta, threshold: cl.size_threshold(), clusters, kept: cg.edges.ids().collect() })
}

/// Builds and verifies one construction. `count` is the pair count for the
/// pairwise constructions and |S| for subsetwise and sourcewise.
#[allow(clippy::too_many_arguments)]
pub fn build_json(
    model: &str,
    size: usize,
    p: f64,
    seed: u64,
    construction: &str,
    count: usize,
    k: usize,
    eps: &str,
    beta: f64,
) -> Result<String, String> {
    let (g, _) = make_graph(model, size, p, seed)?;
    let construction: Construction = construction.parse().map_err(|e: pairspan::Error| e.to_string())?;
    let mode = match construction {
        Construction::Subsetwise => PairMode::SubsetCross,
        Construction::Sourcewise => PairMode::SourcewiseCross,
        _ => PairMode::RandomPairs,
    };
    let count = count.min(g.n());
    let pairs = generate_pairs(g.n(), &PairSpec { mode, count, seed }).map_err(|e| e.to_string())?;
    let config = BuildConfig { k: KChoice::Fixed(k.max(1)), epsilon: eps.to_string(), beta: beta_option(beta) };
    let outcome = build(&g, &pairs, construction, &config).map_err(|e| e.to_string())?;
    let verdict = check(&g, &outcome).map_err(|e| e.to_string())?;
    let s = &outcome.spanner;
    let excess = verdict.stretch.worst_excess;
    let terminals = if mode == PairMode::SourcewiseCross { first_endpoints(&pairs) } else { endpoints(&pairs) };
    to_json(&SpannerView {
        construction: construction.name().to_string(),
        terminals,
        pairs: if pairs.len() <= MAX_DRAWN_PAIRS { pairs.clone() } else { Vec::new() },
        kept: s.edges.ids().collect(),
        edges_clustering: s.edges_clustering,
        edges_bought: s.edges_bought,
        edges_phase3: s.edges_phase3,
        beta: outcome.beta(),
        target_pairs: outcome.targets.len(),
        stretch_pass: verdict.stretch.pass,
        audit_pass: verdict.sizes.as_ref().is_none_or(|r| r.pass()),
        worst_excess: excess.is_finite().then_some(excess),
    })
}

/// Graph as `{n, edges, grid_cols}`.
#[wasm_bindgen]
pub fn generate(model: &str, size: usize, p: f64, seed: u32) -> Result<String, JsError> {
    generate_json(model, size, p, seed.into()).map_err(|e| JsError::new(&e))
}

/// Clusters and the edge ids the clustering subgraph keeps.
#[wasm_bindgen]
pub fn clustering(model: &str, size: usize, p: f64, seed: u32, beta: f64) -> Result<String, JsError> {
    clustering_json(model, size, p, seed.into(), beta).map_err(|e| JsError::new(&e))
}

/// Spanner edge ids, phase counts and the verification verdict.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn build_spanner(
    model: &str,
    size: usize,
    p: f64,
    seed: u32,
    construction: &str,
    count: usize,
    k: usize,
    eps: &str,
    beta: f64,
) -> Result<String, JsError> {
    build_json(model, size, p, seed.into(), construction, count, k, eps, beta).map_err(|e| JsError::new(&e))
}
