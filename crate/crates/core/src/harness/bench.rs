//! Benchmark driver: build, verify and audit every (instance, construction)
//! cell, one CSV row per cell.
//!
//! Cells run on a rayon pool capped by `PAIRSPAN_THREADS`; rows are written
//! in cell order, so output is identical run to run apart from timings.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::harness::baseline::preserver_baseline;
use crate::harness::construct::{build, check, BuildConfig, Construction};
use crate::harness::generate::{generate_graph, GenSpec};
use crate::harness::pairs::{generate_pairs, PairSpec};

pub const THREADS_ENV: &str = "PAIRSPAN_THREADS";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Instance `i` uses this model with seed `graph.seed + i`.
    pub graph: GenSpec,
    /// Instance `i` draws pairs with seed `pairs.seed + i`.
    pub pairs: PairSpec,
    pub instances: usize,
    pub constructions: Vec<Construction>,
    pub build: BuildConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub construction: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N_or_S")]
    pub n_or_s: usize,
    pub k_or_eps: String,
    pub beta: String,
    pub edges_clustering: usize,
    pub edges_bought: usize,
    pub edges_phase3: usize,
    pub edges_total: usize,
    pub baseline_edges: usize,
    pub stretch_pass: bool,
    pub worst_excess: String,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    /// One block of witness lines per failing cell.
    pub failures: Vec<String>,
}

impl BenchOutcome {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Worker count: `PAIRSPAN_THREADS` if set to a positive integer, else the
/// machine's parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |t| t.get()))
}

fn run_cell(
    instance: usize,
    g: &Graph,
    pairs: &[(usize, usize)],
    construction: Construction,
    config: &BuildConfig,
) -> Result<(BenchRow, Option<String>)> {
    let start = Instant::now();
    let outcome = build(g, pairs, construction, config)?;
    let wall_time_ms = start.elapsed().as_millis();
    let verdict = check(g, &outcome)?;
    let baseline = preserver_baseline(g, &outcome.targets)?;
    let s = &outcome.spanner;
    let row = BenchRow {
        construction: construction.name().to_string(),
        n: g.n(),
        m: g.m(),
        n_or_s: outcome.n_or_s,
        k_or_eps: outcome.k_or_eps.clone(),
        beta: outcome.beta().map_or(String::new(), |b| format!("{b:.6}")),
        edges_clustering: s.edges_clustering,
        edges_bought: s.edges_bought,
        edges_phase3: s.edges_phase3,
        edges_total: s.len(),
        baseline_edges: baseline.len(),
        stretch_pass: verdict.stretch.pass,
        worst_excess: verdict.stretch.worst_excess.to_string(),
        wall_time_ms,
    };
    let failure = (!verdict.pass()).then(|| {
        let mut lines = vec![format!("instance {instance}, {construction}: verification failed")];
        lines.extend(verdict.witnesses(10).into_iter().map(|w| format!("  {w}")));
        lines.join("\n")
    });
    Ok((row, failure))
}

/// Runs every cell and writes the CSV (header included) to `sink`.
pub fn run_benchmark(config: &BenchConfig, sink: impl Write) -> Result<BenchOutcome> {
    let instances: Vec<(Graph, Vec<(usize, usize)>)> = (0..config.instances)
        .map(|i| {
            let g = generate_graph(&config.graph.reseeded(config.graph.seed.wrapping_add(i as u64)))?;
            let spec = PairSpec { seed: config.pairs.seed.wrapping_add(i as u64), ..config.pairs.clone() };
            let pairs = generate_pairs(g.n(), &spec)?;
            Ok((g, pairs))
        })
        .collect::<Result<_>>()?;
    let cells: Vec<(usize, Construction)> = (0..instances.len())
        .flat_map(|i| config.constructions.iter().map(move |&c| (i, c)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<(BenchRow, Option<String>)>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(i, c)| run_cell(i, &instances[i].0, &instances[i].1, c, &config.build))
            .collect()
    });

    let mut writer = csv::Writer::from_writer(sink);
    let mut outcome = BenchOutcome { rows: Vec::new(), failures: Vec::new() };
    for r in results {
        let (row, failure) = r?;
        writer.serialize(&row)?;
        outcome.rows.push(row);
        outcome.failures.extend(failure);
    }
    if config.instances == 0 || config.constructions.is_empty() {
        writer.write_record(HEADER)?;
    }
    writer.flush()?;
    Ok(outcome)
}

/// Column order of the CSV.
pub const HEADER: [&str; 14] = [
    "construction",
    "n",
    "m",
    "N_or_S",
    "k_or_eps",
    "beta",
    "edges_clustering",
    "edges_bought",
    "edges_phase3",
    "edges_total",
    "baseline_edges",
    "stretch_pass",
    "worst_excess",
    "wall_time_ms",
];
