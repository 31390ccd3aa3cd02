//! `pairspan`: generate graphs and pair sets, build spanners, verify them,
//! and run CSV benchmarks.
//!
//! Exit status: 0 when everything built and verified, 2 on a verification
//! failure, 1 on usage or I/O errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pairspan::harness::bench::{run_benchmark, BenchConfig};
use pairspan::harness::construct::{build, check, stretch_spec, BuildConfig, Construction, KChoice};
use pairspan::harness::generate::{generate_graph, GenSpec, Model};
use pairspan::harness::io::{read_graph, read_pairs, read_spanner, write_graph, write_pairs, write_spanner};
use pairspan::harness::pairs::{generate_pairs, PairMode, PairSpec};
use pairspan::verify::verify_stretch;
use pairspan::Graph;

const WITNESS_LIMIT: usize = 20;

#[derive(Parser)]
#[command(name = "pairspan", version, about = "Pairwise graph spanners by path buying")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded graph.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a seeded pair set for a graph.
    Pairs {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        pairs: PairArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a spanner, write it, and verify it.
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        /// Pair file; may be omitted for mult.
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, value_parser = parse_construction)]
        construction: Construction,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a spanner file against a construction's stretch guarantee.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, value_parser = parse_construction)]
        construction: Construction,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Build, verify and audit over seeded instances; one CSV row per cell.
    Bench {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        pairs: PairArgs,
        #[arg(long, default_value_t = 1)]
        instances: usize,
        /// Comma-separated; defaults to the four path-buying constructions.
        #[arg(long, value_parser = parse_construction, value_delimiter = ',')]
        construction: Vec<Construction>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Gnp,
    Grid,
    Tree,
    Cycle,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    model: ModelName,
    /// Node count for gnp, tree and cycle.
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 10)]
    rows: usize,
    #[arg(long, default_value_t = 10)]
    cols: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphArgs {
    fn spec(&self) -> GenSpec {
        let n = self.n;
        let model = match self.model {
            ModelName::Gnp => Model::Gnp { n, p: self.p },
            ModelName::Grid => Model::Grid { rows: self.rows, cols: self.cols },
            ModelName::Tree => Model::Tree { n },
            ModelName::Cycle => Model::Cycle { n },
        };
        GenSpec { model, seed: self.seed }
    }
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, value_parser = PairMode::parse, default_value = "random-pairs")]
    mode: PairMode,
    /// Pair count, or |S| for the cross modes.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Overrides `--seed` for the pair draw.
    #[arg(long)]
    pair_seed: Option<u64>,
}

impl PairArgs {
    fn spec(&self, fallback_seed: u64) -> PairSpec {
        PairSpec { mode: self.mode, count: self.count, seed: self.pair_seed.unwrap_or(fallback_seed) }
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Positive integer or `log`.
    #[arg(long, value_parser = parse_k, default_value = "2")]
    k: KChoice,
    #[arg(long, default_value = "0.5")]
    eps: String,
    /// `auto` or a real in [0, 1].
    #[arg(long, value_parser = parse_beta, default_value = "auto")]
    beta: Beta,
}

impl ParamArgs {
    fn config(&self) -> BuildConfig {
        BuildConfig { k: self.k, epsilon: self.eps.clone(), beta: self.beta.0 }
    }
}

fn parse_construction(s: &str) -> Result<Construction, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Construction::ALL.iter().map(|c| c.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_k(s: &str) -> Result<KChoice, String> {
    s.parse().map_err(|e: pairspan::Error| e.to_string())
}

/// `None` is `auto`.
#[derive(Clone, Copy)]
struct Beta(Option<f64>);

fn parse_beta(s: &str) -> Result<Beta, String> {
    if s == "auto" {
        return Ok(Beta(None));
    }
    match s.parse::<f64>() {
        Ok(b) if (0.0..=1.0).contains(&b) => Ok(Beta(Some(b))),
        _ => Err(format!("expected `auto` or a real in [0, 1], got {s:?}")),
    }
}

/// Failure that maps to an exit status.
enum Failure {
    Usage(String),
    Verification(Vec<String>),
}

impl From<pairspan::Error> for Failure {
    fn from(e: pairspan::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    read_graph(open(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_pairs(path: Option<&Path>, construction: Construction) -> Result<Vec<(usize, usize)>, Failure> {
    match path {
        Some(p) => read_pairs(open(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None if construction == Construction::Mult => Ok(Vec::new()),
        None => Err(Failure::Usage(format!("{construction} needs --pairs"))),
    }
}

fn show(d: Option<u32>) -> String {
    d.map_or("unreachable".into(), |d| d.to_string())
}

fn flush(mut w: Box<dyn Write>) -> Result<(), Failure> {
    w.flush().map_err(|e| Failure::Usage(e.to_string()))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { graph, out } => {
            let g = generate_graph(&graph.spec())?;
            let mut w = sink(out.as_deref())?;
            write_graph(&mut w, &g)?;
            flush(w)
        }
        Command::Pairs { input, pairs, seed, out } => {
            let g = load_graph(&input)?;
            let list = generate_pairs(g.n(), &pairs.spec(seed))?;
            let mut w = sink(out.as_deref())?;
            write_pairs(&mut w, &list)?;
            flush(w)
        }
        Command::Build { input, pairs, construction, params, out } => {
            let g = load_graph(&input)?;
            let list = load_pairs(pairs.as_deref(), construction)?;
            let outcome = build(&g, &list, construction, &params.config())?;
            let mut w = sink(out.as_deref())?;
            write_spanner(&mut w, &g, &outcome.spanner.edges)?;
            flush(w)?;
            let s = &outcome.spanner;
            let verdict = check(&g, &outcome)?;
            eprintln!(
                "{construction}: n={} m={} edges_total={} (clustering {}, bought {}, phase3 {}), worst_excess={}",
                g.n(),
                g.m(),
                s.len(),
                s.edges_clustering,
                s.edges_bought,
                s.edges_phase3,
                verdict.stretch.worst_excess
            );
            if verdict.pass() {
                Ok(())
            } else {
                Err(Failure::Verification(verdict.witnesses(WITNESS_LIMIT)))
            }
        }
        Command::Verify { input, spanner, pairs, construction, params } => {
            let g = load_graph(&input)?;
            let h = read_spanner(open(&spanner)?, &g).map_err(|e| Failure::Usage(format!("{}: {e}", spanner.display())))?;
            let list = load_pairs(pairs.as_deref(), construction)?;
            let k = params.k.resolve(g.n());
            let spec = stretch_spec(construction, k, &params.eps)?;
            let targets = construction.targets(&g, &list);
            let report = verify_stretch(&g, &h, &targets, spec)?;
            println!(
                "{construction}: {} target pairs, {} spanner edges, worst_excess={}, {}",
                targets.len(),
                h.len(),
                report.worst_excess,
                if report.pass { "pass" } else { "FAIL" }
            );
            if report.pass {
                return Ok(());
            }
            let lines = report
                .failures()
                .take(WITNESS_LIMIT)
                .map(|c| format!("pair ({}, {}): d_G = {}, d_H = {}", c.pair.0, c.pair.1, show(c.d_g), show(c.d_h)))
                .collect();
            Err(Failure::Verification(lines))
        }
        Command::Bench { graph, pairs, instances, construction, params, csv } => {
            let constructions =
                if construction.is_empty() { Construction::PATH_BUYING.to_vec() } else { construction };
            let config = BenchConfig {
                pairs: pairs.spec(graph.seed),
                graph: graph.spec(),
                instances,
                constructions,
                build: params.config(),
            };
            let w = sink(csv.as_deref())?;
            let outcome = run_benchmark(&config, w)?;
            if outcome.pass() {
                Ok(())
            } else {
                Err(Failure::Verification(outcome.failures))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(lines)) => {
            eprintln!("verification failed");
            for line in lines {
                eprintln!("  {line}");
            }
            ExitCode::from(2)
        }
    }
}
