//! One entry point over every construction, plus the stretch guarantee and
//! size audit that go with each.

use std::fmt;
use std::str::FromStr;

use crate::buying::{BuyLedger, Spanner};
use crate::clustering::build_clustering;
use crate::error::{parameter, Error, Result};
use crate::graph::{EdgeSet, Graph, Node};
use crate::harness::baseline::preserver_baseline;
use crate::harness::pairs::{endpoints, first_endpoints, sources_to_all, within_set};
use crate::mult_spanner::{greedy_mult_spanner, log_stretch_k};
use crate::pairwise_near::{build_pairwise_near, NearAdditiveParams};
use crate::pairwise_pure::{build_pairwise_pure, PureAdditiveParams};
use crate::sourcewise::{build_sourcewise, SourcewiseParams};
use crate::subsetwise::{build_subsetwise, SubsetwiseParams};
use crate::verify::{audit_sizes, parse_decimal, verify_stretch, AuditParams, SizeReport, StretchReport, StretchSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Subsetwise,
    Sourcewise,
    PairwiseNear,
    PairwisePure,
    Mult,
    Preserver,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::Subsetwise,
        Construction::Sourcewise,
        Construction::PairwiseNear,
        Construction::PairwisePure,
        Construction::Mult,
        Construction::Preserver,
    ];

    /// The four path-buying constructions.
    pub const PATH_BUYING: [Construction; 4] = [
        Construction::Subsetwise,
        Construction::Sourcewise,
        Construction::PairwiseNear,
        Construction::PairwisePure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Subsetwise => "subsetwise",
            Construction::Sourcewise => "sourcewise",
            Construction::PairwiseNear => "pairwise-near",
            Construction::PairwisePure => "pairwise-pure",
            Construction::Mult => "mult",
            Construction::Preserver => "preserver",
        }
    }

    /// The pairs whose stretch the construction guarantees, derived from a
    /// pair list: S×S over all endpoints for subsetwise, S×V over first
    /// endpoints for sourcewise, every edge for mult, the list itself otherwise.
    pub fn targets(self, g: &Graph, pairs: &[(Node, Node)]) -> Vec<(Node, Node)> {
        match self {
            Construction::Subsetwise => within_set(&endpoints(pairs)),
            Construction::Sourcewise => sources_to_all(&first_endpoints(pairs), g.n()),
            Construction::Mult => g.edges().to_vec(),
            _ => pairs.to_vec(),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown construction {s:?}")))
    }
}

/// `k` as a number or as `⌈log₂ n⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KChoice {
    Fixed(usize),
    Log,
}

impl KChoice {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            KChoice::Fixed(k) => k,
            KChoice::Log => log_stretch_k(n),
        }
    }
}

impl FromStr for KChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "log" {
            return Ok(KChoice::Log);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(KChoice::Fixed(k)),
            _ => parameter(format!("k must be a positive integer or \"log\", got {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuildConfig {
    pub k: KChoice,
    /// Decimal text, so the stretch check can use the exact value.
    pub epsilon: String,
    /// `None` picks each construction's default.
    pub beta: Option<f64>,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { k: KChoice::Fixed(2), epsilon: "0.5".into(), beta: None }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub construction: Construction,
    pub spanner: Spanner,
    pub ledger: Option<BuyLedger>,
    pub audit: Option<AuditParams>,
    pub targets: Vec<(Node, Node)>,
    pub spec: StretchSpec,
    /// |S| or N; 0 for mult.
    pub n_or_s: usize,
    /// `k`, `ε`, or empty.
    pub k_or_eps: String,
}

impl Outcome {
    pub fn beta(&self) -> Option<f64> {
        self.ledger.as_ref().map(|l| l.beta)
    }
}

fn plain(edges: EdgeSet) -> Spanner {
    Spanner { edges_clustering: 0, edges_bought: 0, edges_phase3: edges.len(), edges }
}

/// The stretch function each construction promises for given `k` and `ε`.
pub fn stretch_spec(construction: Construction, k: usize, epsilon: &str) -> Result<StretchSpec> {
    Ok(match construction {
        Construction::Subsetwise => StretchSpec::additive(2),
        Construction::Sourcewise => StretchSpec::additive(2 * k as i64),
        Construction::PairwiseNear => StretchSpec::near_additive(epsilon)?,
        Construction::PairwisePure => StretchSpec::additive(4 * k as i64),
        Construction::Mult => StretchSpec::multiplicative(2 * k as i64 - 1),
        Construction::Preserver => StretchSpec::additive(0),
    })
}

pub fn build(
    g: &Graph,
    pairs: &[(Node, Node)],
    construction: Construction,
    config: &BuildConfig,
) -> Result<Outcome> {
    let n = g.n();
    let k = config.k.resolve(n);
    let targets = construction.targets(g, pairs);
    let spec = stretch_spec(construction, k, &config.epsilon)?;
    let (spanner, ledger, audit, n_or_s, k_or_eps) = match construction {
        Construction::Subsetwise => {
            let sources = endpoints(pairs);
            let mut params = SubsetwiseParams::new(sources.clone());
            params.beta = config.beta;
            let (h, l) = build_subsetwise(g, &params)?;
            let audit = AuditParams::Subsetwise { sources: sources.len() };
            (h, Some(l), Some(audit), sources.len(), String::new())
        }
        Construction::Sourcewise => {
            let sources = first_endpoints(pairs);
            if sources.is_empty() {
                let (_, cg) = build_clustering(g, config.beta.unwrap_or(1.0))?;
                let h = Spanner { edges_clustering: cg.edges.len(), edges_bought: 0, edges_phase3: 0, edges: cg.edges };
                (h, None, None, 0, k.to_string())
            } else {
                let mut params = SourcewiseParams::new(sources.clone(), k);
                params.beta = config.beta;
                let (h, l) = build_sourcewise(g, &params)?;
                let audit = AuditParams::Sourcewise { sources: sources.len(), k };
                (h, Some(l), Some(audit), sources.len(), k.to_string())
            }
        }
        Construction::PairwiseNear => {
            let eps = parse_decimal(&config.epsilon)?;
            let epsilon = *eps.numer() as f64 / *eps.denom() as f64;
            let mut params = NearAdditiveParams::new(pairs.to_vec(), epsilon);
            params.beta = config.beta;
            let (h, l) = build_pairwise_near(g, &params)?;
            let audit = AuditParams::PairwiseNear { pairs: pairs.len(), epsilon };
            (h, Some(l), Some(audit), pairs.len(), config.epsilon.clone())
        }
        Construction::PairwisePure => {
            let mut params = PureAdditiveParams::new(pairs.to_vec(), k);
            params.beta = config.beta;
            let (h, l) = build_pairwise_pure(g, &params)?;
            let audit = AuditParams::PairwisePure { pairs: pairs.len(), k };
            (h, Some(l), Some(audit), pairs.len(), k.to_string())
        }
        Construction::Mult => {
            let h = plain(greedy_mult_spanner(g, k)?);
            (h, None, None, 0, k.to_string())
        }
        Construction::Preserver => {
            let h = plain(preserver_baseline(g, pairs)?);
            (h, None, None, pairs.len(), String::new())
        }
    };
    Ok(Outcome { construction, spanner, ledger, audit, targets, spec, n_or_s, k_or_eps })
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub stretch: StretchReport,
    pub sizes: Option<SizeReport>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.stretch.pass && self.sizes.as_ref().is_none_or(|s| s.pass())
    }

    /// Human-readable lines for up to `limit` failing pairs and every failing bound.
    pub fn witnesses(&self, limit: usize) -> Vec<String> {
        let mut out: Vec<String> = self
            .stretch
            .failures()
            .take(limit)
            .map(|c| {
                let show = |d: Option<u32>| d.map_or("unreachable".to_string(), |d| d.to_string());
                format!(
                    "pair ({}, {}): d_G = {}, d_H = {}, bound = {}",
                    c.pair.0,
                    c.pair.1,
                    show(c.d_g),
                    show(c.d_h),
                    c.bound.map_or("-".to_string(), |b| b.to_string())
                )
            })
            .collect();
        if let Some(sizes) = &self.sizes {
            out.extend(
                sizes
                    .failures()
                    .map(|r| format!("bound {}: observed {} > allowed {:.6}", r.name, r.observed, r.allowed)),
            );
        }
        out
    }
}

/// Stretch over the construction's target pairs and, for path-buying
/// constructions, the size audit of its ledger.
pub fn check(g: &Graph, outcome: &Outcome) -> Result<Verdict> {
    check_edges(g, outcome, &outcome.spanner.edges)
}

/// As [`check`], but for an externally supplied edge set.
pub fn check_edges(g: &Graph, outcome: &Outcome, h: &EdgeSet) -> Result<Verdict> {
    let stretch = verify_stretch(g, h, &outcome.targets, outcome.spec)?;
    let sizes = match (&outcome.ledger, &outcome.audit) {
        (Some(l), Some(a)) => Some(audit_sizes(l, a)?),
        _ => None,
    };
    Ok(Verdict { stretch, sizes })
}
